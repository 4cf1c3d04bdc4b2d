#include "sim/trace.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "support/lex.hpp"

namespace fc {

std::vector<EnvEdit> parse_env_script(std::string_view text) {
  std::vector<EnvEdit> out;
  Lexer lx(text);
  while (!lx.at_end()) {
    EnvEdit e;
    if (lx.accept("del")) {
      e.del = true;
      e.addr = lx.expect_int();
    } else {
      lx.expect("[");
      e.addr = lx.expect_int();
      lx.expect("]");
      lx.expect("=");
      if (lx.accept("true")) e.v = Val::boolean(true);
      else if (lx.accept("false")) e.v = Val::boolean(false);
      else e.v = Val::integer(lx.expect_int());
    }
    lx.accept(";");
    out.push_back(e);
  }
  return out;
}

const char* outcome_str(RunResult::Outcome o) {
  switch (o) {
    case RunResult::Outcome::Terminated: return "terminated";
    case RunResult::Outcome::Fault: return "fault";
    case RunResult::Outcome::Lasso: return "lasso";
    case RunResult::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {
void join(std::string& out, const std::string& piece) {
  if (!out.empty()) out += ", ";
  out += piece;
}
}  // namespace

std::string store_diff(const Store& before, const Store& after) {
  std::string out;
  for (const auto& [x, v] : after) {
    auto old = before.get(x);
    if (!old) join(out, "+" + x + ":" + v.str());
    else if (*old != v) join(out, x + ":" + old->str() + "->" + v.str());
  }
  return out.empty() ? "-" : out;
}

std::string heap_diff(const Heap& before, const Heap& after) {
  std::string out;
  for (const auto& [a, v] : after) {
    auto old = before.get(a);
    if (!old) join(out, "+[" + std::to_string(a) + "]:" + v.str());
    else if (*old != v)
      join(out, "[" + std::to_string(a) + "]:" + old->str() + "->" + v.str());
  }
  for (const auto& [a, v] : before)
    if (!after.has(a)) join(out, "-[" + std::to_string(a) + "]");
  return out.empty() ? "-" : out;
}

RunResult run_trace(const CmdP& prog, Scheduler& sched, const RunOpts& opts) {
  RunResult res;
  Config c = init_config(prog);
  FunCtxt phi;
  size_t env_pos = 0;

  // per-step history for lasso analysis
  std::unordered_map<std::string, size_t> seen;
  std::vector<std::vector<std::string>> alive_at;
  std::vector<std::string> label_at;

  auto record = [&](size_t k, const Label& l, const Config& before, const Config& after) {
    if (!opts.collect_trace) return;
    std::string line = std::to_string(k) + ": " + label_str(l);
    if (after.fault) line += " | fault";
    else
      line += " | " + store_diff(before.store, after.store) + " | " +
              heap_diff(before.heap, after.heap);
    res.trace.push_back(line);
  };

  for (size_t k = 0; k < opts.fuel; ++k) {
    if (c.fault) {
      res.outcome = RunResult::Outcome::Fault;
      res.steps = k;
      res.final_config = c;
      return res;
    }
    if (ps_is_done(c.state)) {
      res.outcome = RunResult::Outcome::Terminated;
      res.steps = k;
      res.final_config = c;
      return res;
    }

    // which locations can actually step
    std::vector<std::string> runnable;
    std::unordered_map<std::string, Config> first_succ;
    bool atomic_overrun = false;
    for (const auto& t : candidate_locs(c.state)) {
      try {
        auto succs = loc_succs(c.store, c.heap, c.state, phi, t, opts.step);
        if (!succs.empty()) {
          runnable.push_back(t);
          first_succ.emplace(t, std::move(succs.front()));
        }
      } catch (const FuelExhausted&) {
        atomic_overrun = true;
      }
    }
    if (atomic_overrun && runnable.empty()) {
      res.outcome = RunResult::Outcome::Inconclusive;
      res.reason = "atomic-fuel";
      res.steps = k;
      res.final_config = c;
      return res;
    }
    if (runnable.empty() && !opts.env.open) {
      res.outcome = RunResult::Outcome::Inconclusive;
      res.reason = "stuck";
      res.steps = k;
      res.final_config = c;
      return res;
    }

    if (sched.deterministic()) {
      std::string key = config_str(c) + "\x1f" + sched.state_key() + "\x1f" +
                        std::to_string(env_pos);
      auto [it, fresh] = seen.emplace(key, k);
      if (!fresh) {
        res.outcome = RunResult::Outcome::Lasso;
        res.steps = k;
        res.lasso_start = it->second;
        res.lasso_len = k - it->second;
        res.final_config = c;
        // a thread runnable at every step of the cycle but never picked
        // starves; with none, the divergence is fair
        std::set<std::string> always(alive_at[it->second].begin(),
                                     alive_at[it->second].end());
        std::set<std::string> picked;
        for (size_t i = it->second; i < k; ++i) {
          std::set<std::string> cur(alive_at[i].begin(), alive_at[i].end());
          std::set<std::string> keep;
          std::set_intersection(always.begin(), always.end(), cur.begin(),
                                cur.end(), std::inserter(keep, keep.begin()));
          always = std::move(keep);
          picked.insert(label_at[i]);
        }
        for (const auto& t : always)
          if (!picked.count(t)) res.starved.push_back(t);
        return res;
      }
    }
    {
      std::vector<std::string> norm;
      for (const auto& t : runnable) norm.push_back(t.empty() ? "." : t);
      alive_at.push_back(std::move(norm));
    }

    Label l = sched.pick(runnable, opts.env.open);
    label_at.push_back(label_str(l));
    Config before = c;
    if (l.env) {
      if (env_pos < opts.env.script.size()) {
        const EnvEdit& e = opts.env.script[env_pos++];
        if (e.del) c.heap.erase(e.addr);
        else c.heap.set(e.addr, e.v);
      }
      // exhausted script: the environment stutters
    } else {
      c = first_succ.at(l.path);
    }
    record(k, l, before, c);
  }

  res.outcome = RunResult::Outcome::Inconclusive;
  res.reason = "fuel";
  res.steps = opts.fuel;
  res.final_config = c;
  return res;
}

}  // namespace fc
