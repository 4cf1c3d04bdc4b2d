// Explores the closed-world state graph of a program and emits a schedule
// file (prefix, `repeat`, cycle) that drives it into a configuration cycle
// in which every runnable thread still gets scheduled — a fair divergence
// witness. Exits nonzero when the program has no such cycle.

#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "lang/parse.hpp"
#include "sim/trace.hpp"

using namespace fc;

namespace {

struct Graph {
  std::vector<Config> node;
  std::map<std::string, int> id;
  std::vector<std::vector<std::pair<std::string, int>>> edges;  // label text, dst
};

int intern(Graph& g, const Config& c, std::deque<int>& work) {
  std::string key = config_str(c);
  auto [it, fresh] = g.id.emplace(key, static_cast<int>(g.node.size()));
  if (fresh) {
    g.node.push_back(c);
    g.edges.emplace_back();
    work.push_back(it->second);
  }
  return it->second;
}

Graph explore(const CmdP& prog, size_t cap) {
  Graph g;
  StepOptions opt;  // closed world, lowest-address allocation
  FunCtxt phi;
  std::deque<int> work;
  intern(g, init_config(prog), work);
  while (!work.empty()) {
    int u = work.front();
    work.pop_front();
    if (g.node.size() > cap) {
      std::cerr << "state graph larger than " << cap << " nodes\n";
      exit(2);
    }
    Config c = g.node[u];
    if (c.fault || ps_is_done(c.state)) continue;
    for (const auto& t : candidate_locs(c.state)) {
      auto succs = loc_succs(c.store, c.heap, c.state, phi, t, opt);
      if (succs.empty()) continue;
      if (succs.size() != 1) {
        std::cerr << "nondeterministic step at " << (t.empty() ? "." : t) << "\n";
        exit(2);
      }
      int v = intern(g, succs.front(), work);
      g.edges[u].push_back({t.empty() ? "." : t, v});
    }
  }
  return g;
}

struct Path {
  std::vector<std::string> labels;
  bool found = false;
};

// Shortest label path from `from` to `to`.
Path shortest(const Graph& g, int from, int to) {
  std::vector<int> prev(g.node.size(), -1);
  std::vector<std::string> via(g.node.size());
  std::deque<int> q{from};
  std::vector<char> seen(g.node.size(), 0);
  seen[from] = 1;
  if (from == to) return {{}, true};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (const auto& [l, v] : g.edges[u]) {
      if (seen[v]) continue;
      seen[v] = 1;
      prev[v] = u;
      via[v] = l;
      if (v == to) {
        std::vector<std::string> out;
        for (int w = to; w != from; w = prev[w]) out.push_back(via[w]);
        std::reverse(out.begin(), out.end());
        return {out, true};
      }
      q.push_back(v);
    }
  }
  return {};
}

// Shortest cycle through `c` whose labels include both an L-side and an
// R-side step (so neither branch starves inside the loop).
Path fair_cycle(const Graph& g, int c) {
  const int n = static_cast<int>(g.node.size());
  auto idx = [&](int node, int mask) { return node * 4 + mask; };
  std::vector<int> prev(static_cast<size_t>(n) * 4, -2);  // -2 unseen, -1 root
  std::vector<std::string> via(static_cast<size_t>(n) * 4);
  std::deque<int> q{idx(c, 0)};
  prev[idx(c, 0)] = -1;
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    int u = cur / 4, m = cur % 4;
    for (const auto& [l, v] : g.edges[u]) {
      int m2 = m | (l[0] == 'L' ? 1 : l[0] == 'R' ? 2 : 0);
      int nxt = idx(v, m2);
      if (prev[nxt] != -2) continue;
      prev[nxt] = cur;
      via[nxt] = l;
      if (v == c && m2 == 3) {
        std::vector<std::string> out;
        for (int w = nxt; prev[w] != -1; w = prev[w]) out.push_back(via[w]);
        std::reverse(out.begin(), out.end());
        return {out, true};
      }
      q.push_back(nxt);
    }
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: find_lasso <program.tdl> <out.sched>\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  std::stringstream buf;
  buf << in.rdbuf();
  CmdP prog;
  try {
    prog = parse_program(buf.str());
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  Graph g = explore(prog, 200000);
  std::cerr << "state graph: " << g.node.size() << " configurations\n";

  int best = -1;
  Path best_pre, best_cyc;
  for (int c = 0; c < static_cast<int>(g.node.size()); ++c) {
    Path cyc = fair_cycle(g, c);
    if (!cyc.found) continue;
    Path pre = shortest(g, 0, c);
    if (!pre.found) continue;
    int total = static_cast<int>(pre.labels.size() + cyc.labels.size());
    if (best < 0 || total < best) {
      best = total;
      best_pre = pre;
      best_cyc = cyc;
    }
  }
  if (best < 0) {
    std::cerr << "no fair cycle reachable: every fair schedule makes progress\n";
    return 1;
  }

  std::ostringstream sched;
  sched << "// fair divergence witness: " << best_pre.labels.size()
        << "-step prefix, " << best_cyc.labels.size() << "-step cycle\n";
  for (const auto& l : best_pre.labels) sched << l << "\n";
  sched << "repeat\n";
  for (const auto& l : best_cyc.labels) sched << l << "\n";
  std::ofstream out(argv[2]);
  out << sched.str();
  out.close();

  // replay through the scripted scheduler as a sanity check
  auto script = parse_sched(sched.str());
  auto sim = make_scripted(script);
  RunOpts opts;
  opts.fuel = 100000;
  RunResult r = run_trace(prog, *sim, opts);
  std::cerr << "replay: " << outcome_str(r.outcome) << " at step " << r.steps
            << " cycle length " << r.lasso_len << " starved "
            << r.starved.size() << "\n";
  return r.outcome == RunResult::Outcome::Lasso && r.starved.empty() ? 0 : 1;
}
