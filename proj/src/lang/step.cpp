#include "lang/step.hpp"

#include <deque>
#include <set>

namespace fc {

std::string label_str(const Label& l) {
  if (l.env) return "env";
  return l.path.empty() ? "." : l.path;
}

std::optional<Label> label_parse(std::string_view s) {
  if (s == "env") return Label{true, ""};
  if (s == ".") return Label{false, ""};
  for (char c : s)
    if (c != 'L' && c != 'R') return std::nullopt;
  if (s.empty()) return std::nullopt;
  return Label{false, std::string(s)};
}

bool config_eq(const Config& a, const Config& b) {
  if (a.fault != b.fault) return false;
  if (a.fault) return true;
  return a.store == b.store && a.heap == b.heap && ps_eq(a.state, b.state);
}

std::string config_str(const Config& c) {
  if (c.fault) return "fault";
  return store_str(c.store) + " | " + heap_str(c.heap) + " | " + ps_str(c.state);
}

namespace {

Config fault_config() { return Config{true, {}, {}, nullptr}; }

void push(std::vector<Config>& out, Store s, Heap h, PStateP p) {
  out.push_back(Config{false, std::move(s), std::move(h), std::move(p)});
}

std::optional<int64_t> eval_addr(const ExpP& e, const Store& s) {
  auto v = eval_exp(e, s);
  if (!v || !v->is_int()) return std::nullopt;
  return v->n;
}

bool window_free(const Heap& h, int64_t r, int64_t n) {
  for (int64_t i = 0; i < n; ++i)
    if (h.has(r + i)) return false;
  return true;
}

// Enumerate the placements and fresh-cell contents an allocation may produce.
void alloc_succs(const Store& s, const Heap& h, const Cmd& c,
                 const StepOptions& opt, std::vector<Config>& out) {
  auto n = eval_exp(c.e1, s);
  if (!n || !n->is_int()) {
    out.push_back(fault_config());
    return;
  }
  int64_t len = n->n;
  if (len <= 0) return;  // no transition rule applies: allocation of a
                         // non-positive extent is stuck, not a fault
  if (opt.alloc_mode == StepOptions::AllocMode::Lowest) {
    int64_t r = opt.addr_lo;
    while (!window_free(h, r, len)) ++r;
    Heap h2 = h;
    for (int64_t i = 0; i < len; ++i) h2.set(r + i, Val::integer(0));
    Store s2 = s;
    s2.set(c.x, Val::integer(r));
    push(out, std::move(s2), std::move(h2), ps_done());
    return;
  }
  std::vector<Val> cells = opt.alloc_values;
  if (cells.empty()) cells.push_back(Val::integer(0));
  for (int64_t r = opt.addr_lo; r + len <= opt.addr_hi; ++r) {
    if (!window_free(h, r, len)) continue;
    // odometer over the fresh cells' contents
    std::vector<size_t> idx(static_cast<size_t>(len), 0);
    for (;;) {
      Heap h2 = h;
      for (int64_t i = 0; i < len; ++i) h2.set(r + i, cells[idx[static_cast<size_t>(i)]]);
      Store s2 = s;
      s2.set(c.x, Val::integer(r));
      push(out, std::move(s2), std::move(h2), ps_done());
      size_t d = 0;
      while (d < idx.size() && ++idx[d] == cells.size()) idx[d++] = 0;
      if (d == idx.size()) break;
    }
  }
}

void succs_rec(const Store& s, const Heap& h, const PStateP& p, const FunCtxt& phi,
               std::string_view path, const StepOptions& opt, std::vector<Config>& out);

// One leaf command, scheduled at its own thread (path already consumed).
void exec_cmd(const Store& s, const Heap& h, const CmdP& cp, const FunCtxt& phi,
              const StepOptions& opt, std::vector<Config>& out) {
  const Cmd& c = *cp;
  switch (c.k) {
    case Cmd::K::Skip:
      push(out, s, h, ps_done());
      return;
    case Cmd::K::Assign: {
      auto v = eval_exp(c.e1, s);
      if (!v) { out.push_back(fault_config()); return; }
      Store s2 = s;
      s2.set(c.x, *v);
      push(out, std::move(s2), h, ps_done());
      return;
    }
    case Cmd::K::Read: {
      auto a = eval_addr(c.e1, s);
      if (!a || !h.has(*a)) { out.push_back(fault_config()); return; }
      Store s2 = s;
      s2.set(c.x, *h.get(*a));
      push(out, std::move(s2), h, ps_done());
      return;
    }
    case Cmd::K::Mutate: {
      auto a = eval_addr(c.e1, s);
      auto v = eval_exp(c.e2, s);
      if (!a || !v || !h.has(*a)) { out.push_back(fault_config()); return; }
      Heap h2 = h;
      h2.set(*a, *v);
      push(out, s, std::move(h2), ps_done());
      return;
    }
    case Cmd::K::Cas: {
      auto a = eval_addr(c.e1, s);
      auto oldv = eval_exp(c.e2, s);
      auto newv = eval_exp(c.e3, s);
      if (!a || !oldv || !newv || !h.has(*a)) { out.push_back(fault_config()); return; }
      Store s2 = s;
      if (*h.get(*a) == *oldv) {
        s2.set(c.x, Val::integer(1));
        Heap h2 = h;
        h2.set(*a, *newv);
        push(out, std::move(s2), std::move(h2), ps_done());
      } else {
        s2.set(c.x, Val::integer(0));
        push(out, std::move(s2), h, ps_done());
      }
      return;
    }
    case Cmd::K::Fas: {
      auto a = eval_addr(c.e1, s);
      auto v = eval_exp(c.e2, s);
      if (!a || !v || !h.has(*a)) { out.push_back(fault_config()); return; }
      Store s2 = s;
      s2.set(c.x, *h.get(*a));
      Heap h2 = h;
      h2.set(*a, *v);
      push(out, std::move(s2), std::move(h2), ps_done());
      return;
    }
    case Cmd::K::Alloc:
      alloc_succs(s, h, c, opt, out);
      return;
    case Cmd::K::Dealloc: {
      auto a = eval_addr(c.e1, s);
      if (!a || !h.has(*a)) { out.push_back(fault_config()); return; }
      Heap h2 = h;
      h2.erase(*a);
      push(out, s, std::move(h2), ps_done());
      return;
    }
    case Cmd::K::VarBind: {
      Store frame;
      for (const auto& [x, e] : c.binds) {
        auto v = eval_exp(e, s);
        if (!v) { out.push_back(fault_config()); return; }
        frame.set(x, *v);
      }
      push(out, s, h, ps_scoped(std::move(frame), promote(c.c1)));
      return;
    }
    case Cmd::K::If: {
      auto v = eval_exp(c.e1, s);
      if (!v || !v->is_bool()) { out.push_back(fault_config()); return; }
      push(out, s, h, promote(v->truth() ? c.c1 : c.c2));
      return;
    }
    case Cmd::K::While: {
      auto v = eval_exp(c.e1, s);
      if (!v || !v->is_bool()) { out.push_back(fault_config()); return; }
      if (v->truth()) push(out, s, h, ps_seq(promote(c.c1), cp));
      else push(out, s, h, ps_done());
      return;
    }
    case Cmd::K::Call: {
      auto it = phi.find(c.fname);
      if (it == phi.end()) { out.push_back(fault_config()); return; }
      const auto& [params, body] = it->second;
      if (params.size() != c.args.size()) { out.push_back(fault_config()); return; }
      // Actuals are evaluated at the call step and bound as literals, so the
      // callee's formals can never capture variables of a later actual.
      std::vector<std::pair<std::string, ExpP>> binds;
      for (size_t i = 0; i < params.size(); ++i) {
        auto v = eval_exp(c.args[i], s);
        if (!v) { out.push_back(fault_config()); return; }
        binds.push_back({params[i], elit(*v)});
      }
      CmdP inner = binds.empty() ? body : cvar(std::move(binds), body);
      CmdP expansion =
          cvar({{"ret", eint(0)}}, cseq(inner, cassign(c.x, evar("ret"))));
      push(out, s, h, promote(expansion));
      return;
    }
    case Cmd::K::Atomic: {
      // Run the body to completion through local steps only, all at once.
      std::deque<Config> work;
      std::set<std::string> seen;
      work.push_back(Config{false, s, h, promote(c.c1)});
      seen.insert(config_str(work.back()));
      bool fault = false;
      std::vector<std::pair<Store, Heap>> finals;
      while (!work.empty()) {
        Config cur = std::move(work.front());
        work.pop_front();
        if (ps_is_done(cur.state)) {
          finals.push_back({cur.store, cur.heap});
          continue;
        }
        for (const auto& t : candidate_locs(cur.state)) {
          std::vector<Config> nxt;
          succs_rec(cur.store, cur.heap, cur.state, phi, t, opt, nxt);
          for (auto& n : nxt) {
            if (n.fault) { fault = true; continue; }
            if (seen.insert(config_str(n)).second) {
              if (seen.size() > opt.atomic_fuel)
                throw FuelExhausted("atomic block exceeded exploration budget");
              work.push_back(std::move(n));
            }
          }
        }
      }
      if (fault) out.push_back(fault_config());
      for (auto& [s2, h2] : finals) push(out, s2, h2, ps_done());
      return;
    }
    case Cmd::K::Seq:
    case Cmd::K::Par:
    case Cmd::K::Let:
      // promote() keeps these out of leaf position
      return;
  }
}

// Right-biased store merge: the local frame shadows the outer store.
Store merge_store(const Store& outer, const Store& frame) {
  Store m = outer;
  for (const auto& [x, v] : frame) m.set(x, v);
  return m;
}

void succs_rec(const Store& s, const Heap& h, const PStateP& p, const FunCtxt& phi,
               std::string_view path, const StepOptions& opt, std::vector<Config>& out) {
  switch (p->k) {
    case PState::K::Done:
      return;
    case PState::K::CmdS:
      if (!path.empty()) return;
      exec_cmd(s, h, p->cmd, phi, opt, out);
      return;
    case PState::K::Scoped: {
      if (ps_is_done(p->p1)) {
        if (path.empty()) push(out, s, h, ps_done());  // frame is discarded
        return;
      }
      Store merged = merge_store(s, p->frame);
      std::vector<Config> inner;
      succs_rec(merged, h, p->p1, phi, path, opt, inner);
      for (auto& n : inner) {
        if (n.fault) { out.push_back(std::move(n)); continue; }
        // split the merged store back: frame names stay local, the rest
        // (including any fresh names) lands outside; outer variables the
        // frame shadows keep their old values
        Store frame2, outer2;
        for (const auto& [x, v] : n.store) {
          if (p->frame.has(x)) frame2.set(x, v);
          else outer2.set(x, v);
        }
        for (const auto& [x, v] : s)
          if (p->frame.has(x)) outer2.set(x, v);
        push(out, std::move(outer2), std::move(n.heap),
             ps_scoped(std::move(frame2), n.state));
      }
      return;
    }
    case PState::K::SeqS: {
      if (ps_is_done(p->p1)) {
        if (path.empty()) push(out, s, h, promote(p->cmd));
        return;
      }
      std::vector<Config> inner;
      succs_rec(s, h, p->p1, phi, path, opt, inner);
      for (auto& n : inner) {
        if (n.fault) { out.push_back(std::move(n)); continue; }
        push(out, std::move(n.store), std::move(n.heap), ps_seq(n.state, p->cmd));
      }
      return;
    }
    case PState::K::LetS: {
      if (ps_is_done(p->p1)) {
        if (path.empty()) push(out, s, h, ps_done());
        return;
      }
      FunCtxt phi2 = phi;
      phi2[p->fname] = {p->params, p->fbody};
      std::vector<Config> inner;
      succs_rec(s, h, p->p1, phi2, path, opt, inner);
      for (auto& n : inner) {
        if (n.fault) { out.push_back(std::move(n)); continue; }
        push(out, std::move(n.store), std::move(n.heap),
             ps_let(p->fname, p->params, p->fbody, n.state));
      }
      return;
    }
    case PState::K::ParS: {
      if (ps_is_done(p->p1) && ps_is_done(p->p2)) {
        if (path.empty()) push(out, s, h, ps_done());
        return;
      }
      if (path.empty()) return;
      char side = path.front();
      std::string_view rest = path.substr(1);
      const PStateP& sub = side == 'L' ? p->p1 : p->p2;
      if (side != 'L' && side != 'R') return;
      std::vector<Config> inner;
      succs_rec(s, h, sub, phi, rest, opt, inner);
      for (auto& n : inner) {
        if (n.fault) { out.push_back(std::move(n)); continue; }
        PStateP next = side == 'L' ? ps_par(n.state, p->p2) : ps_par(p->p1, n.state);
        push(out, std::move(n.store), std::move(n.heap), std::move(next));
      }
      return;
    }
  }
}

}  // namespace

std::vector<Config> loc_succs(const Store& s, const Heap& h, const PStateP& p,
                              const FunCtxt& phi, std::string_view path,
                              const StepOptions& opt) {
  std::vector<Config> out;
  succs_rec(s, h, p, phi, path, opt, out);
  return out;
}

std::vector<Config> env_succs(const Store& s, const Heap& h, const PStateP& p,
                              const StepOptions& opt) {
  (void)h;  // the old heap is discarded wholesale
  std::vector<Config> out;
  if (opt.env_include_fault) out.push_back(fault_config());
  int64_t width = opt.addr_hi - opt.addr_lo;
  if (width < 0) width = 0;
  double count = 1;
  for (int64_t i = 0; i < width; ++i) count *= 1 + opt.env_values.size();
  if (count > (1 << 20))
    throw FuelExhausted("environment window too large to enumerate");
  // odometer: each window cell is absent (0) or holds one of env_values
  std::vector<size_t> idx(static_cast<size_t>(width), 0);
  for (;;) {
    Heap h2;
    for (int64_t i = 0; i < width; ++i) {
      size_t d = idx[static_cast<size_t>(i)];
      if (d > 0) h2.set(opt.addr_lo + i, opt.env_values[d - 1]);
    }
    push(out, s, std::move(h2), p);
    size_t d = 0;
    while (d < idx.size() && ++idx[d] == 1 + opt.env_values.size()) idx[d++] = 0;
    if (d == idx.size()) break;
  }
  return out;
}

Config init_config(const CmdP& c) {
  Store s;
  for (const auto& x : fv_cmd(c)) s.set(x, Val::integer(0));
  return Config{false, std::move(s), {}, promote(c)};
}

}  // namespace fc
