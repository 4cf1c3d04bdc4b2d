#include "assertions/denote.hpp"

#include <algorithm>

namespace fc {

namespace {

// unit conditions with one component exempted from the zero requirement:
// heap (for |->), the guard at guard_rid (for <G>_r), the obligation at
// obl_rid (for ceil[O]_r), or the tracking value at track_rid (for |=>)
bool unitish(const WorldSpace& s, const World& w, bool skip_heap,
             int guard_rid, int obl_rid, int track_rid) {
  if (!skip_heap && !w.heap.empty()) return false;
  for (int r = 0; r < s.u->n_rids; ++r) {
    const RegionCell& c = w.regs[static_cast<size_t>(r)];
    if (c.type < 0) continue;
    if (r != guard_rid && c.guard != 0) return false;
    if (r != obl_rid && c.obl != 0) return false;
  }
  for (size_t k = 0; k < s.R.size(); ++k)
    if (s.R[k] != track_rid && w.track[k].k == ATrack::K::Pending) return false;
  return true;
}

// Per-region-type resolution of a ground term product to an element id.
// -1 = the product is undefined in that type's algebra (satisfiable by no
// world); a product larger than the algebra's multiplicity bound is a
// fragment limitation and throws instead of silently denoting ∅.
struct TermResolver {
  const Universe& u;
  MSet m;
  const char* what;
  bool on_obligations;
  std::vector<int> cache;

  TermResolver(const Universe& uni, const std::vector<GTermExpr>& terms,
               const Valuation& env, const char* w, bool obls)
      : u(uni), what(w), on_obligations(obls), cache(uni.types.size(), -2) {
    std::vector<GTerm> ts;
    for (const GTermExpr& t : terms) ts.push_back(eval_gterm(t, env));
    m = mset(std::move(ts));
  }

  int at(int type) {
    int& slot = cache[static_cast<size_t>(type)];
    if (slot != -2) return slot;
    const Algebra& alg = on_obligations ? u.types[static_cast<size_t>(type)].obls->alg
                                        : *u.types[static_cast<size_t>(type)].guards;
    if (m.size() > alg.bound())
      throw AssertError(std::string(what) + " term " + mset_str(m) +
                        " exceeds the bounded algebra fragment (bound " +
                        std::to_string(alg.bound()) + ")");
    auto e = alg.element(m);
    return slot = e ? *e : -1;
  }
};

int64_t rid_of(const Assertion& a, const Valuation& env) {
  return eval_num(a.rid, env);
}

bool cmp_holds(const Assertion& a, const Valuation& env) {
  AVal l = eval_expr(a.es[0], env), r = eval_expr(a.es[1], env);
  if (a.op == "=") return l == r;
  if (a.op == "!=") return l != r;
  if (l.is_list || r.is_list)
    throw AssertError("ordered comparison on a list value");
  if (a.op == "<") return l.n < r.n;
  if (a.op == "<=") return l.n <= r.n;
  if (a.op == ">") return l.n > r.n;
  return l.n >= r.n;
}

}  // namespace

WorldSet denote(const WorldSpace& s, const Assertion& a, const Valuation& env) {
  using K = Assertion::K;
  const size_t n = s.worlds.size();
  WorldSet out(n);
  auto all = [&] {
    WorldSet ws(n);
    for (size_t i = 0; i < n; ++i) ws.set(static_cast<int>(i));
    return ws;
  };

  switch (a.k) {
    case K::Emp: {
      for (size_t i = 0; i < n; ++i)
        if (s.is_unit(s.worlds[i])) out.set(static_cast<int>(i));
      return out;
    }
    case K::Cmp:
      return cmp_holds(a, env) ? all() : out;
    case K::In: {
      int64_t v = eval_num(a.es[0], env);
      return std::binary_search(a.set_vals.begin(), a.set_vals.end(), v) ? all()
                                                                         : out;
    }
    case K::Not: {
      WorldSet k = denote(s, a.kids[0], env);
      for (size_t i = 0; i < n; ++i)
        if (!k.test(static_cast<int>(i))) out.set(static_cast<int>(i));
      return out;
    }
    case K::And: {
      out = denote(s, a.kids[0], env);
      out &= denote(s, a.kids[1], env);
      return out;
    }
    case K::Or: {
      out = denote(s, a.kids[0], env);
      out |= denote(s, a.kids[1], env);
      return out;
    }
    case K::Exists: {
      Valuation env2 = env;
      for (const AVal& v : s.u->quant) {
        env2[a.var] = v;
        out |= denote(s, a.kids[0], env2);
      }
      return out;
    }
    case K::Star:
      return s.star(denote(s, a.kids[0], env), denote(s, a.kids[1], env));
    case K::Wand: {
      WorldSet p = denote(s, a.kids[0], env);
      WorldSet q = denote(s, a.kids[1], env);
      std::vector<int> pids = p.ids();
      for (size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (int wp : pids) {
          auto c = s.compose_ids(static_cast<int>(i), wp);
          if (c && !q.test(*c)) {
            ok = false;
            break;
          }
        }
        if (ok) out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::PointsTo: {
      int64_t addr = eval_num(a.es[0], env), val = eval_num(a.es[1], env);
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        if (w.heap.size() == 1 && w.heap[0] == std::pair{addr, val} &&
            unitish(s, w, true, -1, -1, -1))
          out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::Region: {
      int64_t rid = rid_of(a, env);
      if (rid < 0 || rid >= s.u->n_rids) return out;
      int type = s.u->type_id(a.type_name);
      std::vector<AVal> tup;
      for (const Expr& e : a.es) tup.push_back(eval_expr(e, env));
      int sid = s.u->type(type).state_id(tup);
      if (sid < 0) return out;
      for (size_t i = 0; i < n; ++i) {
        const RegionCell& c = s.worlds[i].regs[static_cast<size_t>(rid)];
        if (c.type == type && (a.level < 0 || c.level == a.level) &&
            c.state == sid && s.is_unit(s.worlds[i]))
          out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::Guard: {
      int64_t rid = rid_of(a, env);
      if (rid < 0 || rid >= s.u->n_rids) return out;
      TermResolver res(*s.u, a.terms, env, "guard", false);
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        const RegionCell& c = w.regs[static_cast<size_t>(rid)];
        if (c.type < 0) {
          if (!res.m.empty()) continue;  // absent region holds no guard
        } else {
          int g = res.at(c.type);
          if (g < 0 || c.guard != g) continue;
        }
        if (unitish(s, w, false, static_cast<int>(rid), -1, -1))
          out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::LocObl: {
      int64_t rid = rid_of(a, env);
      if (rid < 0 || rid >= s.u->n_rids) return out;
      TermResolver res(*s.u, a.terms, env, "obligation", true);
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        const RegionCell& c = w.regs[static_cast<size_t>(rid)];
        if (c.type < 0) {
          if (!res.m.empty()) continue;
        } else {
          int o = res.at(c.type);
          if (o < 0 || c.obl != o) continue;
        }
        if (unitish(s, w, false, -1, static_cast<int>(rid), -1))
          out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::EnvObl: {
      int64_t rid = rid_of(a, env);
      if (rid < 0 || rid >= s.u->n_rids) return out;
      TermResolver res(*s.u, a.terms, env, "obligation", true);
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        const RegionCell& c = w.regs[static_cast<size_t>(rid)];
        if (c.type < 0) {
          if (!res.m.empty()) continue;  // absent region: ε is the unit
        } else {
          int o = res.at(c.type);
          if (o < 0 || !s.u->type(c.type).obls->alg.below(o, c.envobl)) continue;
        }
        if (s.is_unit(w)) out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::Track: {
      int64_t rid = rid_of(a, env);
      int tp = rid >= 0 && rid < s.u->n_rids ? s.track_pos(static_cast<int>(rid))
                                             : -1;
      if (tp < 0) return out;  // untracked id: no world carries the component
      // in a tracked space the region is present in every world, so the done
      // tuples resolve against each world's own type
      std::vector<AVal> t1, t2;
      for (const Expr& e : a.es) t1.push_back(eval_expr(e, env));
      for (const Expr& e : a.es2) t2.push_back(eval_expr(e, env));
      std::vector<std::optional<ATrack>> want(s.u->types.size());
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        const RegionCell& c = w.regs[static_cast<size_t>(rid)];
        std::optional<ATrack>& tv = want[static_cast<size_t>(c.type)];
        if (!tv) {
          if (a.track_kind == 0) {
            tv = ATrack::pending();
          } else if (a.track_kind == 1) {
            tv = ATrack::envpending();
          } else {
            const RegionType& rt = s.u->type(c.type);
            int s1 = rt.state_id(t1), s2 = rt.state_id(t2);
            tv = ATrack::done(s1, s2);  // unknown states match no world
          }
        }
        if (w.track[static_cast<size_t>(tp)] == *tv &&
            unitish(s, w, false, -1, -1, static_cast<int>(rid)))
          out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::ZeroObl: {
      std::vector<int64_t> rids;
      for (const Expr& e : a.es) rids.push_back(eval_num(e, env));
      for (size_t i = 0; i < n; ++i) {
        const World& w = s.worlds[i];
        bool ok = true;
        for (int64_t r : rids) {
          if (r < 0 || r >= s.u->n_rids) continue;
          const RegionCell& c = w.regs[static_cast<size_t>(r)];
          if (c.type >= 0 && c.obl != 0) {
            ok = false;
            break;
          }
        }
        if (ok) out.set(static_cast<int>(i));
      }
      return out;
    }
    case K::MinLay: {
      int64_t rid = rid_of(a, env);
      if (rid < 0 || rid >= s.u->n_rids) return all();  // default unit: top
      std::vector<int> mid(s.u->types.size(), -2);
      for (size_t i = 0; i < n; ++i) {
        const RegionCell& c = s.worlds[i].regs[static_cast<size_t>(rid)];
        if (c.type < 0) {  // obligation map default unit sits at layer top
          out.set(static_cast<int>(i));
          continue;
        }
        const ObligationAlgebra& oa = *s.u->type(c.type).obls;
        int& m = mid[static_cast<size_t>(c.type)];
        if (m == -2) m = oa.order.id(a.layer_name);
        if (oa.order.le(m, oa.lay[static_cast<size_t>(c.obl)]))
          out.set(static_cast<int>(i));
      }
      return out;
    }
  }
  throw AssertError("bad assertion node");
}

}  // namespace fc
