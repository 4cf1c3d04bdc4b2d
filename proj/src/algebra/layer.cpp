#include "algebra/layer.hpp"

namespace fc {

LayerOrder LayerOrder::build(
    const std::vector<std::string>& points,
    const std::vector<std::pair<std::string, std::string>>& lt_edges) {
  LayerOrder o;
  auto intern = [&](const std::string& p) {
    auto [it, fresh] = o.ids_.emplace(p, static_cast<int>(o.names_.size()));
    if (fresh) o.names_.push_back(p);
    return it->second;
  };
  o.bot_ = intern("bot");
  o.top_ = intern("top");
  for (const auto& p : points) intern(p);

  const int n = o.size();
  o.lt_.assign(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : lt_edges) o.lt_[o.id(a)][o.id(b)] = 1;
  for (int i = 0; i < n; ++i) {
    if (i != o.bot_) o.lt_[o.bot_][i] = 1;
    if (i != o.top_) o.lt_[i][o.top_] = 1;
  }
  for (int k = 0; k < n; ++k)  // transitive closure
    for (int i = 0; i < n; ++i)
      if (o.lt_[i][k])
        for (int j = 0; j < n; ++j)
          if (o.lt_[k][j]) o.lt_[i][j] = 1;
  for (int i = 0; i < n; ++i)
    if (o.lt_[i][i])
      throw AlgebraError("layer order has a cycle through '" + o.names_[i] + "'");
  return o;
}

int LayerOrder::id(const std::string& name) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw AlgebraError("unknown layer '" + name + "'");
  return it->second;
}

std::optional<int> LayerOrder::meet(int a, int b) const {
  if (le(a, b)) return a;
  if (le(b, a)) return b;
  std::optional<int> best;
  for (int c = 0; c < size(); ++c) {
    if (!le(c, a) || !le(c, b)) continue;
    if (!best || le(*best, c)) best = c;
  }
  // `best` is the greatest lower bound only if it dominates every lower bound
  for (int c = 0; c < size(); ++c)
    if (le(c, a) && le(c, b) && !le(c, *best)) return std::nullopt;
  return best;
}

ObligationAlgebra build_obligations(const ObligationSpec& spec) {
  ObligationAlgebra out{Algebra::build(spec.base), spec.order, {}, {}, {}};
  const Algebra& alg = out.alg;
  const LayerOrder& ord = spec.order;
  auto fail = [&](const std::string& law, const std::string& cex) {
    out.failures.push_back({law, cex});
  };

  // layer of an element: meet over the declared layers of its parts
  bool lay_total = true;
  auto lay_of = [&](const MSet& m) -> std::optional<int> {
    int cur = ord.top();
    for (const GTerm& t : m) {
      auto it = spec.term_layer.find(t);
      if (it == spec.term_layer.end()) {
        if (lay_total) fail("layer-total", "no layer declared for " + t.str());
        lay_total = false;
        return std::nullopt;
      }
      auto met = ord.meet(cur, ord.id(it->second));
      if (!met) {
        fail("layer-meet", "no meet for the part layers of " + mset_str(m));
        return std::nullopt;
      }
      cur = *met;
    }
    return cur;
  };
  out.lay.assign(alg.size(), ord.top());
  for (int x = 0; x < alg.size(); ++x)
    if (auto l = lay_of(alg.rep(x))) out.lay[x] = *l;

  // the extension must not depend on the choice of representative
  for (const auto& [m, id] : alg.members()) {
    auto l = lay_of(m);
    if (l && *l != out.lay[id]) {
      fail("layer-welldef", mset_str(m) + " has layer " + ord.name(*l) +
                                " but its class " + alg.str(id) + " has layer " +
                                ord.name(out.lay[id]));
      break;
    }
  }

  // bot ⊏ lay(O) ⊑ top for every proper obligation
  for (int x = 0; x < alg.size(); ++x) {
    if (x == alg.unit()) continue;
    if (!ord.lt(ord.bot(), out.lay[x]))
      fail("layer-strict", alg.str(x) + " sits at bot");
  }

  // antitone: O1 ≼ O2 implies lay(O1) ⊒ lay(O2)
  for (int x = 0; x < alg.size(); ++x)
    for (int y = 0; y < alg.size(); ++y)
      if (alg.below(x, y) && !ord.le(out.lay[y], out.lay[x])) {
        fail("layer-antitone", alg.str(x) + " <= " + alg.str(y) + " but lay(" +
                                   alg.str(x) + ") = " + ord.name(out.lay[x]) +
                                   " < lay(" + alg.str(y) + ") = " +
                                   ord.name(out.lay[y]));
        goto antitone_done;
      }
antitone_done:

  // cancellative: a•b = a•c implies b = c
  for (int a = 0; a < alg.size(); ++a)
    for (int b = 0; b < alg.size(); ++b) {
      auto ab = alg.compose(a, b);
      if (!ab) continue;
      for (int c = b + 1; c < alg.size(); ++c)
        if (alg.compose(a, c) == ab) {
          fail("cancellative", alg.str(a) + " * " + alg.str(b) + " = " +
                                   alg.str(a) + " * " + alg.str(c));
          goto cancel_done;
        }
    }
cancel_done:

  // atoms are not a law: they are the subset liveness arguments may track
  out.atoms = compute_atoms(alg);

  return out;
}

}  // namespace fc
