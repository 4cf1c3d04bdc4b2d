#include "algebra/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace fc {

std::string AVal::str() const {
  if (!is_list) return std::to_string(n);
  std::string out = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string GTerm::str() const {
  if (args.empty()) return ctor;
  std::string out = ctor + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].str();
  }
  return out + ")";
}

MSet mset(std::vector<GTerm> ts) {
  std::sort(ts.begin(), ts.end());
  return ts;
}

std::string mset_str(const MSet& m) {
  if (m.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out += "*";
    out += m[i].str();
  }
  return out;
}

bool submset(const MSet& small, const MSet& big) {
  size_t j = 0;
  for (const auto& t : small) {
    while (j < big.size() && big[j] < t) ++j;
    if (j == big.size() || !(big[j] == t)) return false;
    ++j;
  }
  return true;
}

MSet mset_union(const MSet& a, const MSet& b) {
  MSet out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::optional<MSet> mset_minus(const MSet& m, const MSet& sub) {
  if (!submset(sub, m)) return std::nullopt;
  MSet out;
  size_t j = 0;
  for (const auto& t : m) {
    if (j < sub.size() && sub[j] == t) { ++j; continue; }
    out.push_back(t);
  }
  return out;
}

namespace {

// total order for canonical representatives: cardinality, then lexicographic
bool rep_less(const MSet& a, const MSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct UF {
  std::vector<int> p;
  explicit UF(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void join(int a, int b) { p[find(a)] = find(b); }
};

void enumerate_msets(const std::vector<GTerm>& terms, size_t bound,
                     std::vector<MSet>& out) {
  MSet cur;
  // terms are sorted, so emitting nondecreasing index sequences yields
  // sorted multisets
  auto rec = [&](auto&& self, size_t from) -> void {
    out.push_back(cur);
    if (cur.size() == bound) return;
    for (size_t i = from; i < terms.size(); ++i) {
      cur.push_back(terms[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

Algebra Algebra::build(const AlgebraSpec& spec) {
  if (spec.multiplicity_bound < 1) throw AlgebraError("multiplicity bound must be >= 1");
  const size_t bound = spec.multiplicity_bound;
  const size_t closure = bound + spec.closure_slack;
  std::vector<GTerm> terms = spec.terms;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  for (const auto& u : spec.undefs)
    if (u.empty()) throw AlgebraError("empty multiset declared undefined: empty carrier");

  // the congruence and undef closure run over a universe slightly larger
  // than the carrier, because a chain relating two bounded multisets may
  // peak above the bound (expansion axioms grow a multiset before another
  // axiom contracts it again)
  std::vector<MSet> universe;
  enumerate_msets(terms, closure, universe);
  std::map<MSet, int> uidx;
  for (size_t i = 0; i < universe.size(); ++i) uidx[universe[i]] = static_cast<int>(i);

  for (const auto& [l, r] : spec.eqs) {
    if (!uidx.count(l) || !uidx.count(r))
      throw AlgebraError("congruence equation mentions terms outside the universe: " +
                         mset_str(l) + " = " + mset_str(r));
  }

  UF uf(universe.size());
  for (size_t i = 0; i < universe.size(); ++i) {
    const MSet& m = universe[i];
    for (const auto& [l, r] : spec.eqs) {
      for (int dir = 0; dir < 2; ++dir) {
        const MSet& from = dir ? r : l;
        const MSet& to = dir ? l : r;
        auto rest = mset_minus(m, from);
        if (!rest) continue;
        MSet m2 = mset_union(*rest, to);
        if (m2.size() > closure) continue;
        uf.join(static_cast<int>(i), uidx.at(m2));
      }
    }
  }

  // canonical representative and undef flag per class; a class is removed
  // when any member, including ones in the closure margin, contains a
  // multiset declared undefined
  std::map<int, MSet> crep;
  std::map<int, bool> removed;
  for (size_t i = 0; i < universe.size(); ++i) {
    int c = uf.find(static_cast<int>(i));
    auto it = crep.find(c);
    if (it == crep.end() || rep_less(universe[i], it->second)) crep[c] = universe[i];
    for (const auto& u : spec.undefs)
      if (submset(u, universe[i])) removed[c] = true;
  }

  // the carrier keeps the classes that have a member within the bound;
  // classes living only in the closure margin are out of the fragment
  std::vector<std::pair<MSet, int>> survivors;
  for (auto& [c, r] : crep)
    if (!removed.count(c) && r.size() <= bound) survivors.push_back({r, c});
  std::sort(survivors.begin(), survivors.end(),
            [](const auto& a, const auto& b) { return rep_less(a.first, b.first); });
  if (survivors.empty() || !survivors.front().first.empty())
    throw AlgebraError("empty carrier: the unit was removed by an undefined multiset");

  Algebra a;
  a.bound_ = bound;
  std::map<int, int> newid;
  for (size_t i = 0; i < survivors.size(); ++i) {
    a.rep_.push_back(survivors[i].first);
    newid[survivors[i].second] = static_cast<int>(i);
  }
  for (size_t i = 0; i < universe.size(); ++i) {
    if (universe[i].size() > bound) continue;
    auto it = newid.find(uf.find(static_cast<int>(i)));
    if (it != newid.end()) a.index_[universe[i]] = it->second;
  }

  // composition resolves through the closure: the raw union of two
  // representatives may exceed the bound yet contract into a carrier class.
  // -1 records a composition ruled out by an undef axiom, -2 one whose
  // product is not representable within the bound (or closure)
  const int n = a.size();
  a.table_.assign(n, std::vector<int>(n, -2));
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      MSet m = mset_union(a.rep_[x], a.rep_[y]);
      int r = -2;
      if (m.size() <= closure) {
        int c = uf.find(uidx.at(m));
        if (removed.count(c))
          r = -1;
        else if (auto nit = newid.find(c); nit != newid.end())
          r = nit->second;
      }
      a.table_[x][y] = a.table_[y][x] = r;
    }

  // the table was built from representatives; verify the congruence is
  // stable under composition for every bounded pair, so no equation is
  // silently lost at the bound's edge
  {
    std::vector<std::vector<std::pair<const MSet*, int>>> by_size(
        spec.multiplicity_bound + 1);
    for (const auto& [m, c] : a.index_) by_size[m.size()].push_back({&m, c});
    for (size_t s1 = 1; s1 <= spec.multiplicity_bound; ++s1)
      for (size_t s2 = s1; s1 + s2 <= spec.multiplicity_bound; ++s2)
        for (const auto& [m1, c1] : by_size[s1])
          for (const auto& [m2, c2] : by_size[s2]) {
            MSet m = mset_union(*m1, *m2);
            auto it = a.index_.find(m);
            int direct = it == a.index_.end() ? -1 : it->second;
            if (a.table_[c1][c2] != direct)
              throw AlgebraError(
                  "non-confluent congruence within the bound: " + mset_str(*m1) +
                  " with " + mset_str(*m2) +
                  " composes inconsistently across congruent representatives "
                  "(raise the multiplicity bound or the closure slack)");
          }
  }

  // x is below y when some member of y's class contains a member of x's
  // class: divisibility is read off closure members rather than the
  // composition table, because the dividing witness may itself be too
  // large to represent in the carrier
  a.below_.assign(n, std::vector<char>(n, 0));
  for (size_t i = 0; i < universe.size(); ++i) {
    auto cit = newid.find(uf.find(static_cast<int>(i)));
    if (cit == newid.end()) continue;
    const int cy = cit->second;
    const MSet& m = universe[i];
    std::vector<std::pair<GTerm, int>> runs;
    for (const auto& t : m) {
      if (!runs.empty() && runs.back().first == t)
        ++runs.back().second;
      else
        runs.push_back({t, 1});
    }
    MSet sub;
    auto rec = [&](auto&& self, size_t k) -> void {
      if (k == runs.size()) {
        auto sit = uidx.find(sub);
        if (sit == uidx.end()) return;
        auto xit = newid.find(uf.find(sit->second));
        if (xit != newid.end()) a.below_[xit->second][cy] = 1;
        return;
      }
      const size_t base = sub.size();
      self(self, k + 1);
      for (int c = 1; c <= runs[k].second; ++c) {
        sub.push_back(runs[k].first);
        self(self, k + 1);
      }
      sub.resize(base);
    };
    rec(rec, 0);
  }
  return a;
}

std::optional<int> Algebra::compose(int a, int b) const {
  int r = table_[a][b];
  return r < 0 ? std::nullopt : std::optional<int>(r);
}

Compose Algebra::compose_status(int a, int b) const {
  int r = table_[a][b];
  if (r >= 0) return Compose::Defined;
  return r == -1 ? Compose::Undefined : Compose::OutOfFragment;
}

bool Algebra::below(int a, int b) const { return below_[a][b] != 0; }

std::optional<int> Algebra::element(const MSet& m) const {
  MSet s = m;
  std::sort(s.begin(), s.end());
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> check_pcm_laws(const Algebra& a, int triple_cap) {
  const int n = a.size();
  for (int x = 0; x < n; ++x) {
    if (a.compose(a.unit(), x) != x)
      return "identity fails: 0 * " + a.str(x);
    for (int y = 0; y < n; ++y)
      if (a.compose_status(x, y) != a.compose_status(y, x) ||
          a.compose(x, y) != a.compose(y, x))
        return "commutativity fails: " + a.str(x) + " * " + a.str(y);
  }
  // associativity as Kleene equality over conclusive triples: when an
  // association leaves the representable fragment, the triple says nothing
  // about the modelled algebra at this bound and is skipped
  const int m = std::min(n, triple_cap);
  // evaluates (p*q)*r to an element id, -1 for definitely undefined, or
  // -2 when the fragment cannot decide it
  auto assoc = [&](int p, int q, int r) -> int {
    switch (a.compose_status(p, q)) {
      case Compose::OutOfFragment: return -2;
      case Compose::Undefined: return -1;
      case Compose::Defined: break;
    }
    int pq = *a.compose(p, q);
    switch (a.compose_status(pq, r)) {
      case Compose::OutOfFragment: return -2;
      case Compose::Undefined: return -1;
      case Compose::Defined: return *a.compose(pq, r);
    }
    return -2;
  };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z) {
        int l = assoc(x, y, z);          // (x*y)*z
        int r = assoc(z, y, x);          // x*(y*z), via commutativity
        if (l != -2 && r != -2 && l != r)
          return "associativity fails: " + a.str(x) + " * " + a.str(y) + " * " + a.str(z);
      }
  return std::nullopt;
}

std::vector<int> compute_atoms(const Algebra& a) {
  const int n = a.size();
  std::vector<int> atoms;
  for (int x = 0; x < n; ++x) {
    if (x == a.unit()) continue;
    bool ok = true;
    for (int y = 0; y < n && ok; ++y)
      for (int z = y; z < n && ok; ++z) {
        auto yz = a.compose(y, z);
        if (!yz || !a.below(x, *yz)) continue;
        if (!a.below(x, y) && !a.below(x, z)) ok = false;
      }
    if (ok) atoms.push_back(x);
  }
  return atoms;
}

}  // namespace fc
