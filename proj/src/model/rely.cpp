#include "model/rely.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace fc {

std::vector<int> AtomicityContext::dom() const {
  std::vector<int> out;
  for (const AtomEntry& e : entries) out.push_back(e.rid);
  return out;
}

const AtomEntry* AtomicityContext::find(int rid) const {
  for (const AtomEntry& e : entries)
    if (e.rid == rid) return &e;
  return nullptr;
}

std::optional<std::string> AtomicityContext::validate(const Universe& u) const {
  for (const AtomEntry& e : entries) {
    if (!std::is_sorted(e.X.begin(), e.X.end()) ||
        !std::is_sorted(e.Xp.begin(), e.Xp.end()))
      return "atomicity entry for region " + std::to_string(e.rid) +
             ": state sets must be sorted";
    if (!std::includes(e.X.begin(), e.X.end(), e.Xp.begin(), e.Xp.end()))
      return "atomicity entry for region " + std::to_string(e.rid) +
             ": target states must be a subset of the safe states";
    for (const ProtoTrans& t : e.trrel)
      if (!std::binary_search(e.X.begin(), e.X.end(), t.a1))
        return "atomicity entry for region " + std::to_string(e.rid) +
               ": transition source outside the safe states";
    const Algebra& alg = u.type(e.type).obls->alg;
    auto closed = frame_close(alg, e.trrel);
    std::set<ProtoTrans> have(e.trrel.begin(), e.trrel.end());
    for (const ProtoTrans& t : closed)
      if (!have.count(t))
        return "atomicity entry for region " + std::to_string(e.rid) +
               ": transition relation is not closed under obligation frames";
  }
  return std::nullopt;
}

std::vector<ProtoTrans> frame_close(const Algebra& obls, std::vector<ProtoTrans> ts) {
  std::set<ProtoTrans> out(ts.begin(), ts.end());
  std::deque<ProtoTrans> work(ts.begin(), ts.end());
  while (!work.empty()) {
    ProtoTrans t = work.front();
    work.pop_front();
    for (int o = 1; o < obls.size(); ++o) {
      auto o1 = obls.compose(t.o1, o);
      auto o2 = obls.compose(t.o2, o);
      if (!o1 || !o2) continue;
      ProtoTrans nt{t.a1, *o1, t.a2, *o2};
      if (out.insert(nt).second) work.push_back(nt);
    }
  }
  return {out.begin(), out.end()};
}

RelyCtx::RelyCtx(const WorldSpace& s, AtomicityContext a) : s_(&s), a_(std::move(a)) {
  succ_.resize(s.worlds.size());
  have_.assign(s.worlds.size(), 0);
}

const std::vector<int>& RelyCtx::successors(int wi) {
  if (have_[static_cast<size_t>(wi)]) return succ_[static_cast<size_t>(wi)];
  const Universe& u = *s_->u;
  const World& w = s_->worlds[static_cast<size_t>(wi)];
  std::set<int> out;

  World nw = w;
  auto emit = [&]() {
    int j = s_->id(nw);
    if (j >= 0 && j != wi) out.insert(j);
  };

  for (int rid = 0; rid < u.n_rids; ++rid) {
    const RegionCell c = w.regs[static_cast<size_t>(rid)];
    const int tpos = s_->track_pos(rid);
    if (c.type >= 0) {
      const RegionType& rt = u.type(c.type);
      const Algebra& obls = rt.obls->alg;
      const AtomEntry* ae = a_.find(rid);

      // wr1: environment interference licensed by a guard compatible with ours
      const bool pin = tpos >= 0 && w.track[static_cast<size_t>(tpos)].k != ATrack::K::Done;
      for (int g = 0; g < rt.guards->size(); ++g) {
        if (rt.guards->compose_status(c.guard, g) != Compose::Defined) continue;
        for (const ProtoTrans& t : rt.protocol[static_cast<size_t>(g)]) {
          if (t.a1 != c.state || t.o1 != c.envobl) continue;
          if (pin && ae && !std::binary_search(ae->X.begin(), ae->X.end(), t.a2)) continue;
          if (!obls.compose(c.obl, t.o2)) continue;
          nw = w;
          nw.regs[static_cast<size_t>(rid)].state = t.a2;
          nw.regs[static_cast<size_t>(rid)].envobl = t.o2;
          emit();
        }
      }

      // wr2: the delegated atomic update is performed by the environment
      if (tpos >= 0 && w.track[static_cast<size_t>(tpos)].k == ATrack::K::EnvPending && ae) {
        for (const ProtoTrans& t : ae->trrel) {
          if (t.a1 != c.state || t.o1 != c.envobl) continue;
          if (!obls.compose(c.obl, t.o2)) continue;
          nw = w;
          nw.regs[static_cast<size_t>(rid)].state = t.a2;
          nw.regs[static_cast<size_t>(rid)].envobl = t.o2;
          nw.track[static_cast<size_t>(tpos)] = ATrack::done(t.a1, t.a2);
          emit();
        }
      }

      // wr4: the environment may hold more obligations than assumed
      for (int e2 = 0; e2 < obls.size(); ++e2) {
        if (e2 == c.envobl || !obls.below(c.envobl, e2)) continue;
        if (!obls.compose(c.obl, e2)) continue;
        nw = w;
        nw.regs[static_cast<size_t>(rid)].envobl = e2;
        emit();
      }
    } else {
      // wr3: the environment allocates a fresh region
      for (int t = 0; t < static_cast<int>(u.types.size()); ++t) {
        const RegionType& rt = u.type(t);
        for (int lv = 0; lv <= u.level_max; ++lv)
          for (int st = 0; st < static_cast<int>(rt.states.size()); ++st)
            for (int o = 0; o < rt.obls->alg.size(); ++o) {
              nw = w;
              nw.regs[static_cast<size_t>(rid)] = RegionCell{t, lv, st, 0, 0, o};
              emit();
            }
      }
    }
  }

  succ_[static_cast<size_t>(wi)] = std::vector<int>(out.begin(), out.end());
  have_[static_cast<size_t>(wi)] = 1;
  return succ_[static_cast<size_t>(wi)];
}

WorldSet RelyCtx::closure(WorldSet seed) {
  std::deque<int> work;
  seed.for_each([&](int i) { work.push_back(i); });
  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    for (int j : successors(i))
      if (!seed.test(j)) {
        seed.set(j);
        work.push_back(j);
      }
  }
  return seed;
}

void RelyCtx::build_reverse() {
  if (rev_built_) return;
  const int n = static_cast<int>(s_->worlds.size());
  std::vector<int> deg(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i)
    for (int j : successors(i)) deg[static_cast<size_t>(j) + 1]++;
  rev_off_.assign(static_cast<size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) rev_off_[static_cast<size_t>(i) + 1] = rev_off_[static_cast<size_t>(i)] + deg[static_cast<size_t>(i) + 1];
  rev_edges_.assign(static_cast<size_t>(rev_off_[static_cast<size_t>(n)]), 0);
  std::vector<int> fill(rev_off_.begin(), rev_off_.end() - 1);
  for (int i = 0; i < n; ++i)
    for (int j : successors(i)) rev_edges_[static_cast<size_t>(fill[static_cast<size_t>(j)]++)] = i;
  rev_built_ = true;
}

WorldSet RelyCtx::reverse_closure(const WorldSet& targets) {
  build_reverse();
  WorldSet out = targets;
  std::deque<int> work;
  targets.for_each([&](int i) { work.push_back(i); });
  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    for (int k = rev_off_[static_cast<size_t>(i)]; k < rev_off_[static_cast<size_t>(i) + 1]; ++k) {
      int j = rev_edges_[static_cast<size_t>(k)];
      if (!out.test(j)) {
        out.set(j);
        work.push_back(j);
      }
    }
  }
  return out;
}

std::optional<std::pair<int, int>> RelyCtx::stable_counterexample(const WorldSet& den) {
  std::optional<std::pair<int, int>> bad;
  std::vector<int> members = den.ids();
  for (int i : members) {
    for (int j : successors(i))
      if (!den.test(j)) return std::make_pair(i, j);
  }
  return bad;
}

}  // namespace fc
