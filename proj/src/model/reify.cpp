#include "model/reify.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace fc {

int ReifyCache::heap_id(const Heap& h) {
  auto it = ids_.find(h);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(heaps_.size());
  heaps_.push_back(h);
  ids_.emplace(h, id);
  return id;
}

namespace {

bool env_all_zero(const World& w) {
  for (const RegionCell& c : w.regs)
    if (c.type >= 0 && c.envobl != 0) return false;
  return true;
}

}  // namespace

const std::vector<int>& ReifyCache::reify(int w, int level) {
  auto key = std::make_pair(w, level);
  auto mit = memo_.find(key);
  if (mit != memo_.end()) return mit->second;

  const WorldSpace& s = *s_;
  const World& W = s.worlds[static_cast<size_t>(w)];
  std::vector<int> closed;
  for (int r = 0; r < static_cast<int>(W.regs.size()); ++r) {
    const RegionCell& c = W.regs[static_cast<size_t>(r)];
    if (c.type >= 0 && c.level < level) closed.push_back(r);
  }

  std::set<int> heaps;
  if (closed.empty()) {
    if (env_all_zero(W)) heaps.insert(heap_id(W.heap));
  } else {
    // interpretation world candidates per closed region, sig-filtered
    std::vector<std::vector<int>> cands;
    for (int r : closed) {
      const RegionCell& c = W.regs[static_cast<size_t>(r)];
      std::array<int, 4> k{c.type, r, c.level, c.state};
      auto it = s.interp.find(k);
      if (it == s.interp.end())
        throw std::runtime_error(
            "no region interpretation registered for type '" +
            s.u->type(c.type).name + "' at region " + std::to_string(r) +
            ", level " + std::to_string(c.level) + ", state " +
            std::to_string(c.state));
      std::vector<int> filt;
      for (int cand : it->second)
        if (s.sig[static_cast<size_t>(cand)] == s.sig[static_cast<size_t>(w)])
          filt.push_back(cand);
      cands.push_back(std::move(filt));
    }

    // one interpretation world per closed region, any composition order
    // (orders differ only at the representability boundary)
    std::vector<int> order(closed.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end());
    std::set<int> finals;
    do {
      // choices over cands in this order, folding composition
      auto rec = [&](auto&& self, size_t k, int acc) -> void {
        if (k == order.size()) {
          finals.insert(acc);
          return;
        }
        for (int cand : cands[static_cast<size_t>(order[k])]) {
          auto c = s.compose_ids(acc, cand);
          if (c) self(self, k + 1, *c);
        }
      };
      rec(rec, 0, w);
    } while (std::next_permutation(order.begin(), order.end()));

    for (int f : finals) {
      const World& F = s.worlds[static_cast<size_t>(f)];
      if (env_all_zero(F)) heaps.insert(heap_id(F.heap));
    }
  }

  auto [it, ok] = memo_.emplace(key, std::vector<int>(heaps.begin(), heaps.end()));
  (void)ok;
  return it->second;
}

bool ReifyCache::reify_contains(int w, int level, int heap) {
  const std::vector<int>& hs = reify(w, level);
  return std::binary_search(hs.begin(), hs.end(), heap);
}

namespace {

// slice of the atomicity condition: one (region id, type, level, abstract
// state, local obligation) tuple identifying the worlds W_i
using Slice = std::array<int, 5>;

struct Scan {
  WorldSet hit;
  std::map<Slice, std::vector<int>> slices;
};

// for every generator world wf, whether some composite wp * wf (wp in p)
// reifies to the given heap; with slicing, the same bucketed per region
// cell of the composite
Scan scan_side(RelyCtx& rc, ReifyCache& rf, const WorldSet& p, int lvl,
               int heap, bool slice) {
  const WorldSpace& s = rc.space();
  Scan out{WorldSet(s.worlds.size()), {}};
  p.for_each([&](int wp) {
    for (int wf : s.sig_members[static_cast<size_t>(s.sig[static_cast<size_t>(wp)])]) {
      auto c = s.compose_ids(wp, wf);
      if (!c) continue;
      if (!rf.reify_contains(*c, lvl, heap)) continue;
      out.hit.set(wf);
      if (slice) {
        const World& C = s.worlds[static_cast<size_t>(*c)];
        for (int r = 0; r < static_cast<int>(C.regs.size()); ++r) {
          const RegionCell& cell = C.regs[static_cast<size_t>(r)];
          if (cell.type < 0) continue;
          out.slices[{r, cell.type, cell.level, cell.state, cell.obl}].push_back(wf);
        }
      }
    }
  });
  return out;
}

WorldSet to_set(size_t n, const std::vector<int>& ids) {
  WorldSet s(n);
  for (int i : ids) s.set(i);
  return s;
}

// single transitions of the full interference relation of a type, from a
// given (state, obligation) pair
std::vector<std::pair<int, int>> lts_targets(const RegionType& rt, int a1, int o1) {
  std::set<std::pair<int, int>> out;
  for (const auto& ts : rt.protocol)
    for (const ProtoTrans& t : ts)
      if (t.a1 == a1 && t.o1 == o1) out.emplace(t.a2, t.o2);
  return {out.begin(), out.end()};
}

}  // namespace

bool frame_preserving_update(RelyCtx& rc, ReifyCache& rf, const WorldSet& p1,
                             const WorldSet& p2, int lvl1, int lvl2,
                             const Heap& h1, const Heap& h2, bool atomic,
                             std::string* diag) {
  const WorldSpace& s = rc.space();
  const size_t n = s.worlds.size();
  const int h1id = rf.heap_id(h1), h2id = rf.heap_id(h2);

  Scan s1 = scan_side(rc, rf, p1, lvl1, h1id, atomic);
  Scan s2 = scan_side(rc, rf, p2, lvl2, h2id, atomic);

  WorldSet pre = rc.reverse_closure(s1.hit);
  WorldSet post = rc.reverse_closure(s2.hit);
  int bad = pre.first_not_in(post);
  if (bad >= 0) {
    if (diag)
      *diag = "frame generated by " + s.describe(bad) +
              " is compatible with the source view but not with the target view";
    return false;
  }

  if (!atomic) return true;

  for (auto& [key, ids] : s1.slices) {
    const auto [rid, type, lvl, a1, o1] = key;
    WorldSet pre_s = rc.reverse_closure(to_set(n, ids));
    WorldSet cover(n);
    for (auto [a2, o2] : lts_targets(s.u->type(type), a1, o1)) {
      auto it = s2.slices.find(Slice{rid, type, lvl, a2, o2});
      if (it != s2.slices.end()) cover |= rc.reverse_closure(to_set(n, it->second));
    }
    bad = pre_s.first_not_in(cover);
    if (bad >= 0) {
      if (diag) {
        const RegionType& rt = s.u->type(type);
        *diag = "atomicity: no single protocol transition of region " +
                std::to_string(rid) + " (type " + rt.name + ", state id " +
                std::to_string(a1) + ", obligation " + rt.obls->alg.str(o1) +
                ") justifies the update against the frame generated by " +
                s.describe(bad);
      }
      return false;
    }
  }
  return true;
}

bool viewshift_check(RelyCtx& rc, ReifyCache& rf, const WorldSet& p,
                     const WorldSet& q, int lvl1, int lvl2, std::string* diag) {
  const WorldSpace& s = rc.space();
  for (const Heap& h : s.all_heaps()) {
    std::string d;
    if (!frame_preserving_update(rc, rf, p, q, lvl1, lvl2, h, h, true, &d)) {
      if (diag) {
        std::string hs = "[";
        for (size_t i = 0; i < h.size(); ++i)
          hs += (i ? ", " : "") + std::to_string(h[i].first) + "->" +
                std::to_string(h[i].second);
        hs += "]";
        *diag = "heap " + hs + ": " + d;
      }
      return false;
    }
  }
  return true;
}

}  // namespace fc
