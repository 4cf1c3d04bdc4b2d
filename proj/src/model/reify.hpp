#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "model/rely.hpp"
#include "model/world.hpp"
#include "model/worldset.hpp"

namespace fc {

using Heap = std::vector<std::pair<int64_t, int64_t>>;

// Reification of worlds to concrete heaps: every shared region below the
// given level is opened exactly once by composing in a world from its
// registered interpretation; a collapse is admitted only when the final
// composite assumes no environment obligations anywhere. Results are sets
// of interned heap ids, memoized per (world, level).
class ReifyCache {
 public:
  explicit ReifyCache(const WorldSpace& s) : s_(&s) {}

  const WorldSpace& space() const { return *s_; }
  int heap_id(const Heap& h);                 // interns
  const Heap& heap(int id) const { return heaps_[static_cast<size_t>(id)]; }

  // sorted heap ids reachable by collapsing world w at the given level;
  // throws if a needed region interpretation was never installed
  const std::vector<int>& reify(int w, int level);

  bool reify_contains(int w, int level, int heap);

 private:
  const WorldSpace* s_;
  std::vector<Heap> heaps_;
  std::map<Heap, int> ids_;
  std::map<std::pair<int, int>, std::vector<int>> memo_;
};

// Frame-preserving update from h1 to h2, justified as moving view p1 (at
// lvl1) to p2 (at lvl2), checked against every frame view of the declared
// universe. With atomic=true additionally requires every allowed region
// state change to match a single protocol transition. On failure, *diag
// receives a description of the offending frame.
bool frame_preserving_update(RelyCtx& rc, ReifyCache& rf, const WorldSet& p1,
                             const WorldSet& p2, int lvl1, int lvl2,
                             const Heap& h1, const Heap& h2, bool atomic,
                             std::string* diag = nullptr);

// View shift: every heap of the universe window admits the identity update
// from p to q (with the atomicity condition).
bool viewshift_check(RelyCtx& rc, ReifyCache& rf, const WorldSet& p,
                     const WorldSet& q, int lvl1, int lvl2,
                     std::string* diag = nullptr);

}  // namespace fc
