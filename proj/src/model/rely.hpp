#pragma once
#include <optional>
#include <string>
#include <vector>

#include "model/world.hpp"
#include "model/worldset.hpp"

namespace fc {

// One tracked region of an atomicity context: while the update for rid is
// pending, the environment keeps the state inside X (safe); the local
// thread's own update must move it from X into Xp (good) and is described
// by the transition relation trrel (frame-closed over obligations).
struct AtomEntry {
  int rid = 0;
  int type = 0;              // region type the entry constrains
  int live_layer = 0;        // layer k of the pseudo-quantifier
  std::vector<int> X;        // safe states (sorted ids)
  std::vector<int> Xp;       // good states (sorted ids, subset of X)
  std::vector<ProtoTrans> trrel;
};

// Atomicity context: tracked regions, sorted by rid. The world spaces used
// with a context are those of its domain.
struct AtomicityContext {
  std::vector<AtomEntry> entries;

  std::vector<int> dom() const;
  const AtomEntry* find(int rid) const;
  // invariant checks: Xp ⊆ X, io(trrel) sources ⊆ X, trrel frame-closed
  std::optional<std::string> validate(const Universe& u) const;
};

// closes a transition set under obligation frames: for (a1,O1) ~> (a2,O2)
// and any O with O1#O and O2#O, adds (a1,O1*O) ~> (a2,O2*O)
std::vector<ProtoTrans> frame_close(const Algebra& obls, std::vector<ProtoTrans> ts);

// Rely machinery for one world space and atomicity context: per-world
// successor lists under the world rely rules, forward closures (the least
// rely-closed superset), reverse closures (all worlds whose closure meets a
// set), and stability checking.
class RelyCtx {
 public:
  RelyCtx(const WorldSpace& s, AtomicityContext a);

  const WorldSpace& space() const { return *s_; }
  const AtomicityContext& actxt() const { return a_; }

  const std::vector<int>& successors(int w);
  WorldSet closure(WorldSet seed);
  WorldSet reverse_closure(const WorldSet& targets);

  // nullopt if den is rely-closed, else a pair (member, successor outside)
  std::optional<std::pair<int, int>> stable_counterexample(const WorldSet& den);

 private:
  void build_reverse();

  const WorldSpace* s_;
  AtomicityContext a_;
  std::vector<std::vector<int>> succ_;
  std::vector<char> have_;
  // reverse adjacency in CSR form, built on demand from all successor lists
  bool rev_built_ = false;
  std::vector<int> rev_off_, rev_edges_;
};

}  // namespace fc
