#pragma once
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebra/algebra.hpp"
#include "algebra/atrack.hpp"
#include "algebra/layer.hpp"
#include "model/worldset.hpp"

namespace fc {

// One transition of a region's interference protocol: holding a guard, the
// abstract state may move a1 -> a2 while the region's obligation pool moves
// o1 -> o2. States are indices into the region type's state list;
// obligations are element ids of the type's obligation algebra.
struct ProtoTrans {
  int a1 = 0, o1 = 0, a2 = 0, o2 = 0;
  friend auto operator<=>(const ProtoTrans&, const ProtoTrans&) = default;
};

// A region type: finite abstract-state domain, guard/obligation algebras,
// and the interference protocol indexed by guard element (stored closed
// under guard monotonicity, reflexivity and obligation frames).
struct RegionType {
  std::string name;
  std::vector<std::vector<AVal>> states;
  const Algebra* guards = nullptr;
  const ObligationAlgebra* obls = nullptr;
  std::vector<std::vector<ProtoTrans>> protocol;  // indexed by guard id

  int state_id(const std::vector<AVal>& s) const;
};

// Shared-region slot of a world: absent (type < 0) or a tuple of region
// type, level, abstract state, local guard, local obligation and
// environment obligation.
struct RegionCell {
  int type = -1;
  int level = 0;
  int state = 0;
  int guard = 0;
  int obl = 0;
  int envobl = 0;
  friend auto operator<=>(const RegionCell&, const RegionCell&) = default;
};

// A world: local heap, shared-region map, and (for the region ids whose
// atomic update is being tracked) an atomicity tracking value. The tracked
// id list lives in the WorldSpace; `track` is aligned with it.
struct World {
  std::vector<std::pair<int64_t, int64_t>> heap;  // sorted addr -> val
  std::vector<RegionCell> regs;                   // aligned with Universe rids
  std::vector<ATrack> track;                      // aligned with WorldSpace R
  friend auto operator<=>(const World&, const World&) = default;

  bool heap_has(int64_t a) const;
  std::optional<int64_t> heap_get(int64_t a) const;
};

struct WorldSpace;

// The declared finite domains every semantic check ranges over: value
// fragment, heap window, region-id budget, level bound and region types.
// World sets, closures and denotations are all subsets of the worlds this
// universe induces.
struct Universe {
  std::vector<int64_t> vals;   // storable values
  std::vector<int64_t> addrs;  // heap window
  int n_rids = 1;              // region ids are 0..n_rids-1
  int level_max = 1;
  std::vector<RegionType> types;
  std::vector<AVal> quant;     // fragment the logical ∃ ranges over

  const RegionType& type(int t) const { return types[static_cast<size_t>(t)]; }
  int type_id(const std::string& name) const;

  // Region-interpretation provider, set by the assertion layer before any
  // space is requested: every newly built space gets its interpretation
  // world-id lists filled from this hook.
  std::function<std::vector<int>(const WorldSpace&, int type, int rid,
                                 int level, int state)>
      interp_fn;

  // world space for a tracked-region set (memoized; R must be sorted)
  const WorldSpace& space(const std::vector<int>& R) const;

 private:
  mutable std::map<std::vector<int>, std::unique_ptr<WorldSpace>> spaces_;
};

// All well-formed worlds for one universe and one tracked-region set, with
// a dense id per world. Interpretation world-id lists for reification are
// installed per (type, rid, level, state) by the assertion layer.
struct WorldSpace {
  const Universe* u = nullptr;
  std::vector<int> R;  // tracked region ids, sorted
  std::vector<World> worlds;
  // interp[{type, rid, level, state}] = ids of interpretation worlds
  std::map<std::array<int, 4>, std::vector<int>> interp;
  // division tables per obligation algebra: div[y][x] = unique z with
  // x = y * z, or -1 (used for the subjective composition remainder)
  std::map<const Algebra*, std::vector<std::vector<int>>> div;
  // worlds compose only when their region maps agree on presence, type,
  // level and state; worlds are bucketed by that signature
  std::vector<int> sig;                        // per world id
  std::vector<std::vector<int>> sig_members;   // per signature id

  int id(const World& w) const;
  int track_pos(int rid) const;  // index into World::track, -1 if untracked

  // subjective world composition; nullopt when undefined
  std::optional<World> compose(const World& a, const World& b) const;
  std::optional<int> compose_ids(int a, int b) const;

  // image of pairwise composition (the separating conjunction on views)
  WorldSet star(const WorldSet& p, const WorldSet& q) const;

  bool is_unit(const World& w) const;

  std::string describe(int w) const;  // human-readable world summary

  // enumerates heaps over the universe window (used by viewshift checks)
  std::vector<std::vector<std::pair<int64_t, int64_t>>> all_heaps() const;
};

}  // namespace fc
