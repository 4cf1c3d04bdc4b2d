#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "model/reify.hpp"
#include "model/rely.hpp"
#include "model/world.hpp"
#include "model/worldset.hpp"

using namespace fc;

namespace {

GTerm t0(const std::string& c) { return GTerm{c, {}}; }

// Four-state region with one self-incompatible guard g licensing a -> b -> c,
// one obligation atom k, interpreted as a single cell at address 1 holding
// the state. This is the worked update example: holding g justifies a ~> c
// as a plain update but not as one atomic step, and without g even a ~> b
// fails because a frame may own g and pin the state.
struct Fix {
  Algebra guards;
  ObligationAlgebra obls;
  Universe u;

  Fix() {
    AlgebraSpec gs;
    gs.multiplicity_bound = 2;
    gs.terms = {t0("g")};
    gs.undefs = {mset({t0("g"), t0("g")})};
    guards = Algebra::build(gs);

    ObligationSpec os;
    os.base.multiplicity_bound = 2;
    os.base.terms = {t0("k")};
    os.base.undefs = {mset({t0("k"), t0("k")})};
    os.order = LayerOrder::build({"1"}, {});
    os.term_layer[t0("k")] = "1";
    obls = build_obligations(os);
    REQUIRE(obls.valid());

    u.vals = {0, 1, 2, 3};
    u.addrs = {1};
    u.n_rids = 1;
    u.level_max = 1;
    u.quant = {AVal::num(0), AVal::num(1), AVal::num(2), AVal::num(3)};

    RegionType rt;
    rt.name = "ex";
    rt.states = {{AVal::num(0)}, {AVal::num(1)}, {AVal::num(2)}, {AVal::num(3)}};  // a, b, c, d
    rt.guards = &guards;
    rt.obls = &obls;
    // reflexivity under every obligation frame, for every guard
    std::vector<ProtoTrans> refl;
    for (int s = 0; s < 4; ++s)
      for (int o = 0; o < obls.alg.size(); ++o) refl.push_back({s, o, s, o});
    const int g = *guards.element(mset({t0("g")}));
    rt.protocol.assign(static_cast<size_t>(guards.size()), refl);
    auto lic = frame_close(obls.alg, {{0, 0, 1, 0}, {1, 0, 2, 0}});
    auto& pg = rt.protocol[static_cast<size_t>(g)];
    pg.insert(pg.end(), lic.begin(), lic.end());
    u.types.push_back(std::move(rt));
  }

  int gid() const { return *guards.element(mset({t0("g")})); }
  int kid() const { return *obls.alg.element(mset({t0("k")})); }
};

template <class F>
WorldSet filter(const WorldSpace& s, F&& pred) {
  WorldSet out(s.worlds.size());
  for (size_t i = 0; i < s.worlds.size(); ++i)
    if (pred(s.worlds[i])) out.set(static_cast<int>(i));
  return out;
}

// worlds satisfying the region assertion ex^lvl_0(state)
WorldSet den_region(const WorldSpace& s, int lvl, int st) {
  return filter(s, [&](const World& w) {
    const RegionCell& c = w.regs[0];
    return c.type == 0 && c.level == lvl && c.state == st && s.is_unit(w);
  });
}

// worlds satisfying <g>_0 * ex^lvl_0(state)
WorldSet den_region_guard(const WorldSpace& s, int lvl, int st, int g) {
  return filter(s, [&](const World& w) {
    const RegionCell& c = w.regs[0];
    return c.type == 0 && c.level == lvl && c.state == st && c.guard == g &&
           w.heap.empty() && c.obl == 0;
  });
}

// install the cell interpretation: ex_r(s) holds address 1 storing s
void install_interp(WorldSpace& s) {
  for (int lvl = 0; lvl <= s.u->level_max; ++lvl)
    for (int st = 0; st < 4; ++st) {
      std::vector<int> ids;
      for (size_t i = 0; i < s.worlds.size(); ++i) {
        const World& w = s.worlds[i];
        if (w.heap.size() == 1 && w.heap[0] == std::pair<int64_t, int64_t>{1, st}) {
          bool unitish = true;
          for (const RegionCell& c : w.regs)
            if (c.type >= 0 && (c.guard != 0 || c.obl != 0)) unitish = false;
          if (unitish) ids.push_back(static_cast<int>(i));
        }
      }
      s.interp[{0, 0, lvl, st}] = ids;
    }
}

}  // namespace

TEST_CASE("world space enumeration and composition laws") {
  Fix f;
  const WorldSpace& s = f.u.space({});
  CHECK(s.worlds.size() > 100);

  // every world composes with a unit tailored to it, giving itself
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.worlds.size()) - 1);
  for (int n = 0; n < 200; ++n) {
    const int i = pick(rng);
    const World& w = s.worlds[static_cast<size_t>(i)];
    World unit = w;
    unit.heap.clear();
    for (RegionCell& c : unit.regs) {
      if (c.type < 0) continue;
      c.guard = 0;
      c.obl = 0;
      auto e = f.obls.alg.compose(w.regs[0].obl, w.regs[0].envobl);
      REQUIRE(e);
      c.envobl = *e;
    }
    REQUIRE(s.is_unit(unit));
    auto back = s.compose(w, unit);
    REQUIRE(back);
    CHECK(*back == w);
  }

  // commutativity and associativity on random triples (Kleene equality)
  for (int n = 0; n < 4000; ++n) {
    int a = pick(rng), b = pick(rng), c = pick(rng);
    auto ab = s.compose_ids(a, b);
    auto ba = s.compose_ids(b, a);
    CHECK(ab == ba);
    if (ab) {
      auto abc = s.compose_ids(*ab, c);
      auto bc = s.compose_ids(b, c);
      if (bc) {
        auto a_bc = s.compose_ids(a, *bc);
        CHECK(abc == a_bc);
      }
    }
  }
}

TEST_CASE("region assertions are duplicable, obligations are subjective") {
  Fix f;
  const WorldSpace& s = f.u.space({});

  WorldSet ra = den_region(s, 0, 0);
  CHECK(ra.count() > 0);
  CHECK(s.star(ra, ra) == ra);

  // local obligation k at region 0
  const int k = f.kid();
  WorldSet ceil_k = filter(s, [&](const World& w) {
    const RegionCell& c = w.regs[0];
    return c.type >= 0 && c.obl == k && c.guard == 0 && w.heap.empty();
  });
  // environment obligation: at least k assumed of the environment
  WorldSet floor_k = filter(s, [&](const World& w) {
    const RegionCell& c = w.regs[0];
    return c.type >= 0 && f.obls.alg.below(k, c.envobl) && s.is_unit(w);
  });
  CHECK(ceil_k.count() > 0);
  CHECK(floor_k.count() > 0);
  // holding an obligation is the same as holding it while knowing the
  // environment sees it as an environment obligation
  CHECK(s.star(ceil_k, floor_k) == ceil_k);
  // but two copies of the same obligation atom cannot coexist
  CHECK(s.star(ceil_k, ceil_k).count() == 0);
}

TEST_CASE("rely closure is a closure operator") {
  Fix f;
  const WorldSpace& s = f.u.space({});
  RelyCtx rc(s, {});

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(s.worlds.size()) - 1);
  for (int n = 0; n < 20; ++n) {
    WorldSet a(s.worlds.size()), b(s.worlds.size());
    for (int i = 0; i < 30; ++i) a.set(pick(rng));
    for (int i = 0; i < 30; ++i) b.set(pick(rng));
    b |= a;  // a ⊆ b

    WorldSet ca = rc.closure(a);
    WorldSet cb = rc.closure(b);
    CHECK(a.subset_of(ca));            // extensive
    CHECK(ca.subset_of(cb));           // monotone
    CHECK(rc.closure(ca) == ca);       // idempotent
  }
}

TEST_CASE("stability: an exclusive guard pins the region state") {
  Fix f;
  const WorldSpace& s = f.u.space({});
  RelyCtx rc(s, {});

  // owning g forbids environment interference: stable
  WorldSet guarded = den_region_guard(s, 0, 0, f.gid());
  CHECK(guarded.count() > 0);
  CHECK(!rc.stable_counterexample(rc.closure(guarded)).has_value());
  CHECK(rc.closure(guarded) == guarded);

  // the bare region assertion is open to interference: unstable
  WorldSet bare = den_region(s, 0, 0);
  auto cex = rc.stable_counterexample(bare);
  REQUIRE(cex.has_value());
  // the successor left the denotation by moving the abstract state
  CHECK(s.worlds[static_cast<size_t>(cex->second)].regs[0].state != 0);
}

TEST_CASE("environment obligation assumptions can always grow") {
  Fix f;
  const WorldSpace& s = f.u.space({});
  RelyCtx rc(s, {});
  const int k = f.kid();

  // {ε(r0) = 0} is not rely-closed: wr4 can raise it to k
  WorldSet eps0 = filter(s, [&](const World& w) {
    return w.regs[0].type >= 0 && w.regs[0].envobl == 0 && w.regs[0].obl == 0;
  });
  auto cex = rc.stable_counterexample(eps0);
  REQUIRE(cex.has_value());
  CHECK(s.worlds[static_cast<size_t>(cex->second)].regs[0].envobl == k);

  // the lower-bound reading {k ≼ ε(r0)} is rely-closed when we hold nothing
  WorldSet atleast = filter(s, [&](const World& w) {
    return w.regs[0].type >= 0 && w.regs[0].obl == 0 &&
           f.obls.alg.below(k, w.regs[0].envobl) && s.is_unit(w);
  });
  // wr1/wr2 can still change ε across transitions, but with the protocol
  // preserving frames and k otherwise untouched the set stays closed
  CHECK(!rc.stable_counterexample(atleast).has_value());
}

TEST_CASE("frame-preserving update: the worked guard example") {
  Fix f;
  WorldSpace& s = const_cast<WorldSpace&>(f.u.space({}));
  install_interp(s);
  RelyCtx rc(s, {});
  ReifyCache rf(s);

  const int g = f.gid();
  const Heap ha = {{1, 0}}, hb = {{1, 1}}, hc = {{1, 2}}, hd = {{1, 3}};

  WorldSet pa = den_region_guard(s, 0, 0, g);
  WorldSet pb = den_region_guard(s, 0, 1, g);
  WorldSet pc = den_region_guard(s, 0, 2, g);
  WorldSet pd = den_region_guard(s, 0, 3, g);

  // holding the guard, a ~> c is a valid plain update (two protocol steps)
  CHECK(frame_preserving_update(rc, rf, pa, pc, 1, 1, ha, hc, false));
  // ... but not a single atomic step
  std::string diag;
  CHECK(!frame_preserving_update(rc, rf, pa, pc, 1, 1, ha, hc, true, &diag));
  CHECK(diag.find("atomicity") != std::string::npos);
  // a ~> b is one protocol transition: also atomic
  CHECK(frame_preserving_update(rc, rf, pa, pb, 1, 1, ha, hb, true));
  // a ~> d is not justified by the protocol at all
  CHECK(!frame_preserving_update(rc, rf, pa, pd, 1, 1, ha, hd, false, &diag));

  // without the guard, the frame may own it and pin the state
  WorldSet qa = den_region(s, 0, 0);
  WorldSet qb = den_region(s, 0, 1);
  CHECK(!frame_preserving_update(rc, rf, qa, qb, 1, 1, ha, hb, false, &diag));
  CHECK(diag.find("frame") != std::string::npos);
}

TEST_CASE("view shifts: weakening holds, state change does not") {
  Fix f;
  WorldSpace& s = const_cast<WorldSpace&>(f.u.space({}));
  install_interp(s);
  RelyCtx rc(s, {});
  ReifyCache rf(s);

  WorldSet pa = den_region(s, 0, 0);
  WorldSet pb = den_region(s, 0, 1);
  WorldSet pab = pa;
  pab |= pb;

  CHECK(viewshift_check(rc, rf, pa, pa, 1, 1));
  CHECK(viewshift_check(rc, rf, pa, pab, 1, 1));
  std::string diag;
  CHECK(!viewshift_check(rc, rf, pa, pb, 1, 1, &diag));
  CHECK(!diag.empty());
}

TEST_CASE("atomicity tracking: delegated updates and safe pinning") {
  Fix f;
  AtomicityContext A;
  AtomEntry e;
  e.rid = 0;
  e.type = 0;
  e.live_layer = 0;
  e.X = {0, 1, 2};   // safe: a, b, c
  e.Xp = {2};        // good: c
  e.trrel = frame_close(f.obls.alg, {{0, 0, 2, 0}, {1, 0, 2, 0}});
  A.entries = {e};
  REQUIRE(!A.validate(f.u).has_value());

  const WorldSpace& s = f.u.space({0});
  RelyCtx rc(s, A);

  // a world with the update delegated (◇) at state a
  World w;
  w.heap = {};
  w.regs = {RegionCell{0, 0, 0, 0, 0, 0}};
  w.track = {ATrack::envpending()};
  int wi = s.id(w);
  REQUIRE(wi >= 0);

  bool saw_done = false, saw_d = false, saw_pending_change = false;
  WorldSet seed(s.worlds.size());
  seed.set(wi);
  WorldSet cl = rc.closure(seed);
  cl.for_each([&](int i) {
    const World& x = s.worlds[static_cast<size_t>(i)];
    if (x.track[0].k == ATrack::K::Done) {
      saw_done = true;
      CHECK(x.track[0].a2 == 2);  // the delegated update lands in the target
    }
    if (x.regs[0].state == 3) saw_d = true;
  });
  CHECK(saw_done);
  CHECK(!saw_d);  // d is outside the safe set and no transition reaches it

  // with the update still owned locally (◆), the state stays in the safe set
  w.track = {ATrack::pending()};
  wi = s.id(w);
  REQUIRE(wi >= 0);
  WorldSet seed2(s.worlds.size());
  seed2.set(wi);
  rc.closure(seed2).for_each([&](int i) {
    const World& x = s.worlds[static_cast<size_t>(i)];
    if (x.track[0].k == ATrack::K::Pending && x.regs[0].state == 3)
      saw_pending_change = true;
  });
  CHECK(!saw_pending_change);
}

TEST_CASE("reify requires a registered interpretation") {
  Fix f;
  const WorldSpace& s = f.u.space({});
  ReifyCache rf(s);
  World w;
  w.regs = {RegionCell{0, 0, 0, 0, 0, 0}};
  int wi = s.id(w);
  REQUIRE(wi >= 0);
  CHECK_THROWS_WITH_AS(rf.reify(wi, 1),
                       doctest::Contains("no region interpretation"),
                       std::runtime_error);
}
