#include "model/world.hpp"

#include <algorithm>
#include <stdexcept>

namespace fc {

int RegionType::state_id(const std::vector<AVal>& s) const {
  for (size_t i = 0; i < states.size(); ++i)
    if (states[i] == s) return static_cast<int>(i);
  return -1;
}

bool World::heap_has(int64_t a) const {
  return heap_get(a).has_value();
}

std::optional<int64_t> World::heap_get(int64_t a) const {
  auto it = std::lower_bound(heap.begin(), heap.end(), a,
                             [](const auto& p, int64_t x) { return p.first < x; });
  if (it != heap.end() && it->first == a) return it->second;
  return std::nullopt;
}

int Universe::type_id(const std::string& name) const {
  for (size_t i = 0; i < types.size(); ++i)
    if (types[i].name == name) return static_cast<int>(i);
  throw std::runtime_error("unknown region type: " + name);
}

namespace {

// division table for a cancellative algebra: div[y][x] = the unique z with
// x = y * z, or -1 when no such element exists in the carrier
std::vector<std::vector<int>> make_div(const Algebra& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> div(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), -1));
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z)
      if (auto x = a.compose(y, z)) div[static_cast<size_t>(y)][static_cast<size_t>(*x)] = z;
  return div;
}

struct SpaceBuilder {
  const Universe& u;
  WorldSpace& s;

  void build() {
    for (const RegionType& rt : u.types)
      if (!s.div.count(&rt.obls->alg)) s.div.emplace(&rt.obls->alg, make_div(rt.obls->alg));

    // all cells one region slot can hold (same candidate list for each id)
    std::vector<RegionCell> cells;
    if (s.R.empty()) cells.push_back(RegionCell{});  // absent slot
    for (int t = 0; t < static_cast<int>(u.types.size()); ++t) {
      const RegionType& rt = u.types[static_cast<size_t>(t)];
      for (int lv = 0; lv <= u.level_max; ++lv)
        for (int st = 0; st < static_cast<int>(rt.states.size()); ++st)
          for (int g = 0; g < static_cast<int>(rt.guards->size()); ++g)
            for (int o = 0; o < static_cast<int>(rt.obls->alg.size()); ++o)
              for (int e = 0; e < static_cast<int>(rt.obls->alg.size()); ++e) {
                if (!rt.obls->alg.compose(o, e)) continue;  // θ # ε
                cells.push_back(RegionCell{t, lv, st, g, o, e});
              }
    }
    std::vector<RegionCell> absent_or_cell = cells;
    if (!s.R.empty()) {
      absent_or_cell.insert(absent_or_cell.begin(), RegionCell{});
    }

    const auto heaps = s.all_heaps();
    World w;
    w.regs.assign(static_cast<size_t>(u.n_rids), RegionCell{});
    w.track.assign(s.R.size(), ATrack{});

    size_t limit = 4'000'000;
    auto emit = [&]() {
      if (s.worlds.size() >= limit)
        throw std::runtime_error("universe too large: more than " +
                                 std::to_string(limit) + " worlds");
      s.worlds.push_back(w);
    };

    // choose a tracking value for each tracked id, then emit
    auto fill_track = [&](auto&& self, size_t k) -> void {
      if (k == s.R.size()) return emit();
      const RegionCell& c = w.regs[static_cast<size_t>(s.R[k])];
      const auto& sts = u.types[static_cast<size_t>(c.type)].states;
      w.track[k] = ATrack::pending();
      self(self, k + 1);
      w.track[k] = ATrack::envpending();
      self(self, k + 1);
      for (int a = 0; a < static_cast<int>(sts.size()); ++a)
        for (int b = 0; b < static_cast<int>(sts.size()); ++b) {
          w.track[k] = ATrack::done(a, b);
          self(self, k + 1);
        }
    };

    auto fill_regs = [&](auto&& self, int rid) -> void {
      if (rid == u.n_rids) return fill_track(fill_track, 0);
      const bool tracked = s.track_pos(rid) >= 0;
      for (const RegionCell& c : tracked ? cells : absent_or_cell) {
        w.regs[static_cast<size_t>(rid)] = c;
        self(self, rid + 1);
      }
    };

    for (const auto& h : heaps) {
      w.heap = h;
      fill_regs(fill_regs, 0);
    }

    std::sort(s.worlds.begin(), s.worlds.end());

    std::map<std::vector<int>, int> sig_ids;
    s.sig.resize(s.worlds.size());
    std::vector<int> key(static_cast<size_t>(u.n_rids) * 3);
    for (size_t i = 0; i < s.worlds.size(); ++i) {
      for (int r = 0; r < u.n_rids; ++r) {
        const RegionCell& c = s.worlds[i].regs[static_cast<size_t>(r)];
        key[static_cast<size_t>(r) * 3] = c.type;
        key[static_cast<size_t>(r) * 3 + 1] = c.level;
        key[static_cast<size_t>(r) * 3 + 2] = c.state;
      }
      auto [it, fresh] = sig_ids.emplace(key, static_cast<int>(sig_ids.size()));
      if (fresh) s.sig_members.emplace_back();
      s.sig[i] = it->second;
      s.sig_members[static_cast<size_t>(it->second)].push_back(static_cast<int>(i));
    }
  }
};

}  // namespace

const WorldSpace& Universe::space(const std::vector<int>& R) const {
  auto it = spaces_.find(R);
  if (it != spaces_.end()) return *it->second;
  auto sp = std::make_unique<WorldSpace>();
  sp->u = this;
  sp->R = R;
  SpaceBuilder b{*this, *sp};
  b.build();
  if (interp_fn) {
    for (size_t t = 0; t < types.size(); ++t)
      for (int r = 0; r < n_rids; ++r)
        for (int lvl = 0; lvl <= level_max; ++lvl)
          for (int st = 0; st < static_cast<int>(types[t].states.size()); ++st)
            sp->interp[{static_cast<int>(t), r, lvl, st}] =
                interp_fn(*sp, static_cast<int>(t), r, lvl, st);
  }
  it = spaces_.emplace(R, std::move(sp)).first;
  return *it->second;
}

int WorldSpace::id(const World& w) const {
  auto it = std::lower_bound(worlds.begin(), worlds.end(), w);
  if (it != worlds.end() && *it == w) return static_cast<int>(it - worlds.begin());
  return -1;
}

int WorldSpace::track_pos(int rid) const {
  for (size_t i = 0; i < R.size(); ++i)
    if (R[i] == rid) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<std::pair<int64_t, int64_t>>> WorldSpace::all_heaps() const {
  std::vector<std::vector<std::pair<int64_t, int64_t>>> out;
  std::vector<std::pair<int64_t, int64_t>> cur;
  auto rec = [&](auto&& self, size_t k) -> void {
    if (k == u->addrs.size()) {
      out.push_back(cur);
      return;
    }
    self(self, k + 1);  // address absent
    for (int64_t v : u->vals) {
      cur.emplace_back(u->addrs[k], v);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  for (auto& h : out) std::sort(h.begin(), h.end());
  return out;
}

std::optional<World> WorldSpace::compose(const World& a, const World& b) const {
  World out;

  // heaps must be disjoint; merge
  out.heap.reserve(a.heap.size() + b.heap.size());
  {
    size_t i = 0, j = 0;
    while (i < a.heap.size() && j < b.heap.size()) {
      if (a.heap[i].first == b.heap[j].first) return std::nullopt;
      if (a.heap[i].first < b.heap[j].first)
        out.heap.push_back(a.heap[i++]);
      else
        out.heap.push_back(b.heap[j++]);
    }
    for (; i < a.heap.size(); ++i) out.heap.push_back(a.heap[i]);
    for (; j < b.heap.size(); ++j) out.heap.push_back(b.heap[j]);
  }

  // region maps must agree on presence, type, level and state
  out.regs.resize(a.regs.size());
  for (size_t r = 0; r < a.regs.size(); ++r) {
    const RegionCell& ca = a.regs[r];
    const RegionCell& cb = b.regs[r];
    if (ca.type != cb.type || ca.level != cb.level || ca.state != cb.state)
      return std::nullopt;
    RegionCell c = ca;
    if (ca.type >= 0) {
      const RegionType& rt = u->types[static_cast<size_t>(ca.type)];
      auto g = rt.guards->compose(ca.guard, cb.guard);
      if (!g) return std::nullopt;
      // subjective obligation composition: find the common remainder e with
      // env_a = obl_b * e and env_b = obl_a * e (unique by cancellativity)
      auto t = rt.obls->alg.compose(ca.obl, cb.obl);
      if (!t) return std::nullopt;
      const auto& dv = div.at(&rt.obls->alg);
      const int e = dv[static_cast<size_t>(cb.obl)][static_cast<size_t>(ca.envobl)];
      if (e < 0) return std::nullopt;
      auto x2 = rt.obls->alg.compose(ca.obl, e);
      if (!x2 || *x2 != cb.envobl) return std::nullopt;
      if (!rt.obls->alg.compose(*t, e)) return std::nullopt;  // θ # ε at bound
      c.guard = *g;
      c.obl = *t;
      c.envobl = e;
    }
    out.regs[r] = c;
  }

  // atomicity tracking composes pointwise
  out.track.resize(a.track.size());
  for (size_t k = 0; k < a.track.size(); ++k) {
    auto t = atrack_compose(a.track[k], b.track[k]);
    if (!t) return std::nullopt;
    out.track[k] = *t;
  }
  return out;
}

std::optional<int> WorldSpace::compose_ids(int a, int b) const {
  auto w = compose(worlds[static_cast<size_t>(a)], worlds[static_cast<size_t>(b)]);
  if (!w) return std::nullopt;
  int i = id(*w);
  if (i < 0) return std::nullopt;
  return i;
}

WorldSet WorldSpace::star(const WorldSet& p, const WorldSet& q) const {
  WorldSet out(worlds.size());
  p.for_each([&](int a) {
    for (int b : sig_members[static_cast<size_t>(sig[static_cast<size_t>(a)])]) {
      if (!q.test(b)) continue;
      if (auto c = compose_ids(a, b)) out.set(*c);
    }
  });
  return out;
}

std::string WorldSpace::describe(int wi) const {
  const World& w = worlds[static_cast<size_t>(wi)];
  std::string out = "world #" + std::to_string(wi) + " {heap:[";
  for (size_t i = 0; i < w.heap.size(); ++i)
    out += (i ? ", " : "") + std::to_string(w.heap[i].first) + "->" +
           std::to_string(w.heap[i].second);
  out += "]";
  for (int r = 0; r < u->n_rids; ++r) {
    const RegionCell& c = w.regs[static_cast<size_t>(r)];
    if (c.type < 0) continue;
    const RegionType& rt = u->type(c.type);
    std::string st = "(";
    const auto& tup = rt.states[static_cast<size_t>(c.state)];
    for (size_t i = 0; i < tup.size(); ++i)
      st += (i ? "," : "") + tup[i].str();
    st += ")";
    out += ", r" + std::to_string(r) + ":" + rt.name + "^" +
           std::to_string(c.level) + st + " guard=" + rt.guards->str(c.guard) +
           " obl=" + rt.obls->alg.str(c.obl) + " env=" + rt.obls->alg.str(c.envobl);
    int tp = track_pos(r);
    if (tp >= 0) out += " track=" + w.track[static_cast<size_t>(tp)].str();
  }
  out += "}";
  return out;
}

bool WorldSpace::is_unit(const World& w) const {
  if (!w.heap.empty()) return false;
  for (const RegionCell& c : w.regs) {
    if (c.type < 0) continue;
    if (c.guard != 0 || c.obl != 0) return false;
  }
  for (const ATrack& t : w.track)
    if (t.k == ATrack::K::Pending) return false;
  return true;
}

}  // namespace fc
