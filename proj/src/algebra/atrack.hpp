#pragma once
#include <compare>
#include <optional>
#include <string>

namespace fc {

// Atomicity tracking values for one region: the local thread still has its
// update pending, the environment may perform it, or it happened with the
// recorded abstract states.
struct ATrack {
  enum class K { Pending, EnvPending, Done };
  K k = K::EnvPending;
  int a1 = -1, a2 = -1;  // Done: before/after abstract-state ids

  static ATrack pending() { return {K::Pending, -1, -1}; }
  static ATrack envpending() { return {K::EnvPending, -1, -1}; }
  static ATrack done(int a1, int a2) { return {K::Done, a1, a2}; }
  friend auto operator<=>(const ATrack&, const ATrack&) = default;
  std::string str() const;
};

// ◆•◇ = ◆, ◇•◇ = ◇, (a,b)•(a,b) = (a,b); everything else undefined.
// The units are ◇ together with every pair.
std::optional<ATrack> atrack_compose(const ATrack& x, const ATrack& y);

}  // namespace fc
