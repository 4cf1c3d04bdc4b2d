#include "algebra/atrack.hpp"

namespace fc {

std::string ATrack::str() const {
  switch (k) {
    case K::Pending: return "pending";
    case K::EnvPending: return "envpending";
    case K::Done:
      return "done(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
  }
  return "?";
}

std::optional<ATrack> atrack_compose(const ATrack& x, const ATrack& y) {
  using K = ATrack::K;
  if (x.k == K::EnvPending && y.k == K::EnvPending) return x;
  if (x.k == K::Pending && y.k == K::EnvPending) return x;
  if (x.k == K::EnvPending && y.k == K::Pending) return y;
  if (x.k == K::Done && y.k == K::Done && x == y) return x;
  return std::nullopt;
}

}  // namespace fc
