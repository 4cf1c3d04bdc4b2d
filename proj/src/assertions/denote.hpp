#pragma once
#include "assertions/assert_ast.hpp"
#include "model/world.hpp"

namespace fc {

// Satisfaction-table denotation: the set of worlds of `s` satisfying the
// assertion under the valuation. ∃ ranges over the universe's declared
// value fragment. Throws AssertError when a guard/obligation term product
// exceeds the bounded algebra fragment (a bound limitation, not a fact).
WorldSet denote(const WorldSpace& s, const Assertion& a, const Valuation& env);

}  // namespace fc
