#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fc {

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ground argument values inside guard/obligation terms.
struct AVal {
  bool is_list = false;
  int64_t n = 0;
  std::vector<int64_t> xs;
  static AVal num(int64_t v) { return {false, v, {}}; }
  static AVal list(std::vector<int64_t> v) { return {true, 0, std::move(v)}; }
  friend auto operator<=>(const AVal&, const AVal&) = default;
  std::string str() const;
};

struct GTerm {
  std::string ctor;
  std::vector<AVal> args;
  friend auto operator<=>(const GTerm&, const GTerm&) = default;
  std::string str() const;
};

// Multisets of ground terms, kept sorted.
using MSet = std::vector<GTerm>;
MSet mset(std::vector<GTerm> ts);
std::string mset_str(const MSet& m);
bool submset(const MSet& small, const MSet& big);
MSet mset_union(const MSet& a, const MSet& b);
std::optional<MSet> mset_minus(const MSet& m, const MSet& sub);

struct AlgebraSpec {
  size_t multiplicity_bound = 3;            // max carrier multiset cardinality
  // congruence chains between bounded multisets may pass through slightly
  // larger ones (an axiom {x} = {y,z} peaks one above the multisets it
  // relates), so the closure runs over multisets up to bound+slack
  size_t closure_slack = 1;
  std::vector<GTerm> terms;                 // ground term universe
  std::vector<std::pair<MSet, MSet>> eqs;   // ground congruence equations
  std::vector<MSet> undefs;                 // multisets declared undefined
};

// A composition in the bounded model either resolves to an element, hits a
// multiset declared undefined, or leaves the representable fragment (its
// product has no member within the multiplicity bound). The last case is a
// limitation of the bound, not a fact about the modelled algebra.
enum class Compose { Defined, Undefined, OutOfFragment };

// A finite PCM: bounded multisets of ground terms, quotiented by the
// congruence the equations generate (within the closure), with everything
// above an undefined multiset removed. Element 0 is the unit (empty
// multiset); composition is multiset union on representatives.
class Algebra {
 public:
  static Algebra build(const AlgebraSpec& spec);

  int size() const { return static_cast<int>(rep_.size()); }
  int unit() const { return 0; }
  size_t bound() const { return bound_; }  // carrier multiplicity bound
  std::optional<int> compose(int a, int b) const;
  Compose compose_status(int a, int b) const;
  bool below(int a, int b) const;              // ∃z. b = a • z
  std::optional<int> element(const MSet& m) const;
  const MSet& rep(int id) const { return rep_[id]; }
  std::string str(int id) const { return mset_str(rep_[id]); }
  // every surviving bounded multiset together with its element id
  const std::map<MSet, int>& members() const { return index_; }

 private:
  size_t bound_ = 0;
  std::vector<MSet> rep_;                      // canonical least member per class
  std::map<MSet, int> index_;                  // every surviving bounded multiset
  std::vector<std::vector<int>> table_;        // -1 undefined, -2 out of fragment
  std::vector<std::vector<char>> below_;
};

// Checks associativity / commutativity / identity exhaustively (up to
// `triple_cap` elements for the associativity triple loop) and returns a
// counterexample description, or nullopt when all laws hold. Associativity
// is Kleene equality, skipping triples where either association leaves the
// representable fragment (those are inconclusive at this bound, not wrong).
std::optional<std::string> check_pcm_laws(const Algebra& a, int triple_cap = 300);

// AObl: x ≼ y•z implies x ≼ y or x ≼ z (and x is not the unit).
std::vector<int> compute_atoms(const Algebra& a);

}  // namespace fc
