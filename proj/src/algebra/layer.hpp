#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra/algebra.hpp"

namespace fc {

// A finite strict partial order of layer points. "bot" and "top" always
// exist and bound every other point strictly.
class LayerOrder {
 public:
  static LayerOrder build(const std::vector<std::string>& points,
                          const std::vector<std::pair<std::string, std::string>>& lt_edges);

  int id(const std::string& name) const;  // throws AlgebraError on unknown
  const std::string& name(int i) const { return names_[i]; }
  int size() const { return static_cast<int>(names_.size()); }
  bool lt(int a, int b) const { return a != b && lt_[a][b]; }
  bool le(int a, int b) const { return a == b || lt_[a][b]; }
  std::optional<int> meet(int a, int b) const;  // greatest lower bound, if any
  int bot() const { return bot_; }
  int top() const { return top_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> ids_;
  std::vector<std::vector<char>> lt_;
  int bot_ = 0, top_ = 0;
};

struct ObligationSpec {
  AlgebraSpec base;
  LayerOrder order;
  std::map<GTerm, std::string> term_layer;  // every base term must be mapped
};

struct LawFailure {
  std::string law;
  std::string counterexample;
};

// Obligation carrier with a layer for every element: the layer of a
// composite is the meet of its parts' layers; the unit sits at top.
struct ObligationAlgebra {
  Algebra alg;
  LayerOrder order;
  std::vector<int> lay;        // per element id
  std::vector<int> atoms;      // computed by the PCM characterization
  std::vector<LawFailure> failures;  // empty = all laws hold

  bool valid() const { return failures.empty(); }
};

ObligationAlgebra build_obligations(const ObligationSpec& spec);

}  // namespace fc
