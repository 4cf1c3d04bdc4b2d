#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "algebra/algebra.hpp"

namespace fc {

struct AssertError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Logical expressions over the valuation: integers, finite lists, and the
// usual arithmetic. Evaluation happens over the bounded value fragment.
struct Expr {
  enum class K { Num, Var, Add, Sub, Mul, Neg, List, Concat };
  K k = K::Num;
  int64_t num = 0;
  std::string var;
  std::vector<Expr> kids;

  static Expr n(int64_t v) {
    Expr e;
    e.k = K::Num;
    e.num = v;
    return e;
  }
  static Expr v(std::string name) {
    Expr e;
    e.k = K::Var;
    e.var = std::move(name);
    return e;
  }
};

using Valuation = std::map<std::string, AVal>;

AVal eval_expr(const Expr& e, const Valuation& env);
int64_t eval_num(const Expr& e, const Valuation& env);  // throws on lists

// Guard / obligation term with expression arguments, e.g. q([p, c], o + 1).
struct GTermExpr {
  std::string ctor;
  std::vector<Expr> args;
};

GTerm eval_gterm(const GTermExpr& t, const Valuation& env);

// Assertion AST. Sugar (=>, =>., forall, true, false) is expanded by the
// parser; the remaining alternatives mirror the satisfaction table.
struct Assertion {
  enum class K {
    Emp,      // emp
    Cmp,      // e1 op e2, op ∈ {=, !=, <, <=, >, >=}
    In,       // e in {…} / e in [a..b]
    Not,      // ~P
    And,      // P /\ Q
    Or,       // P \/ Q
    Exists,   // exists x. P
    Star,     // P * Q
    Wand,     // P -* Q (linted)
    PointsTo, // e |-> e
    Region,   // t^lvl_r(e…)
    Guard,    // <G>_r
    LocObl,   // ceil[O]_r
    EnvObl,   // floor[O]_r, shorthand [O]_r
    Track,    // r |=> pending / envpending / done(a, b)
    ZeroObl,  // zeroobl{r…}
    MinLay,   // minlay(r, layer)
  };
  K k = K::Emp;

  std::vector<Assertion> kids;  // subassertions
  std::string op;               // Cmp operator
  std::string type_name;        // Region
  std::string layer_name;       // MinLay
  std::string var;              // Exists binder
  int level = -1;               // Region level; -1 = unconstrained
  int track_kind = 0;           // 0 pending, 1 envpending, 2 done
  std::vector<Expr> es;         // general expression arguments
  std::vector<Expr> es2;        // Track done: second state tuple
  std::vector<int64_t> set_vals;  // In: the finite set
  std::vector<GTermExpr> terms; // Guard/LocObl/EnvObl term product
  Expr rid;                     // subscript region id expression
};

struct ParseResult {
  Assertion ast;
  std::vector<std::string> warnings;  // e.g. the -* lint
};

// Parses the assertion grammar (throws AssertError with position info).
ParseResult parse_assertion(const std::string& text);

// Renders the AST back to the concrete syntax (for diagnostics).
std::string assertion_str(const Assertion& a);

}  // namespace fc
