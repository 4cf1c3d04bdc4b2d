#include <algorithm>
#include <cctype>
#include <cstring>

#include "assertions/assert_ast.hpp"

namespace fc {

AVal eval_expr(const Expr& e, const Valuation& env) {
  switch (e.k) {
    case Expr::K::Num:
      return AVal::num(e.num);
    case Expr::K::Var: {
      auto it = env.find(e.var);
      if (it == env.end()) throw AssertError("unbound logical variable: " + e.var);
      return it->second;
    }
    case Expr::K::Neg: {
      AVal a = eval_expr(e.kids[0], env);
      if (a.is_list) throw AssertError("arithmetic on a list value");
      return AVal::num(-a.n);
    }
    case Expr::K::Add:
    case Expr::K::Sub:
    case Expr::K::Mul: {
      AVal a = eval_expr(e.kids[0], env), b = eval_expr(e.kids[1], env);
      if (a.is_list || b.is_list) throw AssertError("arithmetic on a list value");
      int64_t r = e.k == Expr::K::Add   ? a.n + b.n
                  : e.k == Expr::K::Sub ? a.n - b.n
                                        : a.n * b.n;
      return AVal::num(r);
    }
    case Expr::K::List: {
      std::vector<int64_t> xs;
      for (const Expr& kid : e.kids) {
        AVal v = eval_expr(kid, env);
        if (v.is_list) throw AssertError("nested lists are not supported");
        xs.push_back(v.n);
      }
      return AVal::list(std::move(xs));
    }
    case Expr::K::Concat: {
      AVal a = eval_expr(e.kids[0], env), b = eval_expr(e.kids[1], env);
      std::vector<int64_t> xs = a.is_list ? a.xs : std::vector<int64_t>{a.n};
      const std::vector<int64_t> ys = b.is_list ? b.xs : std::vector<int64_t>{b.n};
      xs.insert(xs.end(), ys.begin(), ys.end());
      return AVal::list(std::move(xs));
    }
  }
  throw AssertError("bad expression");
}

int64_t eval_num(const Expr& e, const Valuation& env) {
  AVal v = eval_expr(e, env);
  if (v.is_list) throw AssertError("expected a number, got a list");
  return v.n;
}

GTerm eval_gterm(const GTermExpr& t, const Valuation& env) {
  GTerm out;
  out.ctor = t.ctor;
  for (const Expr& a : t.args) out.args.push_back(eval_expr(a, env));
  return out;
}

namespace {

struct Tok {
  enum class T { Ident, Num, Sym, End };
  T t = T::End;
  std::string s;
  int64_t n = 0;
  size_t pos = 0;
};

// identifiers are alphanumeric only: '_' is always its own token, so the
// subscripted forms <G>_r, [O]_r, t^1_r(...) tokenize uniformly
struct Lexer {
  std::string src;
  size_t i = 0;
  Tok cur;

  explicit Lexer(std::string s) : src(std::move(s)) { next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw AssertError(msg + " at offset " + std::to_string(cur.pos) + " in assertion");
  }

  void next() {
    while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    cur.pos = i;
    if (i >= src.size()) {
      cur.t = Tok::T::End;
      cur.s.clear();
      return;
    }
    char c = src[i];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isalnum(static_cast<unsigned char>(src[j]))) ++j;
      cur.t = Tok::T::Ident;
      cur.s = src.substr(i, j - i);
      i = j;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      cur.t = Tok::T::Num;
      cur.s = src.substr(i, j - i);
      cur.n = std::stoll(cur.s);
      i = j;
      return;
    }
    static const char* multi[] = {"|->", "|=>", "=>.", "-*", "=>", "!=", "<=",
                                  ">=", "\\/", "/\\", "++", ".."};
    for (const char* m : multi) {
      size_t len = std::strlen(m);
      if (src.compare(i, len, m) == 0) {
        cur.t = Tok::T::Sym;
        cur.s = m;
        i += len;
        return;
      }
    }
    cur.t = Tok::T::Sym;
    cur.s = std::string(1, c);
    ++i;
  }

  bool is(const std::string& s) const {
    return (cur.t == Tok::T::Sym || cur.t == Tok::T::Ident) && cur.s == s;
  }
  bool eat(const std::string& s) {
    if (!is(s)) return false;
    next();
    return true;
  }
  void expect(const std::string& s) {
    if (!eat(s)) fail("expected '" + s + "', found '" + cur.s + "'");
  }
  std::string ident() {
    if (cur.t != Tok::T::Ident) fail("expected an identifier, found '" + cur.s + "'");
    std::string s = cur.s;
    next();
    return s;
  }
};

struct Parser {
  Lexer lx;
  std::vector<std::string>* warnings;

  // ---- expressions ----
  Expr expr() { return add(); }

  Expr add() {
    Expr e = mul();
    for (;;) {
      if (lx.eat("+")) {
        Expr r = mul();
        Expr n;
        n.k = Expr::K::Add;
        n.kids = {std::move(e), std::move(r)};
        e = std::move(n);
      } else if (lx.eat("-")) {
        Expr r = mul();
        Expr n;
        n.k = Expr::K::Sub;
        n.kids = {std::move(e), std::move(r)};
        e = std::move(n);
      } else if (lx.eat("++")) {
        Expr r = mul();
        Expr n;
        n.k = Expr::K::Concat;
        n.kids = {std::move(e), std::move(r)};
        e = std::move(n);
      } else {
        return e;
      }
    }
  }

  Expr mul() {
    Expr e = unary();
    while (lx.eat("*")) {
      Expr r = unary();
      Expr n;
      n.k = Expr::K::Mul;
      n.kids = {std::move(e), std::move(r)};
      e = std::move(n);
    }
    return e;
  }

  Expr unary() {
    if (lx.eat("-")) {
      Expr n;
      n.k = Expr::K::Neg;
      n.kids = {unary()};
      return n;
    }
    return primary();
  }

  Expr primary() {
    if (lx.cur.t == Tok::T::Num) {
      Expr e = Expr::n(lx.cur.n);
      lx.next();
      return e;
    }
    if (lx.cur.t == Tok::T::Ident) return Expr::v(lx.ident());
    if (lx.eat("(")) {
      Expr e = expr();
      lx.expect(")");
      return e;
    }
    if (lx.eat("[")) {  // list literal
      Expr e;
      e.k = Expr::K::List;
      if (!lx.is("]")) {
        e.kids.push_back(expr());
        while (lx.eat(",")) e.kids.push_back(expr());
      }
      lx.expect("]");
      return e;
    }
    lx.fail("expected an expression, found '" + lx.cur.s + "'");
  }

  // guard/obligation term: ctor or ctor(e, …)
  GTermExpr gterm() {
    GTermExpr t;
    t.ctor = lx.ident();
    if (lx.eat("(")) {
      if (!lx.is(")")) {
        t.args.push_back(expr());
        while (lx.eat(",")) t.args.push_back(expr());
      }
      lx.expect(")");
    }
    return t;
  }

  // product of terms: 0 (empty) or t1 * t2 * …
  std::vector<GTermExpr> gterms() {
    std::vector<GTermExpr> ts;
    if (lx.cur.t == Tok::T::Num && lx.cur.n == 0) {
      lx.next();
      return ts;
    }
    ts.push_back(gterm());
    while (lx.eat("*")) ts.push_back(gterm());
    return ts;
  }

  Expr subscript_rid() {
    lx.expect("_");
    return primary();
  }

  // state tuple: (e, …) or a single expression
  std::vector<Expr> tuple() {
    std::vector<Expr> out;
    if (lx.eat("(")) {
      out.push_back(expr());
      while (lx.eat(",")) out.push_back(expr());
      lx.expect(")");
    } else {
      out.push_back(expr());
    }
    return out;
  }

  // ---- assertions ----
  Assertion assertion() { return impl(); }

  Assertion impl() {
    Assertion l = wand();
    if (lx.eat("=>.")) {
      // P =>. Q  ≡  (¬P ∧ emp) ∨ Q, for pure P
      Assertion q = impl();
      Assertion np;
      np.k = Assertion::K::Not;
      np.kids = {l};
      Assertion andemp;
      andemp.k = Assertion::K::And;
      andemp.kids = {std::move(np), Assertion{}};  // Emp default
      Assertion o;
      o.k = Assertion::K::Or;
      o.kids = {std::move(andemp), std::move(q)};
      return o;
    }
    if (lx.eat("=>")) {
      Assertion q = impl();
      Assertion np;
      np.k = Assertion::K::Not;
      np.kids = {std::move(l)};
      Assertion o;
      o.k = Assertion::K::Or;
      o.kids = {std::move(np), std::move(q)};
      return o;
    }
    return l;
  }

  Assertion wand() {
    Assertion l = disj();
    if (lx.eat("-*")) {
      warnings->push_back(
          "-* denotation quantifies over the whole universe; expect cost");
      Assertion r = wand();
      Assertion n;
      n.k = Assertion::K::Wand;
      n.kids = {std::move(l), std::move(r)};
      return n;
    }
    return l;
  }

  Assertion disj() {
    Assertion l = conj();
    while (lx.eat("\\/")) {
      Assertion r = conj();
      Assertion n;
      n.k = Assertion::K::Or;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  Assertion conj() {
    Assertion l = sep();
    while (lx.eat("/\\")) {
      Assertion r = sep();
      Assertion n;
      n.k = Assertion::K::And;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  Assertion sep() {
    Assertion l = atom();
    while (lx.eat("*")) {
      Assertion r = atom();
      Assertion n;
      n.k = Assertion::K::Star;
      n.kids = {std::move(l), std::move(r)};
      l = std::move(n);
    }
    return l;
  }

  Assertion atom() {
    if (lx.eat("~")) {
      Assertion n;
      n.k = Assertion::K::Not;
      n.kids = {atom()};
      return n;
    }
    if (lx.is("exists") || lx.is("forall")) {
      const bool uni = lx.cur.s == "forall";
      lx.next();
      std::vector<std::string> vars{lx.ident()};
      while (lx.eat(",")) vars.push_back(lx.ident());
      lx.expect(".");
      Assertion body = impl();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        if (uni) {
          Assertion nb;
          nb.k = Assertion::K::Not;
          nb.kids = {std::move(body)};
          Assertion ex;
          ex.k = Assertion::K::Exists;
          ex.var = *it;
          ex.kids = {std::move(nb)};
          Assertion n;
          n.k = Assertion::K::Not;
          n.kids = {std::move(ex)};
          body = std::move(n);
        } else {
          Assertion ex;
          ex.k = Assertion::K::Exists;
          ex.var = *it;
          ex.kids = {std::move(body)};
          body = std::move(ex);
        }
      }
      return body;
    }
    if (lx.eat("emp")) return Assertion{};
    if (lx.eat("true")) {
      Assertion n;
      n.k = Assertion::K::Cmp;
      n.op = "=";
      n.es = {Expr::n(0), Expr::n(0)};
      return n;
    }
    if (lx.eat("false")) {
      Assertion n;
      n.k = Assertion::K::Cmp;
      n.op = "=";
      n.es = {Expr::n(0), Expr::n(1)};
      return n;
    }
    if (lx.eat("<")) {  // guard assertion <G>_r
      Assertion n;
      n.k = Assertion::K::Guard;
      n.terms = gterms();
      lx.expect(">");
      n.rid = subscript_rid();
      return n;
    }
    if (lx.is("ceil") || lx.is("floor")) {
      const bool loc = lx.cur.s == "ceil";
      lx.next();
      lx.expect("[");
      Assertion n;
      n.k = loc ? Assertion::K::LocObl : Assertion::K::EnvObl;
      n.terms = gterms();
      lx.expect("]");
      n.rid = subscript_rid();
      return n;
    }
    if (lx.is("[")) {  // shorthand: [O]_r is the environment obligation
      // disambiguate from a list-expression head by scanning for "]_"
      size_t save_i = lx.i;
      Tok save_tok = lx.cur;
      lx.next();
      Assertion n;
      n.k = Assertion::K::EnvObl;
      bool ok = true;
      try {
        n.terms = gterms();
      } catch (const AssertError&) {
        ok = false;
      }
      if (ok && lx.is("]")) {
        lx.next();
        if (lx.is("_")) {
          n.rid = subscript_rid();
          return n;
        }
      }
      lx.i = save_i;
      lx.cur = save_tok;
    }
    if (lx.eat("zeroobl")) {
      lx.expect("{");
      Assertion n;
      n.k = Assertion::K::ZeroObl;
      n.es.push_back(expr());
      while (lx.eat(",")) n.es.push_back(expr());
      lx.expect("}");
      return n;
    }
    if (lx.eat("minlay")) {
      lx.expect("(");
      Assertion n;
      n.k = Assertion::K::MinLay;
      n.es.push_back(expr());
      lx.expect(",");
      n.layer_name = lx.ident();
      lx.expect(")");
      return n;
    }
    // region assertion: ident '^'? '_' rid '(' … ')'
    if (lx.cur.t == Tok::T::Ident) {
      // lookahead: region if the identifier is followed by ^ or _
      size_t save_i = lx.i;
      Tok save_tok = lx.cur;
      std::string name = lx.ident();
      if (lx.is("^") || lx.is("_")) {
        Assertion n;
        n.k = Assertion::K::Region;
        n.type_name = name;
        if (lx.eat("^")) {
          if (lx.cur.t != Tok::T::Num) lx.fail("expected a level literal");
          n.level = static_cast<int>(lx.cur.n);
          lx.next();
        }
        n.rid = subscript_rid();
        lx.expect("(");
        n.es.push_back(expr());
        while (lx.eat(",")) n.es.push_back(expr());
        lx.expect(")");
        return n;
      }
      lx.i = save_i;
      lx.cur = save_tok;
    }
    if (lx.eat("(")) {
      Assertion n = impl();
      lx.expect(")");
      return n;
    }
    // fall through: expression followed by a relation
    Expr e = expr();
    if (lx.eat("|->")) {
      Assertion n;
      n.k = Assertion::K::PointsTo;
      n.es = {std::move(e), expr()};
      return n;
    }
    if (lx.eat("|=>")) {
      Assertion n;
      n.k = Assertion::K::Track;
      n.rid = std::move(e);
      if (lx.eat("pending")) {
        n.track_kind = 0;
      } else if (lx.eat("envpending")) {
        n.track_kind = 1;
      } else {
        lx.expect("done");
        n.track_kind = 2;
        lx.expect("(");
        n.es = tuple();
        lx.expect(",");
        n.es2 = tuple();
        lx.expect(")");
      }
      return n;
    }
    if (lx.eat("in")) {
      Assertion n;
      n.k = Assertion::K::In;
      n.es = {std::move(e)};
      if (lx.eat("{")) {
        n.set_vals.push_back(eval_num(expr(), {}));
        while (lx.eat(",")) n.set_vals.push_back(eval_num(expr(), {}));
        lx.expect("}");
      } else {
        lx.expect("[");
        int64_t lo = eval_num(expr(), {});
        lx.expect("..");
        int64_t hi = eval_num(expr(), {});
        lx.expect("]");
        for (int64_t v = lo; v <= hi; ++v) n.set_vals.push_back(v);
      }
      std::sort(n.set_vals.begin(), n.set_vals.end());
      return n;
    }
    for (const char* op : {"=", "!=", "<=", ">=", "<", ">"}) {
      if (lx.eat(op)) {
        Assertion n;
        n.k = Assertion::K::Cmp;
        n.op = op;
        n.es = {std::move(e), expr()};
        return n;
      }
    }
    lx.fail("expected a relation after expression, found '" + lx.cur.s + "'");
  }
};

}  // namespace

ParseResult parse_assertion(const std::string& text) {
  ParseResult out;
  Parser p{Lexer(text), &out.warnings};
  out.ast = p.assertion();
  if (p.lx.cur.t != Tok::T::End)
    p.lx.fail("trailing input: '" + p.lx.cur.s + "'");
  return out;
}

namespace {

std::string expr_str(const Expr& e) {
  switch (e.k) {
    case Expr::K::Num:
      return std::to_string(e.num);
    case Expr::K::Var:
      return e.var;
    case Expr::K::Neg:
      return "-" + expr_str(e.kids[0]);
    case Expr::K::Add:
      return "(" + expr_str(e.kids[0]) + " + " + expr_str(e.kids[1]) + ")";
    case Expr::K::Sub:
      return "(" + expr_str(e.kids[0]) + " - " + expr_str(e.kids[1]) + ")";
    case Expr::K::Mul:
      return "(" + expr_str(e.kids[0]) + " * " + expr_str(e.kids[1]) + ")";
    case Expr::K::Concat:
      return "(" + expr_str(e.kids[0]) + " ++ " + expr_str(e.kids[1]) + ")";
    case Expr::K::List: {
      std::string s = "[";
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) s += ", ";
        s += expr_str(e.kids[i]);
      }
      return s + "]";
    }
  }
  return "?";
}

std::string gterm_str(const GTermExpr& t) {
  if (t.args.empty()) return t.ctor;
  std::string s = t.ctor + "(";
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i) s += ", ";
    s += expr_str(t.args[i]);
  }
  return s + ")";
}

std::string gterms_str(const std::vector<GTermExpr>& ts) {
  if (ts.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i) s += " * ";
    s += gterm_str(ts[i]);
  }
  return s;
}

std::string tuple_str(const std::vector<Expr>& es) {
  std::string s = "(";
  for (size_t i = 0; i < es.size(); ++i) {
    if (i) s += ", ";
    s += expr_str(es[i]);
  }
  return s + ")";
}

}  // namespace

std::string assertion_str(const Assertion& a) {
  using K = Assertion::K;
  switch (a.k) {
    case K::Emp:
      return "emp";
    case K::Cmp:
      return expr_str(a.es[0]) + " " + a.op + " " + expr_str(a.es[1]);
    case K::In: {
      std::string s = expr_str(a.es[0]) + " in {";
      for (size_t i = 0; i < a.set_vals.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(a.set_vals[i]);
      }
      return s + "}";
    }
    case K::Not:
      return "~(" + assertion_str(a.kids[0]) + ")";
    case K::And:
      return "(" + assertion_str(a.kids[0]) + " /\\ " + assertion_str(a.kids[1]) + ")";
    case K::Or:
      return "(" + assertion_str(a.kids[0]) + " \\/ " + assertion_str(a.kids[1]) + ")";
    case K::Exists:
      return "exists " + a.var + ". " + assertion_str(a.kids[0]);
    case K::Star:
      return "(" + assertion_str(a.kids[0]) + " * " + assertion_str(a.kids[1]) + ")";
    case K::Wand:
      return "(" + assertion_str(a.kids[0]) + " -* " + assertion_str(a.kids[1]) + ")";
    case K::PointsTo:
      return expr_str(a.es[0]) + " |-> " + expr_str(a.es[1]);
    case K::Region: {
      std::string s = a.type_name;
      if (a.level >= 0) s += "^" + std::to_string(a.level);
      return s + "_" + expr_str(a.rid) + tuple_str(a.es);
    }
    case K::Guard:
      return "<" + gterms_str(a.terms) + ">_" + expr_str(a.rid);
    case K::LocObl:
      return "ceil[" + gterms_str(a.terms) + "]_" + expr_str(a.rid);
    case K::EnvObl:
      return "floor[" + gterms_str(a.terms) + "]_" + expr_str(a.rid);
    case K::Track: {
      std::string s = expr_str(a.rid) + " |=> ";
      if (a.track_kind == 0) return s + "pending";
      if (a.track_kind == 1) return s + "envpending";
      return s + "done(" + tuple_str(a.es) + ", " + tuple_str(a.es2) + ")";
    }
    case K::ZeroObl: {
      std::string s = "zeroobl{";
      for (size_t i = 0; i < a.es.size(); ++i) {
        if (i) s += ", ";
        s += expr_str(a.es[i]);
      }
      return s + "}";
    }
    case K::MinLay:
      return "minlay(" + expr_str(a.es[0]) + ", " + a.layer_name + ")";
  }
  return "?";
}

}  // namespace fc
