#include "lang/parse.hpp"

#include <map>
#include <set>

namespace fc {

namespace {

class ExprParser {
 public:
  ExprParser(Lexer& lx, const std::map<std::string, int64_t>* fields = nullptr)
      : lx_(lx), fields_(fields) {}

  ExpP exp() { return exp_or(); }

  ExpP field_addr(const std::string& base) {
    std::string f = lx_.expect_ident("field name").text;
    if (!fields_ || !fields_->count(f)) lx_.fail("unknown field '" + f + "'");
    int64_t off = fields_->at(f);
    if (off == 0) return evar(base);
    return ebin(Exp::K::Add, evar(base), eint(off));
  }

 private:
  Lexer& lx_;
  const std::map<std::string, int64_t>* fields_;

  ExpP exp_or() {
    ExpP a = exp_and();
    while (lx_.accept("or")) a = ebin(Exp::K::Or, a, exp_and());
    return a;
  }
  ExpP exp_and() {
    ExpP a = exp_cmp();
    while (lx_.accept("&&")) a = ebin(Exp::K::And, a, exp_cmp());
    return a;
  }
  ExpP exp_cmp() {
    ExpP a = exp_add();
    static const std::pair<const char*, Exp::K> ops[] = {
        {"=", Exp::K::Eq}, {"!=", Exp::K::Ne}, {"<=", Exp::K::Le},
        {">=", Exp::K::Ge}, {"<", Exp::K::Lt}, {">", Exp::K::Gt}};
    for (auto& [s, k] : ops)
      if (lx_.accept(s)) return ebin(k, a, exp_add());
    return a;
  }
  ExpP exp_add() {
    ExpP a = exp_mul();
    for (;;) {
      if (lx_.accept("+")) a = ebin(Exp::K::Add, a, exp_mul());
      else if (lx_.accept("-")) a = ebin(Exp::K::Sub, a, exp_mul());
      else return a;
    }
  }
  ExpP exp_mul() {
    ExpP a = exp_unary();
    while (lx_.accept("*")) a = ebin(Exp::K::Mul, a, exp_unary());
    return a;
  }
  ExpP exp_unary() {
    if (lx_.accept("!")) return enot(exp_unary());
    if (lx_.is("-")) return eint(lx_.expect_int());
    return exp_atom();
  }
  ExpP exp_atom() {
    if (lx_.peek().k == Token::K::Int) return eint(lx_.next().num);
    if (lx_.accept("true")) return ebool(true);
    if (lx_.accept("false")) return ebool(false);
    if (lx_.accept("(")) {
      ExpP e = exp();
      lx_.expect(")");
      return e;
    }
    if (lx_.peek().k == Token::K::Ident) {
      std::string name = lx_.next().text;
      if (fields_ && lx_.is(".") && fields_->count(lx_.peek(1).text)) {
        lx_.expect(".");
        return field_addr(name);  // field address, e.g. CAS(x.lock1, 0, 1)
      }
      return evar(name);
    }
    lx_.fail("expected expression, found '" + lx_.peek().text + "'");
  }
};

class Parser {
 public:
  Parser(std::string_view text) : lx_(text), ep_(lx_, &fields_) {}

  CmdP program() {
    std::vector<std::tuple<std::string, std::vector<std::string>, CmdP>> defs;
    while (!lx_.at_end()) {
      if (lx_.is("record")) { record(); continue; }
      if (lx_.peek().k == Token::K::Ident && !reserved(lx_.peek().text) &&
          lx_.peek(1).text == "(" && is_fundef()) {
        defs.push_back(fundef());
        continue;
      }
      break;
    }
    CmdP main = lx_.at_end() ? cskip() : stmtseq();
    if (!lx_.at_end()) lx_.fail("trailing input after program body");
    for (auto it = defs.rbegin(); it != defs.rend(); ++it)
      main = clet(std::get<0>(*it), std::get<1>(*it), std::get<2>(*it), main);
    check_static(main);
    return main;
  }

 private:
  Lexer lx_;
  std::map<std::string, int64_t> fields_;
  ExprParser ep_;
  std::set<std::string> fnames_;

  ExpP exp() { return ep_.exp(); }

  static bool reserved(const std::string& w) {
    static const std::set<std::string> kw = {
        "if", "else", "while", "var", "let", "in", "skip", "dealloc",
        "record", "true", "false", "or", "CAS", "FAS", "alloc"};
    return kw.count(w) > 0;
  }

  // fundef looks like `name(x, y) {`; a call statement has `;` after `)`.
  bool is_fundef() {
    size_t i = 2;
    int depth = 1;
    while (depth > 0) {
      const Token& t = lx_.peek(i);
      if (t.k == Token::K::End) return false;
      if (t.text == "(") depth++;
      if (t.text == ")") depth--;
      i++;
    }
    return lx_.peek(i).text == "{";
  }

  void record() {
    lx_.expect("record");
    lx_.expect_ident("record name");
    lx_.expect("{");
    int64_t off = 0;
    while (!lx_.accept("}")) {
      std::string f = lx_.expect_ident("field name").text;
      if (fields_.count(f)) lx_.fail("duplicate field name '" + f + "'");
      fields_[f] = off++;
      if (!lx_.is("}")) lx_.expect(",");
    }
  }

  std::tuple<std::string, std::vector<std::string>, CmdP> fundef() {
    std::string name = lx_.expect_ident("function name").text;
    std::vector<std::string> params = param_list();
    lx_.expect("{");
    CmdP body = stmtseq();
    lx_.expect("}");
    return {name, params, body};
  }

  std::vector<std::string> param_list() {
    lx_.expect("(");
    std::vector<std::string> ps;
    while (!lx_.accept(")")) {
      ps.push_back(lx_.expect_ident("parameter").text);
      if (!lx_.is(")")) lx_.expect(",");
    }
    return ps;
  }

  bool at_block_end() { return lx_.at_end() || lx_.is("}") || lx_.is(">"); }

  CmdP stmtseq() {
    std::vector<CmdP> stmts;
    while (!at_block_end()) {
      bool rest_consumed = false;
      stmts.push_back(stmt(rest_consumed));
      if (rest_consumed) break;
    }
    if (stmts.empty()) return cskip();
    CmdP out = stmts.back();
    for (size_t i = stmts.size() - 1; i-- > 0;) out = cseq(stmts[i], out);
    return out;
  }

  CmdP block() {
    lx_.expect("{");
    CmdP c = stmtseq();
    lx_.expect("}");
    return c;
  }

  CmdP stmt(bool& rest_consumed) {
    // var/let scope over the remainder of the enclosing block
    if (lx_.is("var")) { rest_consumed = true; return varstmt(); }
    if (lx_.is("let")) { rest_consumed = true; return letstmt(); }
    if (lx_.accept("skip")) { lx_.expect(";"); return cskip(); }
    if (lx_.accept("dealloc")) {
      lx_.expect("(");
      ExpP e = addr_arg();
      lx_.expect(")");
      lx_.expect(";");
      return cdealloc(e);
    }
    if (lx_.is("if")) return ifstmt();
    if (lx_.is("while")) return whilestmt();
    if (lx_.is("<")) {
      lx_.expect("<");
      CmdP body = stmtseq();
      lx_.expect(">");
      lx_.accept(";");
      return catomic(body);
    }
    if (lx_.is("{")) {
      CmdP a = block();
      lx_.expect("||");
      CmdP b = block();
      lx_.accept(";");
      return cpar(a, b);
    }
    if (lx_.is("[")) {
      lx_.expect("[");
      ExpP addr = exp();
      lx_.expect("]");
      lx_.expect(":=");
      ExpP v = exp();
      lx_.expect(";");
      return cmutate(addr, v);
    }
    if (lx_.peek().k == Token::K::Ident) return identstmt();
    lx_.fail("expected statement, found '" + lx_.peek().text + "'");
  }

  // `var x = e, y = f in C` binds simultaneously (initializers see only the
  // enclosing scope); names without `=` start at 0. A pure declaration list
  // `var x, y in C` abbreviates nested zero-initialized binders.
  CmdP varstmt() {
    lx_.expect("var");
    std::vector<std::pair<std::string, ExpP>> binds;
    bool any_init = false;
    do {
      std::string n = lx_.expect_ident("variable").text;
      ExpP init = eint(0);
      if (lx_.accept("=")) {
        init = exp();
        any_init = true;
      }
      binds.push_back({n, std::move(init)});
    } while (lx_.accept(","));
    lx_.expect("in");
    CmdP body = stmtseq();
    if (!any_init && binds.size() > 1) {
      for (size_t i = binds.size(); i-- > 0;) body = cvar({binds[i]}, body);
      return body;
    }
    return cvar(std::move(binds), body);
  }

  CmdP letstmt() {
    lx_.expect("let");
    std::string name = lx_.expect_ident("function name").text;
    std::vector<std::string> params = param_list();
    lx_.expect("=");
    CmdP body = block();
    lx_.expect("in");
    return clet(name, params, body, stmtseq());
  }

  CmdP ifstmt() {
    lx_.expect("if");
    lx_.expect("(");
    ExpP g = exp();
    lx_.expect(")");
    CmdP t = block();
    CmdP e = lx_.accept("else") ? block() : cskip();
    lx_.accept(";");
    return cif(g, t, e);
  }

  CmdP whilestmt() {
    lx_.expect("while");
    lx_.expect("(");
    ExpP g = exp();
    lx_.expect(")");
    CmdP body = block();
    lx_.accept(";");
    return cwhile(g, body);
  }

  // Address positions accept field sugar: `p.next` reads as `p + off`.
  ExpP addr_arg() {
    if (lx_.peek().k == Token::K::Ident && lx_.peek(1).text == "." &&
        fields_.count(lx_.peek(2).text)) {
      std::string base = lx_.expect_ident().text;
      lx_.expect(".");
      return ep_.field_addr(base);
    }
    return exp();
  }

  CmdP identstmt() {
    std::string name = lx_.expect_ident().text;
    if (lx_.accept(".")) {  // field write: x.f := e
      ExpP addr = ep_.field_addr(name);
      lx_.expect(":=");
      ExpP v = exp();
      lx_.expect(";");
      return cmutate(addr, v);
    }
    if (lx_.is("(")) {  // statement call, result discarded into a scratch binder
      std::vector<ExpP> args = arg_list();
      lx_.expect(";");
      return cvar({{"ures", eint(0)}}, ccall("ures", name, std::move(args)));
    }
    lx_.expect(":=");
    CmdP c = rhs(name);
    lx_.expect(";");
    return c;
  }

  std::vector<ExpP> arg_list() {
    lx_.expect("(");
    std::vector<ExpP> args;
    while (!lx_.accept(")")) {
      args.push_back(addr_arg());
      if (!lx_.is(")")) lx_.expect(",");
    }
    return args;
  }

  CmdP rhs(const std::string& target) {
    if (lx_.accept("[")) {
      ExpP a = exp();
      lx_.expect("]");
      return cread(target, a);
    }
    if (lx_.accept("CAS")) {
      auto args = arg_list();
      if (args.size() != 3) lx_.fail("CAS takes 3 arguments");
      return ccas(target, args[0], args[1], args[2]);
    }
    if (lx_.accept("FAS")) {
      auto args = arg_list();
      if (args.size() != 2) lx_.fail("FAS takes 2 arguments");
      return cfas(target, args[0], args[1]);
    }
    if (lx_.accept("alloc")) {
      auto args = arg_list();
      if (args.size() != 1) lx_.fail("alloc takes 1 argument");
      return calloc(target, args[0]);
    }
    if (lx_.peek().k == Token::K::Ident && lx_.peek(1).text == "(") {
      std::string f = lx_.expect_ident().text;
      return ccall(target, f, arg_list());
    }
    if (lx_.peek().k == Token::K::Ident && lx_.peek(1).text == "." &&
        fields_.count(lx_.peek(2).text)) {
      std::string base = lx_.expect_ident().text;
      lx_.expect(".");
      return cread(target, ep_.field_addr(base));  // x.f on the right reads the cell
    }
    return cassign(target, exp());
  }

  void check_static(const CmdP& c) {
    using K = Cmd::K;
    if (!c) return;
    if (c->k == K::Par) {
      // a variable one branch writes must not appear in the other
      auto m1 = mods_cmd(c->c1), m2 = mods_cmd(c->c2);
      auto f1 = fv_cmd(c->c1), f2 = fv_cmd(c->c2);
      for (const auto& v : m1)
        if (f2.count(v))
          throw ParseError("variable '" + v + "' is written by one parallel branch and used by the other", 0, 0);
      for (const auto& v : m2)
        if (f1.count(v))
          throw ParseError("variable '" + v + "' is written by one parallel branch and used by the other", 0, 0);
    }
    if (c->k == K::Let) {
      if (fnames_.count(c->fname))
        throw ParseError("function '" + c->fname + "' defined more than once", 0, 0);
      fnames_.insert(c->fname);
      std::set<std::string> allowed(c->params.begin(), c->params.end());
      allowed.insert("ret");
      for (const auto& v : fv_cmd(c->c1))
        if (!allowed.count(v))
          throw ParseError("function '" + c->fname + "' body uses non-parameter variable '" +
                               v + "'", 0, 0);
    }
    check_static(c->c1);
    check_static(c->c2);
  }
};

}  // namespace

CmdP parse_program(std::string_view text) {
  Parser p(text);
  return p.program();
}

ExpP parse_exp(Lexer& lx) {
  ExprParser ep(lx);
  return ep.exp();
}

}  // namespace fc
