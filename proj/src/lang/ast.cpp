#include "lang/ast.hpp"

#include <cassert>

namespace fc {

ExpP elit(Val v) {
  auto e = std::make_shared<Exp>();
  e->k = Exp::K::Lit;
  e->lit = v;
  return e;
}
ExpP eint(int64_t n) { return elit(Val::integer(n)); }
ExpP ebool(bool b) { return elit(Val::boolean(b)); }
ExpP evar(std::string x) {
  auto e = std::make_shared<Exp>();
  e->k = Exp::K::Var;
  e->var = std::move(x);
  return e;
}
ExpP ebin(Exp::K k, ExpP a, ExpP b) {
  auto e = std::make_shared<Exp>();
  e->k = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}
ExpP enot(ExpP a) {
  auto e = std::make_shared<Exp>();
  e->k = Exp::K::Not;
  e->a = std::move(a);
  return e;
}

std::set<std::string> fv_exp(const ExpP& e) {
  std::set<std::string> out;
  if (!e) return out;
  switch (e->k) {
    case Exp::K::Lit: break;
    case Exp::K::Var: out.insert(e->var); break;
    default: {
      out = fv_exp(e->a);
      auto r = fv_exp(e->b);
      out.insert(r.begin(), r.end());
    }
  }
  return out;
}

std::optional<Val> eval_exp(const ExpP& e, const Store& s) {
  using K = Exp::K;
  switch (e->k) {
    case K::Lit: return e->lit;
    case K::Var: return s.get(e->var);
    case K::Not: {
      auto a = eval_exp(e->a, s);
      if (!a || !a->is_bool()) return std::nullopt;
      return Val::boolean(!a->truth());
    }
    default: break;
  }
  auto a = eval_exp(e->a, s);
  auto b = eval_exp(e->b, s);
  if (!a || !b) return std::nullopt;
  auto arith = [&](auto f) -> std::optional<Val> {
    if (!a->is_int() || !b->is_int()) return std::nullopt;
    return Val::integer(f(a->n, b->n));
  };
  auto cmp = [&](auto f) -> std::optional<Val> {
    if (!a->is_int() || !b->is_int()) return std::nullopt;
    return Val::boolean(f(a->n, b->n));
  };
  auto boolean = [&](auto f) -> std::optional<Val> {
    if (!a->is_bool() || !b->is_bool()) return std::nullopt;
    return Val::boolean(f(a->truth(), b->truth()));
  };
  switch (e->k) {
    case K::Add: return arith([](int64_t x, int64_t y) { return x + y; });
    case K::Sub: return arith([](int64_t x, int64_t y) { return x - y; });
    case K::Mul: return arith([](int64_t x, int64_t y) { return x * y; });
    case K::And: return boolean([](bool x, bool y) { return x && y; });
    case K::Or: return boolean([](bool x, bool y) { return x || y; });
    case K::Eq: return Val::boolean(*a == *b);
    case K::Ne: return Val::boolean(!(*a == *b));
    case K::Lt: return cmp([](int64_t x, int64_t y) { return x < y; });
    case K::Le: return cmp([](int64_t x, int64_t y) { return x <= y; });
    case K::Gt: return cmp([](int64_t x, int64_t y) { return x > y; });
    case K::Ge: return cmp([](int64_t x, int64_t y) { return x >= y; });
    default: return std::nullopt;
  }
}

namespace {
int prec(Exp::K k) {
  using K = Exp::K;
  switch (k) {
    case K::Lit: case K::Var: return 6;
    case K::Not: return 5;
    case K::Mul: return 4;
    case K::Add: case K::Sub: return 3;
    case K::Eq: case K::Ne: case K::Lt: case K::Le: case K::Gt: case K::Ge: return 2;
    case K::And: return 1;
    case K::Or: return 0;
  }
  return 0;
}
const char* opstr(Exp::K k) {
  using K = Exp::K;
  switch (k) {
    case K::Add: return " + ";
    case K::Sub: return " - ";
    case K::Mul: return " * ";
    case K::And: return " && ";
    case K::Or: return " or ";
    case K::Eq: return " = ";
    case K::Ne: return " != ";
    case K::Lt: return " < ";
    case K::Le: return " <= ";
    case K::Gt: return " > ";
    case K::Ge: return " >= ";
    default: return "?";
  }
}
std::string exp_str_p(const ExpP& e, int outer) {
  using K = Exp::K;
  std::string s;
  switch (e->k) {
    case K::Lit: s = e->lit.str(); break;
    case K::Var: s = e->var; break;
    case K::Not: s = "!" + exp_str_p(e->a, prec(K::Not)); break;
    default:
      s = exp_str_p(e->a, prec(e->k)) + opstr(e->k) + exp_str_p(e->b, prec(e->k) + 1);
  }
  if (prec(e->k) < outer) return "(" + s + ")";
  return s;
}
}  // namespace

std::string exp_str(const ExpP& e) { return exp_str_p(e, 0); }

bool exp_eq(const ExpP& a, const ExpP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->k != b->k) return false;
  switch (a->k) {
    case Exp::K::Lit: return a->lit == b->lit;
    case Exp::K::Var: return a->var == b->var;
    case Exp::K::Not: return exp_eq(a->a, b->a);
    default: return exp_eq(a->a, b->a) && exp_eq(a->b, b->b);
  }
}

static CmdP mk(Cmd::K k) {
  auto c = std::make_shared<Cmd>();
  c->k = k;
  return std::const_pointer_cast<const Cmd>(c);
}
static std::shared_ptr<Cmd> mut(Cmd::K k) {
  auto c = std::make_shared<Cmd>();
  c->k = k;
  return c;
}

CmdP cskip() { return mk(Cmd::K::Skip); }
CmdP cassign(std::string x, ExpP e) {
  auto c = mut(Cmd::K::Assign); c->x = std::move(x); c->e1 = std::move(e); return c;
}
CmdP cread(std::string x, ExpP e) {
  auto c = mut(Cmd::K::Read); c->x = std::move(x); c->e1 = std::move(e); return c;
}
CmdP cmutate(ExpP a, ExpP v) {
  auto c = mut(Cmd::K::Mutate); c->e1 = std::move(a); c->e2 = std::move(v); return c;
}
CmdP ccas(std::string x, ExpP a, ExpP o, ExpP n) {
  auto c = mut(Cmd::K::Cas); c->x = std::move(x); c->e1 = std::move(a);
  c->e2 = std::move(o); c->e3 = std::move(n); return c;
}
CmdP cfas(std::string x, ExpP a, ExpP v) {
  auto c = mut(Cmd::K::Fas); c->x = std::move(x); c->e1 = std::move(a); c->e2 = std::move(v); return c;
}
CmdP calloc(std::string x, ExpP n) {
  auto c = mut(Cmd::K::Alloc); c->x = std::move(x); c->e1 = std::move(n); return c;
}
CmdP cdealloc(ExpP a) {
  auto c = mut(Cmd::K::Dealloc); c->e1 = std::move(a); return c;
}
CmdP clet(std::string f, std::vector<std::string> ps, CmdP body, CmdP cont) {
  auto c = mut(Cmd::K::Let); c->fname = std::move(f); c->params = std::move(ps);
  c->c1 = std::move(body); c->c2 = std::move(cont); return c;
}
CmdP cvar(std::vector<std::pair<std::string, ExpP>> binds, CmdP body) {
  auto c = mut(Cmd::K::VarBind); c->binds = std::move(binds); c->c1 = std::move(body); return c;
}
CmdP cif(ExpP b, CmdP t, CmdP e) {
  auto c = mut(Cmd::K::If); c->e1 = std::move(b); c->c1 = std::move(t); c->c2 = std::move(e); return c;
}
CmdP cwhile(ExpP b, CmdP body) {
  auto c = mut(Cmd::K::While); c->e1 = std::move(b); c->c1 = std::move(body); return c;
}
CmdP ccall(std::string x, std::string f, std::vector<ExpP> args) {
  auto c = mut(Cmd::K::Call); c->x = std::move(x); c->fname = std::move(f);
  c->args = std::move(args);
  return c;
}
CmdP cseq(CmdP a, CmdP b) {
  auto c = mut(Cmd::K::Seq); c->c1 = std::move(a); c->c2 = std::move(b); return c;
}
CmdP cpar(CmdP a, CmdP b) {
  auto c = mut(Cmd::K::Par); c->c1 = std::move(a); c->c2 = std::move(b); return c;
}
CmdP catomic(CmdP body) {
  auto c = mut(Cmd::K::Atomic); c->c1 = std::move(body); return c;
}

std::set<std::string> fv_cmd(const CmdP& c) {
  using K = Cmd::K;
  std::set<std::string> out;
  auto add = [&](std::set<std::string> s) { out.insert(s.begin(), s.end()); };
  switch (c->k) {
    case K::Skip: break;
    case K::Assign: out.insert(c->x); add(fv_exp(c->e1)); break;
    case K::Read: out.insert(c->x); add(fv_exp(c->e1)); break;
    case K::Mutate: add(fv_exp(c->e1)); add(fv_exp(c->e2)); break;
    case K::Cas:
      out.insert(c->x); add(fv_exp(c->e1)); add(fv_exp(c->e2)); add(fv_exp(c->e3)); break;
    case K::Fas: out.insert(c->x); add(fv_exp(c->e1)); add(fv_exp(c->e2)); break;
    case K::Alloc: out.insert(c->x); add(fv_exp(c->e1)); break;
    case K::Dealloc: add(fv_exp(c->e1)); break;
    case K::Let: add(fv_cmd(c->c2)); break;
    case K::VarBind: {
      auto s = fv_cmd(c->c1);
      for (const auto& [x, e] : c->binds) s.erase(x);
      add(s);
      for (const auto& [x, e] : c->binds) add(fv_exp(e));
      break;
    }
    case K::If: add(fv_exp(c->e1)); add(fv_cmd(c->c1)); add(fv_cmd(c->c2)); break;
    case K::While: add(fv_exp(c->e1)); add(fv_cmd(c->c1)); break;
    case K::Call:
      out.insert(c->x);
      for (const auto& a : c->args) add(fv_exp(a));
      break;
    case K::Seq: add(fv_cmd(c->c1)); add(fv_cmd(c->c2)); break;
    case K::Par: add(fv_cmd(c->c1)); add(fv_cmd(c->c2)); break;
    case K::Atomic: add(fv_cmd(c->c1)); break;
  }
  return out;
}

std::set<std::string> mods_cmd(const CmdP& c) {
  using K = Cmd::K;
  std::set<std::string> out;
  auto add = [&](std::set<std::string> s) { out.insert(s.begin(), s.end()); };
  switch (c->k) {
    case K::Skip: case K::Mutate: case K::Dealloc: break;
    case K::Assign: case K::Read: case K::Cas: case K::Fas: case K::Alloc: case K::Call:
      out.insert(c->x); break;
    case K::Let: add(mods_cmd(c->c2)); break;
    case K::VarBind: {
      auto s = mods_cmd(c->c1);
      for (const auto& [x, e] : c->binds) s.erase(x);
      add(s);
      break;
    }
    case K::If: add(mods_cmd(c->c1)); add(mods_cmd(c->c2)); break;
    case K::While: add(mods_cmd(c->c1)); break;
    case K::Seq: case K::Par: add(mods_cmd(c->c1)); add(mods_cmd(c->c2)); break;
    case K::Atomic: add(mods_cmd(c->c1)); break;
  }
  return out;
}

namespace {
std::string ind(int n) { return std::string(2 * n, ' '); }

void print_cmd(const CmdP& c, int d, std::string& out);

void print_block(const CmdP& c, int d, std::string& out) {
  out += "{\n";
  print_cmd(c, d + 1, out);
  out += ind(d) + "}";
}

void print_cmd(const CmdP& c, int d, std::string& out) {
  using K = Cmd::K;
  switch (c->k) {
    case K::Skip: out += ind(d) + "skip;\n"; return;
    case K::Assign: out += ind(d) + c->x + " := " + exp_str(c->e1) + ";\n"; return;
    case K::Read: out += ind(d) + c->x + " := [" + exp_str(c->e1) + "];\n"; return;
    case K::Mutate:
      out += ind(d) + "[" + exp_str(c->e1) + "] := " + exp_str(c->e2) + ";\n"; return;
    case K::Cas:
      out += ind(d) + c->x + " := CAS(" + exp_str(c->e1) + ", " + exp_str(c->e2) + ", " +
             exp_str(c->e3) + ");\n";
      return;
    case K::Fas:
      out += ind(d) + c->x + " := FAS(" + exp_str(c->e1) + ", " + exp_str(c->e2) + ");\n";
      return;
    case K::Alloc: out += ind(d) + c->x + " := alloc(" + exp_str(c->e1) + ");\n"; return;
    case K::Dealloc: out += ind(d) + "dealloc(" + exp_str(c->e1) + ");\n"; return;
    case K::Let: {
      out += ind(d) + "let " + c->fname + "(";
      for (size_t i = 0; i < c->params.size(); ++i) {
        if (i) out += ", ";
        out += c->params[i];
      }
      out += ") = ";
      print_block(c->c1, d, out);
      out += " in\n";
      print_cmd(c->c2, d, out);
      return;
    }
    case K::VarBind: {
      out += ind(d) + "var ";
      for (size_t i = 0; i < c->binds.size(); ++i) {
        if (i) out += ", ";
        out += c->binds[i].first;
      }
      out += " = ";
      for (size_t i = 0; i < c->binds.size(); ++i) {
        if (i) out += ", ";
        out += exp_str(c->binds[i].second);
      }
      out += " in\n";
      print_cmd(c->c1, d, out);
      return;
    }
    case K::If:
      out += ind(d) + "if (" + exp_str(c->e1) + ") ";
      print_block(c->c1, d, out);
      out += " else ";
      print_block(c->c2, d, out);
      out += "\n";
      return;
    case K::While:
      out += ind(d) + "while (" + exp_str(c->e1) + ") ";
      print_block(c->c1, d, out);
      out += "\n";
      return;
    case K::Call: {
      out += ind(d) + c->x + " := " + c->fname + "(";
      for (size_t i = 0; i < c->args.size(); ++i) {
        if (i) out += ", ";
        out += exp_str(c->args[i]);
      }
      out += ");\n";
      return;
    }
    case K::Seq:
      print_cmd(c->c1, d, out);
      print_cmd(c->c2, d, out);
      return;
    case K::Par:
      out += ind(d);
      print_block(c->c1, d, out);
      out += " || ";
      print_block(c->c2, d, out);
      out += "\n";
      return;
    case K::Atomic:
      out += ind(d) + "<\n";
      print_cmd(c->c1, d + 1, out);
      out += ind(d) + ">\n";
      return;
  }
}
}  // namespace

std::string cmd_str(const CmdP& c, int indent) {
  std::string out;
  print_cmd(c, indent, out);
  return out;
}

bool cmd_eq(const CmdP& a, const CmdP& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->k != b->k || a->x != b->x || a->fname != b->fname || a->params != b->params)
    return false;
  if (a->binds.size() != b->binds.size() || a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->binds.size(); ++i) {
    if (a->binds[i].first != b->binds[i].first) return false;
    if (!exp_eq(a->binds[i].second, b->binds[i].second)) return false;
  }
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!exp_eq(a->args[i], b->args[i])) return false;
  return exp_eq(a->e1, b->e1) && exp_eq(a->e2, b->e2) && exp_eq(a->e3, b->e3) &&
         cmd_eq(a->c1, b->c1) && cmd_eq(a->c2, b->c2);
}

}  // namespace fc
