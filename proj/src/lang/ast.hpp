#pragma once
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lang/value.hpp"

namespace fc {

struct Exp;
using ExpP = std::shared_ptr<const Exp>;

// One expression type covers numeric and boolean forms; the language is untyped
// and evaluation is partial.
struct Exp {
  enum class K { Lit, Var, Add, Sub, Mul, Not, And, Or, Eq, Ne, Lt, Le, Gt, Ge };
  K k = K::Lit;
  Val lit{};
  std::string var;
  ExpP a, b;
};

ExpP elit(Val v);
ExpP eint(int64_t n);
ExpP ebool(bool b);
ExpP evar(std::string x);
ExpP ebin(Exp::K k, ExpP a, ExpP b);
ExpP enot(ExpP a);

std::set<std::string> fv_exp(const ExpP& e);
std::optional<Val> eval_exp(const ExpP& e, const Store& s);
std::string exp_str(const ExpP& e);
bool exp_eq(const ExpP& a, const ExpP& b);

struct Cmd;
using CmdP = std::shared_ptr<const Cmd>;

struct Cmd {
  enum class K {
    Skip, Assign, Read, Mutate, Cas, Fas, Alloc, Dealloc,
    Let, VarBind, If, While, Call, Seq, Par, Atomic
  };
  K k = K::Skip;
  std::string x;                                       // target variable
  std::string fname;                                   // Let / Call function name
  std::vector<std::string> params;                     // Let formals
  std::vector<std::pair<std::string, ExpP>> binds;     // VarBind (simultaneous)
  ExpP e1, e2, e3;
  std::vector<ExpP> args;                              // Call actuals
  CmdP c1, c2;                                         // children; Let: c1 body, c2 continuation
};

CmdP cskip();
CmdP cassign(std::string x, ExpP e);
CmdP cread(std::string x, ExpP e);
CmdP cmutate(ExpP addr, ExpP val);
CmdP ccas(std::string x, ExpP a, ExpP oldv, ExpP newv);
CmdP cfas(std::string x, ExpP a, ExpP v);
CmdP calloc(std::string x, ExpP n);
CmdP cdealloc(ExpP a);
CmdP clet(std::string f, std::vector<std::string> params, CmdP body, CmdP cont);
CmdP cvar(std::vector<std::pair<std::string, ExpP>> binds, CmdP body);
CmdP cif(ExpP b, CmdP t, CmdP e);
CmdP cwhile(ExpP b, CmdP body);
CmdP ccall(std::string x, std::string f, std::vector<ExpP> args);
CmdP cseq(CmdP a, CmdP b);
CmdP cpar(CmdP a, CmdP b);
CmdP catomic(CmdP body);

std::set<std::string> fv_cmd(const CmdP& c);
std::set<std::string> mods_cmd(const CmdP& c);
std::string cmd_str(const CmdP& c, int indent = 0);
bool cmd_eq(const CmdP& a, const CmdP& b);

}  // namespace fc
