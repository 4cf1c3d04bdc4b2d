#pragma once
// Hand-transcribed successor sets for every transition rule of the language.
// Each case fixes a configuration and a scheduled label and lists the exact
// configurations the step relation must produce. test_lang checks them all;
// the acceptance runner replays the same table.

#include <string>
#include <vector>

#include "lang/parse.hpp"
#include "lang/step.hpp"

namespace fc::oracle {

struct OpsemCase {
  std::string name;
  Store store;
  Heap heap;
  PStateP state;
  bool env = false;      // env step instead of a local one
  std::string path;      // thread scheduled when !env
  StepOptions opt;
  FunCtxt phi;
  std::vector<Config> expect;
};

inline Store st(std::initializer_list<std::pair<const char*, int64_t>> xs) {
  Store s;
  for (auto& [k, v] : xs) s.set(k, Val::integer(v));
  return s;
}

inline Heap hp(std::initializer_list<std::pair<int64_t, int64_t>> xs) {
  Heap h;
  for (auto& [a, v] : xs) h.set(a, Val::integer(v));
  return h;
}

inline Config ok(Store s, Heap h, PStateP p) {
  return Config{false, std::move(s), std::move(h), std::move(p)};
}

inline Config flt() { return Config{true, {}, {}, nullptr}; }

inline std::vector<OpsemCase> opsem_cases() {
  std::vector<OpsemCase> cs;
  auto add = [&](OpsemCase c) { cs.push_back(std::move(c)); };
  StepOptions plain;

  // ---- leaf commands -------------------------------------------------
  add({"skip", st({}), hp({}), ps_cmd(cskip()), false, "", plain, {},
       {ok(st({}), hp({}), ps_done())}});

  add({"assign", st({{"x", 2}}), hp({}),
       ps_cmd(cassign("x", ebin(Exp::K::Add, evar("x"), eint(3)))), false, "",
       plain, {}, {ok(st({{"x", 5}}), hp({}), ps_done())}});

  add({"assign-type-fault", st({}), hp({}),
       ps_cmd(cassign("x", ebin(Exp::K::Add, eint(1), ebool(true)))), false, "",
       plain, {}, {flt()}});

  add({"read", st({{"a", 5}, {"y", 0}}), hp({{5, 7}}),
       ps_cmd(cread("y", evar("a"))), false, "", plain, {},
       {ok(st({{"a", 5}, {"y", 7}}), hp({{5, 7}}), ps_done())}});

  add({"read-dangling-fault", st({{"a", 5}, {"y", 0}}), hp({}),
       ps_cmd(cread("y", evar("a"))), false, "", plain, {}, {flt()}});

  add({"mutate", st({{"a", 5}}), hp({{5, 7}}),
       ps_cmd(cmutate(evar("a"), eint(9))), false, "", plain, {},
       {ok(st({{"a", 5}}), hp({{5, 9}}), ps_done())}});

  add({"mutate-dangling-fault", st({{"a", 6}}), hp({{5, 7}}),
       ps_cmd(cmutate(evar("a"), eint(9))), false, "", plain, {}, {flt()}});

  add({"cas-success", st({{"d", 0}, {"x", 5}}), hp({{5, 0}}),
       ps_cmd(ccas("d", evar("x"), eint(0), eint(1))), false, "", plain, {},
       {ok(st({{"d", 1}, {"x", 5}}), hp({{5, 1}}), ps_done())}});

  add({"cas-failure", st({{"d", 1}, {"x", 5}}), hp({{5, 7}}),
       ps_cmd(ccas("d", evar("x"), eint(0), eint(1))), false, "", plain, {},
       {ok(st({{"d", 0}, {"x", 5}}), hp({{5, 7}}), ps_done())}});

  add({"cas-dangling-fault", st({{"d", 0}, {"x", 5}}), hp({}),
       ps_cmd(ccas("d", evar("x"), eint(0), eint(1))), false, "", plain, {},
       {flt()}});

  add({"fas", st({{"x", 0}, {"a", 5}}), hp({{5, 7}}),
       ps_cmd(cfas("x", evar("a"), eint(5))), false, "", plain, {},
       {ok(st({{"x", 7}, {"a", 5}}), hp({{5, 5}}), ps_done())}});

  add({"fas-dangling-fault", st({{"x", 0}, {"a", 5}}), hp({}),
       ps_cmd(cfas("x", evar("a"), eint(5))), false, "", plain, {}, {flt()}});

  {
    StepOptions o;
    o.alloc_mode = StepOptions::AllocMode::Enumerate;
    o.addr_lo = 0;
    o.addr_hi = 4;
    add({"alloc-all-placements", st({{"x", 0}}), hp({{1, 3}}),
         ps_cmd(calloc("x", eint(2))), false, "", o, {},
         {ok(st({{"x", 2}}), hp({{1, 3}, {2, 0}, {3, 0}}), ps_done())}});
  }
  {
    StepOptions o;
    o.alloc_mode = StepOptions::AllocMode::Enumerate;
    o.addr_lo = 0;
    o.addr_hi = 2;
    o.alloc_values = {Val::integer(0), Val::integer(7)};
    add({"alloc-arbitrary-contents", st({{"x", 0}}), hp({}),
         ps_cmd(calloc("x", eint(1))), false, "", o, {},
         {ok(st({{"x", 0}}), hp({{0, 0}}), ps_done()),
          ok(st({{"x", 0}}), hp({{0, 7}}), ps_done()),
          ok(st({{"x", 1}}), hp({{1, 0}}), ps_done()),
          ok(st({{"x", 1}}), hp({{1, 7}}), ps_done())}});
  }
  add({"alloc-lowest", st({{"x", 0}}), hp({{1, 3}}), ps_cmd(calloc("x", eint(2))),
       false, "", plain, {},
       {ok(st({{"x", 2}}), hp({{1, 3}, {2, 0}, {3, 0}}), ps_done())}});

  add({"alloc-nonpositive-stuck", st({{"x", 0}}), hp({}),
       ps_cmd(calloc("x", eint(0))), false, "", plain, {}, {}});

  add({"alloc-type-fault", st({{"x", 0}}), hp({}),
       ps_cmd(calloc("x", ebool(true))), false, "", plain, {}, {flt()}});

  add({"dealloc", st({{"a", 5}}), hp({{5, 7}}), ps_cmd(cdealloc(evar("a"))),
       false, "", plain, {}, {ok(st({{"a", 5}}), hp({}), ps_done())}});

  add({"dealloc-dangling-fault", st({{"a", 6}}), hp({{5, 7}}),
       ps_cmd(cdealloc(evar("a"))), false, "", plain, {}, {flt()}});

  // ---- binders and scopes --------------------------------------------
  {
    CmdP body = cassign("x", ebin(Exp::K::Add, evar("x"), eint(1)));
    add({"var-open-scope", st({{"x", 9}}), hp({}),
         ps_cmd(cvar({{"x", eint(5)}}, body)), false, "", plain, {},
         {ok(st({{"x", 9}}), hp({}), ps_scoped(st({{"x", 5}}), ps_cmd(body)))}});

    add({"scoped-congruence-shadowing", st({{"x", 9}}), hp({}),
         ps_scoped(st({{"x", 5}}), ps_cmd(body)), false, "", plain, {},
         {ok(st({{"x", 9}}), hp({}), ps_scoped(st({{"x", 6}}), ps_done()))}});

    add({"scoped-elim", st({{"x", 9}}), hp({}),
         ps_scoped(st({{"x", 6}}), ps_done()), false, "", plain, {},
         {ok(st({{"x", 9}}), hp({}), ps_done())}});
  }

  // ---- sequencing -----------------------------------------------------
  {
    CmdP tail = cassign("y", eint(1));
    add({"seq-congruence", st({{"y", 0}}), hp({}),
         ps_seq(ps_cmd(cskip()), tail), false, "", plain, {},
         {ok(st({{"y", 0}}), hp({}), ps_seq(ps_done(), tail))}});

    add({"seq-elim", st({{"y", 0}}), hp({}), ps_seq(ps_done(), tail), false, "",
         plain, {}, {ok(st({{"y", 0}}), hp({}), ps_cmd(tail))}});
  }

  // ---- functions -------------------------------------------------------
  {
    CmdP body = cassign("ret", ebin(Exp::K::Add, evar("a"), eint(1)));
    CmdP call = ccall("y", "f", {eint(4)});
    CmdP expansion = cvar(
        {{"ret", eint(0)}},
        cseq(cvar({{"a", eint(4)}}, body), cassign("y", evar("ret"))));
    add({"call-expansion", st({{"y", 0}}), hp({}),
         ps_let("f", {"a"}, body, ps_cmd(call)), false, "", plain, {},
         {ok(st({{"y", 0}}), hp({}),
             ps_let("f", {"a"}, body, ps_cmd(expansion)))}});

    add({"let-elim", st({}), hp({}), ps_let("f", {"a"}, body, ps_done()), false,
         "", plain, {}, {ok(st({}), hp({}), ps_done())}});

    add({"call-unbound-fault", st({{"y", 0}}), hp({}), ps_cmd(call), false, "",
         plain, {}, {flt()}});

    add({"call-arity-fault", st({{"y", 0}}), hp({}),
         ps_cmd(ccall("y", "f", {eint(1), eint(2)})), false, "", plain,
         {{"f", {{"a"}, body}}}, {flt()}});
  }

  // ---- conditionals and loops ------------------------------------------
  {
    CmdP thn = cassign("x", eint(1));
    CmdP els = cassign("x", eint(2));
    add({"if-true", st({{"x", 0}, {"b", 0}}), hp({}),
         ps_cmd(cif(ebin(Exp::K::Eq, evar("b"), eint(0)), thn, els)), false, "",
         plain, {}, {ok(st({{"x", 0}, {"b", 0}}), hp({}), ps_cmd(thn))}});
    add({"if-false", st({{"x", 0}, {"b", 3}}), hp({}),
         ps_cmd(cif(ebin(Exp::K::Eq, evar("b"), eint(0)), thn, els)), false, "",
         plain, {}, {ok(st({{"x", 0}, {"b", 3}}), hp({}), ps_cmd(els))}});
    add({"if-nonbool-fault", st({{"x", 0}}), hp({}), ps_cmd(cif(eint(5), thn, els)),
         false, "", plain, {}, {flt()}});
  }
  {
    CmdP body = cassign("x", ebin(Exp::K::Add, evar("x"), eint(1)));
    CmdP loop = cwhile(ebin(Exp::K::Lt, evar("x"), eint(1)), body);
    add({"while-true-unfold", st({{"x", 0}}), hp({}), ps_cmd(loop), false, "",
         plain, {}, {ok(st({{"x", 0}}), hp({}), ps_seq(ps_cmd(body), loop))}});
    add({"while-false", st({{"x", 5}}), hp({}), ps_cmd(loop), false, "", plain,
         {}, {ok(st({{"x", 5}}), hp({}), ps_done())}});
  }

  // ---- parallel ---------------------------------------------------------
  {
    PStateP l = ps_cmd(cassign("x", eint(1)));
    PStateP r = ps_cmd(cassign("y", eint(2)));
    Store s0 = st({{"x", 0}, {"y", 0}});
    add({"par-left", s0, hp({}), ps_par(l, r), false, "L", plain, {},
         {ok(st({{"x", 1}, {"y", 0}}), hp({}), ps_par(ps_done(), r))}});
    add({"par-right", s0, hp({}), ps_par(l, r), false, "R", plain, {},
         {ok(st({{"x", 0}, {"y", 2}}), hp({}), ps_par(l, ps_done()))}});
    add({"par-root-not-schedulable", s0, hp({}), ps_par(l, r), false, "", plain,
         {}, {}});
    add({"par-join", s0, hp({}), ps_par(ps_done(), ps_done()), false, "", plain,
         {}, {ok(s0, hp({}), ps_done())}});
    add({"par-fault-absorbs", st({{"a", 5}}), hp({}),
         ps_par(ps_cmd(cread("z", evar("a"))), r), false, "L", plain, {},
         {flt()}});
  }

  // ---- atomic blocks ------------------------------------------------------
  {
    CmdP body = cseq(cread("t", evar("x")),
                     cmutate(evar("x"), ebin(Exp::K::Add, evar("t"), eint(1))));
    add({"atomic-runs-to-completion", st({{"t", 0}, {"x", 5}}), hp({{5, 7}}),
         ps_cmd(catomic(body)), false, "", plain, {},
         {ok(st({{"t", 7}, {"x", 5}}), hp({{5, 8}}), ps_done())}});

    add({"atomic-fault", st({{"t", 0}, {"x", 5}}), hp({}),
         ps_cmd(catomic(body)), false, "", plain, {}, {flt()}});
  }
  {
    StepOptions o;
    o.alloc_mode = StepOptions::AllocMode::Enumerate;
    o.addr_lo = 0;
    o.addr_hi = 2;
    add({"atomic-collects-all-outcomes", st({{"a", 0}}), hp({}),
         ps_cmd(catomic(calloc("a", eint(1)))), false, "", o, {},
         {ok(st({{"a", 0}}), hp({{0, 0}}), ps_done()),
          ok(st({{"a", 1}}), hp({{1, 0}}), ps_done())}});
  }

  // ---- environment steps ---------------------------------------------------
  {
    StepOptions o;
    o.addr_lo = 0;
    o.addr_hi = 2;
    o.env_values = {Val::integer(1)};
    PStateP p = ps_cmd(cskip());
    Store s0 = st({{"z", 3}});
    add({"env-any-heap-over-window", s0, hp({{0, 1}}), p, true, "", o, {},
         {flt(), ok(s0, hp({}), p), ok(s0, hp({{0, 1}}), p),
          ok(s0, hp({{1, 1}}), p), ok(s0, hp({{0, 1}, {1, 1}}), p)}});

    StepOptions o2 = o;
    o2.env_include_fault = false;
    add({"env-no-fault-variant", s0, hp({}), p, true, "", o2, {},
         {ok(s0, hp({}), p), ok(s0, hp({{0, 1}}), p), ok(s0, hp({{1, 1}}), p),
          ok(s0, hp({{0, 1}, {1, 1}}), p)}});
  }

  return cs;
}

// Runs one case, returning a diff description ("" when the successor set
// matches the transcription exactly, as a multiset).
inline std::string run_case(const OpsemCase& c) {
  std::vector<Config> got =
      c.env ? env_succs(c.store, c.heap, c.state, c.opt)
            : loc_succs(c.store, c.heap, c.state, c.phi, c.path, c.opt);
  std::vector<std::string> g, e;
  for (auto& x : got) g.push_back(config_str(x));
  for (auto& x : c.expect) e.push_back(config_str(x));
  std::sort(g.begin(), g.end());
  std::sort(e.begin(), e.end());
  if (g == e) return "";
  std::string msg = "expected {";
  for (auto& x : e) msg += "\n  " + x;
  msg += "\n} got {";
  for (auto& x : g) msg += "\n  " + x;
  return msg + "\n}";
}

}  // namespace fc::oracle
