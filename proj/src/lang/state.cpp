#include "lang/state.hpp"

#include <algorithm>

namespace fc {

namespace {
PStateP mk(PState p) { return std::make_shared<const PState>(std::move(p)); }

std::string compact(const std::string& s) {
  std::string out;
  bool ws = false;
  for (char c : s) {
    if (c == '\n' || c == ' ' || c == '\t') {
      ws = true;
      continue;
    }
    if (ws && !out.empty()) out += ' ';
    ws = false;
    out += c;
  }
  return out;
}
}  // namespace

PStateP ps_done() {
  static PStateP d = mk({});
  return d;
}

PStateP ps_cmd(CmdP c) {
  PState p;
  p.k = PState::K::CmdS;
  p.cmd = std::move(c);
  return mk(std::move(p));
}

PStateP ps_scoped(Store frame, PStateP sub) {
  PState p;
  p.k = PState::K::Scoped;
  p.frame = std::move(frame);
  p.p1 = std::move(sub);
  return mk(std::move(p));
}

PStateP ps_seq(PStateP sub, CmdP tail) {
  PState p;
  p.k = PState::K::SeqS;
  p.p1 = std::move(sub);
  p.cmd = std::move(tail);
  return mk(std::move(p));
}

PStateP ps_let(std::string f, std::vector<std::string> params, CmdP body, PStateP sub) {
  PState p;
  p.k = PState::K::LetS;
  p.fname = std::move(f);
  p.params = std::move(params);
  p.fbody = std::move(body);
  p.p1 = std::move(sub);
  return mk(std::move(p));
}

PStateP ps_par(PStateP a, PStateP b) {
  PState p;
  p.k = PState::K::ParS;
  p.p1 = std::move(a);
  p.p2 = std::move(b);
  return mk(std::move(p));
}

PStateP promote(const CmdP& c) {
  switch (c->k) {
    case Cmd::K::Seq: return ps_seq(promote(c->c1), c->c2);
    case Cmd::K::Par: return ps_par(promote(c->c1), promote(c->c2));
    case Cmd::K::Let: return ps_let(c->fname, c->params, c->c1, promote(c->c2));
    default: return ps_cmd(c);
  }
}

bool ps_is_done(const PStateP& p) { return p->k == PState::K::Done; }

bool ps_eq(const PStateP& a, const PStateP& b) {
  if (a == b) return true;
  if (a->k != b->k) return false;
  switch (a->k) {
    case PState::K::Done: return true;
    case PState::K::CmdS: return cmd_eq(a->cmd, b->cmd);
    case PState::K::Scoped: return a->frame == b->frame && ps_eq(a->p1, b->p1);
    case PState::K::SeqS: return ps_eq(a->p1, b->p1) && cmd_eq(a->cmd, b->cmd);
    case PState::K::LetS:
      return a->fname == b->fname && a->params == b->params &&
             cmd_eq(a->fbody, b->fbody) && ps_eq(a->p1, b->p1);
    case PState::K::ParS: return ps_eq(a->p1, b->p1) && ps_eq(a->p2, b->p2);
  }
  return false;
}

std::string ps_str(const PStateP& p) {
  switch (p->k) {
    case PState::K::Done: return "OK";
    case PState::K::CmdS: return "[" + compact(cmd_str(p->cmd)) + "]";
    case PState::K::Scoped:
      return "(" + store_str(p->frame) + ", " + ps_str(p->p1) + ")";
    case PState::K::SeqS:
      return ps_str(p->p1) + " ; [" + compact(cmd_str(p->cmd)) + "]";
    case PState::K::LetS: return "let " + p->fname + " in " + ps_str(p->p1);
    case PState::K::ParS:
      return "(" + ps_str(p->p1) + " || " + ps_str(p->p2) + ")";
  }
  return "?";
}

namespace {
void prefix_into(char tag, const std::vector<std::string>& in,
                 std::vector<std::string>& out) {
  for (const auto& t : in) out.push_back(tag + t);
}
}  // namespace

std::vector<std::string> threads_of(const PStateP& p) {
  switch (p->k) {
    case PState::K::Done: return {};
    case PState::K::CmdS: return {""};
    case PState::K::Scoped: return threads_of(p->p1);
    case PState::K::SeqS:
      if (ps_is_done(p->p1)) return {""};
      return threads_of(p->p1);
    case PState::K::LetS: return threads_of(p->p1);
    case PState::K::ParS: {
      if (ps_is_done(p->p1) && ps_is_done(p->p2)) return {""};
      std::vector<std::string> out;
      prefix_into('L', threads_of(p->p1), out);
      prefix_into('R', threads_of(p->p2), out);
      return out;
    }
  }
  return {};
}

std::vector<std::string> candidate_locs(const PStateP& p) {
  switch (p->k) {
    case PState::K::Done: return {};
    case PState::K::CmdS: return {""};
    case PState::K::Scoped:
      if (ps_is_done(p->p1)) return {""};
      return candidate_locs(p->p1);
    case PState::K::SeqS:
      if (ps_is_done(p->p1)) return {""};
      return candidate_locs(p->p1);
    case PState::K::LetS:
      if (ps_is_done(p->p1)) return {""};
      return candidate_locs(p->p1);
    case PState::K::ParS: {
      if (ps_is_done(p->p1) && ps_is_done(p->p2)) return {""};
      std::vector<std::string> out;
      prefix_into('L', candidate_locs(p->p1), out);
      prefix_into('R', candidate_locs(p->p2), out);
      return out;
    }
  }
  return {};
}

}  // namespace fc
