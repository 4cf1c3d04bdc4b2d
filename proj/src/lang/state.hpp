#pragma once
#include <memory>

#include "lang/ast.hpp"
#include "lang/value.hpp"

namespace fc {

struct PState;
using PStateP = std::shared_ptr<const PState>;

// Runtime thread-pool states. A running program is a tree: parallel branches,
// sequencing with a pending tail command, local-scope frames, function scopes
// and leaf commands that have not started yet. Done marks a finished subtree.
struct PState {
  enum class K { Done, CmdS, Scoped, SeqS, LetS, ParS };
  K k = K::Done;
  CmdP cmd;                          // CmdS: the command; SeqS: the pending tail
  Store frame;                       // Scoped: the local store
  PStateP p1, p2;                    // Scoped/SeqS/LetS: p1; ParS: both
  std::string fname;                 // LetS
  std::vector<std::string> params;   // LetS
  CmdP fbody;                        // LetS
};

PStateP ps_done();
PStateP ps_cmd(CmdP c);  // leaf; callers should route fresh commands via promote
PStateP ps_scoped(Store frame, PStateP p);
PStateP ps_seq(PStateP p, CmdP tail);
PStateP ps_let(std::string f, std::vector<std::string> params, CmdP body, PStateP p);
PStateP ps_par(PStateP a, PStateP b);

// Canonical embedding of a command into the pool: sequencing, parallel and
// function scopes become pool structure immediately, so both branches of a
// parallel are schedulable from the start. Leaves stay commands.
PStateP promote(const CmdP& c);

bool ps_is_done(const PStateP& p);
bool ps_eq(const PStateP& a, const PStateP& b);
std::string ps_str(const PStateP& p);  // deterministic one-line rendering

// Thread identifiers: L/R paths into the pool tree, "" for the root. This is
// the set the fairness audit quantifies over.
std::vector<std::string> threads_of(const PStateP& p);

// Paths at which a local step may be attempted. Includes the administrative
// eliminations of finished scope/function frames, which threads_of omits.
std::vector<std::string> candidate_locs(const PStateP& p);

}  // namespace fc
