#pragma once
#include "sim/sched.hpp"

namespace fc {

// One environment heap edit; a havoc script is applied one edit per env step
// (exhausted scripts stutter). Text form: `[5] = 3` or `del 5`, one per line.
struct EnvEdit {
  bool del = false;
  int64_t addr = 0;
  Val v = Val::integer(0);
};
std::vector<EnvEdit> parse_env_script(std::string_view text);

struct EnvPolicy {
  bool open = false;            // closed world: env is never scheduled
  std::vector<EnvEdit> script;
};

struct RunOpts {
  size_t fuel = 20000;
  StepOptions step;
  EnvPolicy env;
  bool collect_trace = false;
};

struct RunResult {
  enum class Outcome { Terminated, Fault, Lasso, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  size_t steps = 0;
  size_t lasso_start = 0, lasso_len = 0;   // when Lasso
  std::vector<std::string> starved;        // runnable through the whole cycle, never picked
  std::string reason;                      // when Inconclusive: fuel | stuck | atomic-fuel
  Config final_config;
  std::vector<std::string> trace;          // when collect_trace
};

const char* outcome_str(RunResult::Outcome o);

std::string store_diff(const Store& before, const Store& after);
std::string heap_diff(const Heap& before, const Heap& after);

RunResult run_trace(const CmdP& prog, Scheduler& sched, const RunOpts& opts);

}  // namespace fc
