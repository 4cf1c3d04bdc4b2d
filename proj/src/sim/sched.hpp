#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lang/step.hpp"

namespace fc {

// A parsed schedule file: one label per line (".", "L", "RL", "env", ...),
// with an optional `repeat` line marking where the tail loops forever.
struct SchedScript {
  std::vector<Label> labels;
  std::optional<size_t> repeat_at;
};
SchedScript parse_sched(std::string_view text);

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  // locs: thread paths that can actually step now; env_allowed: whether an
  // environment step may be chosen. Must return one of them.
  virtual Label pick(const std::vector<std::string>& locs, bool env_allowed) = 0;
  // Lasso detection only applies when future picks depend on nothing but
  // state_key() and the configuration.
  virtual bool deterministic() const = 0;
  virtual std::string state_key() const = 0;
  virtual std::string name() const = 0;
};

std::unique_ptr<Scheduler> make_round_robin();
// Uniform random picks, except that any runnable label left unscheduled for
// `window` consecutive steps is forced next (keeps finite prefixes fair).
std::unique_ptr<Scheduler> make_random_fair(uint64_t seed, size_t window = 64);
std::unique_ptr<Scheduler> make_scripted(SchedScript script);

}  // namespace fc
