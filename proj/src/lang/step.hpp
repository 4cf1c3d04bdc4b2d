#pragma once
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lang/state.hpp"

namespace fc {

// Step labels: an environment step, or a local step at a thread path.
struct Label {
  bool env = false;
  std::string path;  // L/R path; "" is the root thread
};
std::string label_str(const Label& l);
std::optional<Label> label_parse(std::string_view s);

struct Config {
  bool fault = false;
  Store store;
  Heap heap;
  PStateP state;  // null when fault
};
bool config_eq(const Config& a, const Config& b);
std::string config_str(const Config& c);

// Function environment threaded through function scopes.
using FunCtxt = std::map<std::string, std::pair<std::vector<std::string>, CmdP>>;

struct StepOptions {
  enum class AllocMode { Lowest, Enumerate };
  AllocMode alloc_mode = AllocMode::Lowest;
  int64_t addr_lo = 1;   // Lowest: first address tried; Enumerate/env: window start
  int64_t addr_hi = 9;   // Enumerate/env: one past the window end
  std::vector<Val> alloc_values;  // Enumerate: fresh-cell contents (empty: just 0)
  std::vector<Val> env_values;    // env_succs: cell contents over the window
  bool env_include_fault = true;
  size_t atomic_fuel = 200000;    // visited-configuration cap inside < ... >
};

struct FuelExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All successors of a local step taken at exactly `path`; empty when no step
// is available there (finished or stuck). Fault successors have fault=true.
std::vector<Config> loc_succs(const Store& s, const Heap& h, const PStateP& p,
                              const FunCtxt& phi, std::string_view path,
                              const StepOptions& opt);

// All environment successors: every heap over the window with cells drawn
// from env_values (store and pool untouched), plus fault when enabled.
std::vector<Config> env_succs(const Store& s, const Heap& h, const PStateP& p,
                              const StepOptions& opt);

// Initial configuration for a program: free variables zero-initialized,
// empty heap.
Config init_config(const CmdP& c);

}  // namespace fc
