#include "sim/sched.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "support/lex.hpp"

namespace fc {

SchedScript parse_sched(std::string_view text) {
  SchedScript out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find("//"); pos != std::string::npos) line.erase(pos);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
      line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line == "repeat") {
      if (out.repeat_at) throw ParseError("duplicate repeat marker", lineno, 1);
      out.repeat_at = out.labels.size();
      continue;
    }
    auto l = label_parse(line);
    if (!l) throw ParseError("bad schedule label '" + line + "'", lineno, 1);
    out.labels.push_back(*l);
  }
  if (out.repeat_at && *out.repeat_at >= out.labels.size())
    throw ParseError("repeat marker must precede at least one label", lineno, 1);
  return out;
}

namespace {

std::vector<std::string> universe(const std::vector<std::string>& locs, bool env) {
  std::vector<std::string> u = locs;
  std::sort(u.begin(), u.end());
  if (env) u.push_back("env");  // sorts last: paths are '.', 'L', 'R' strings
  return u;
}

Label to_label(const std::string& s) {
  if (s == "env") return Label{true, ""};
  return Label{false, s == "." ? "" : s};
}

class RoundRobin final : public Scheduler {
 public:
  Label pick(const std::vector<std::string>& locs, bool env_allowed) override {
    auto u = universe(locs, env_allowed);
    auto it = std::upper_bound(u.begin(), u.end(), last_);
    if (it == u.end()) it = u.begin();
    last_ = *it;
    return to_label(last_);
  }
  bool deterministic() const override { return true; }
  std::string state_key() const override { return last_; }
  std::string name() const override { return "round_robin"; }

 private:
  std::string last_;
};

class RandomFair final : public Scheduler {
 public:
  RandomFair(uint64_t seed, size_t window) : rng_(seed), window_(window) {}

  Label pick(const std::vector<std::string>& locs, bool env_allowed) override {
    auto u = universe(locs, env_allowed);
    // age every runnable label; drop the ones that went away
    std::map<std::string, size_t> next;
    for (const auto& l : u) {
      auto it = age_.find(l);
      next[l] = it == age_.end() ? 1 : it->second + 1;
    }
    age_ = std::move(next);
    std::string chosen;
    size_t oldest = 0;
    for (const auto& [l, a] : age_)
      if (a >= window_ && a > oldest) { oldest = a; chosen = l; }
    if (chosen.empty()) {
      std::uniform_int_distribution<size_t> d(0, u.size() - 1);
      chosen = u[d(rng_)];
    }
    age_[chosen] = 0;
    return to_label(chosen);
  }
  bool deterministic() const override { return false; }
  std::string state_key() const override { return ""; }
  std::string name() const override { return "random_fair"; }

 private:
  std::mt19937_64 rng_;
  size_t window_;
  std::map<std::string, size_t> age_;
};

class Scripted final : public Scheduler {
 public:
  explicit Scripted(SchedScript s) : script_(std::move(s)) {}

  Label pick(const std::vector<std::string>& locs, bool env_allowed) override {
    if (pos_ >= script_.labels.size() && script_.repeat_at)
      pos_ = *script_.repeat_at;
    if (pos_ < script_.labels.size()) {
      Label l = script_.labels[pos_++];
      bool ok = l.env ? env_allowed
                      : std::find(locs.begin(), locs.end(), l.path) != locs.end();
      if (ok) return l;
    }
    return fallback_.pick(locs, env_allowed);  // script gap: stay runnable
  }
  bool deterministic() const override { return true; }
  std::string state_key() const override {
    size_t p = pos_;
    if (p >= script_.labels.size() && script_.repeat_at) p = *script_.repeat_at;
    return std::to_string(p) + "/" + fallback_.state_key();
  }
  std::string name() const override { return "scripted"; }

 private:
  SchedScript script_;
  size_t pos_ = 0;
  RoundRobin fallback_;
};

}  // namespace

std::unique_ptr<Scheduler> make_round_robin() { return std::make_unique<RoundRobin>(); }
std::unique_ptr<Scheduler> make_random_fair(uint64_t seed, size_t window) {
  return std::make_unique<RandomFair>(seed, window);
}
std::unique_ptr<Scheduler> make_scripted(SchedScript script) {
  return std::make_unique<Scripted>(std::move(script));
}

}  // namespace fc
