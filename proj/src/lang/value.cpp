#include "lang/value.hpp"

#include <algorithm>

namespace fc {

std::string Val::str() const {
  if (is_bool()) return n ? "true" : "false";
  return std::to_string(n);
}

std::string store_str(const Store& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s) {
    if (!first) out += ", ";
    first = false;
    out += k + "=" + v.str();
  }
  return out + "}";
}

std::string heap_str(const Heap& h) {
  std::string out = "{";
  bool first = true;
  for (const auto& [a, v] : h) {
    if (!first) out += ", ";
    first = false;
    out += "[" + std::to_string(a) + "]=" + v.str();
  }
  return out + "}";
}

}  // namespace fc
