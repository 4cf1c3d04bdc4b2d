#pragma once
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fc {

// Program values: integers and booleans. Naturals double as heap addresses.
struct Val {
  enum class K : uint8_t { Int, Bool };
  K k = K::Int;
  int64_t n = 0;

  static Val integer(int64_t v) { return {K::Int, v}; }
  static Val boolean(bool v) { return {K::Bool, v ? 1 : 0}; }
  bool is_int() const { return k == K::Int; }
  bool is_bool() const { return k == K::Bool; }
  bool truth() const { return n != 0; }

  friend auto operator<=>(const Val&, const Val&) = default;
  std::string str() const;
};

// Sorted flat map; cheap to copy, deterministic to print.
template <class Key>
class FlatMap {
 public:
  using Entry = std::pair<Key, Val>;

  std::optional<Val> get(const Key& k) const {
    auto it = find(k);
    return it ? std::optional<Val>(it->second) : std::nullopt;
  }
  bool has(const Key& k) const { return find(k) != nullptr; }
  void set(const Key& k, Val v) {
    auto it = lower(k);
    if (it != m_.end() && it->first == k) it->second = v;
    else m_.insert(it, {k, v});
  }
  void erase(const Key& k) {
    auto it = lower(k);
    if (it != m_.end() && it->first == k) m_.erase(it);
  }
  size_t size() const { return m_.size(); }
  bool empty() const { return m_.empty(); }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }

  friend auto operator<=>(const FlatMap&, const FlatMap&) = default;

 private:
  const Entry* find(const Key& k) const {
    auto it = const_cast<FlatMap*>(this)->lower(k);
    if (it != m_.end() && it->first == k) return &*it;
    return nullptr;
  }
  typename std::vector<Entry>::iterator lower(const Key& k) {
    return std::lower_bound(m_.begin(), m_.end(), k,
                            [](const Entry& e, const Key& key) { return e.first < key; });
  }
  std::vector<Entry> m_;
};

using Store = FlatMap<std::string>;
using Heap = FlatMap<int64_t>;

std::string store_str(const Store& s);
std::string heap_str(const Heap& h);

}  // namespace fc
