#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fc {

// Fixed-size bitset over world ids of one world space.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(size_t n) : n_(n), bits_((n + 63) / 64, 0) {}

  size_t universe_size() const { return n_; }
  void set(int i) { bits_[static_cast<size_t>(i) >> 6] |= 1ull << (i & 63); }
  void reset(int i) { bits_[static_cast<size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
  bool test(int i) const { return bits_[static_cast<size_t>(i) >> 6] >> (i & 63) & 1; }

  bool empty() const {
    for (uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : bits_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  }

  WorldSet& operator|=(const WorldSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  WorldSet& operator&=(const WorldSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }

  bool subset_of(const WorldSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  bool intersects(const WorldSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & o.bits_[i]) return true;
    return false;
  }

  friend bool operator==(const WorldSet&, const WorldSet&) = default;

  // first id in this set but not in o, or -1
  int first_not_in(const WorldSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t d = bits_[i] & ~o.bits_[i];
      if (d) return static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(d)));
    }
    return -1;
  }

  std::vector<int> ids() const {
    std::vector<int> out;
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t w = bits_[i];
      while (w) {
        out.push_back(static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(w))));
        w &= w - 1;
      }
    }
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
      uint64_t w = bits_[i];
      while (w) {
        f(static_cast<int>(i * 64 + static_cast<size_t>(__builtin_ctzll(w))));
        w &= w - 1;
      }
    }
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace fc
