#pragma once

#include <cstdint>
#include <vector>

#include "persim/rng.hpp"

namespace persim {

/// Open-addressing hash map from packed lattice sites to a (count, payload)
/// slot. clear() is an epoch bump, so reuse across trials costs nothing.
class SiteTable {
 public:
  struct Slot {
    std::uint64_t key;
    std::uint64_t epoch;
    std::int64_t count;
    double payload;
  };

  explicit SiteTable(std::size_t expected = 64) { rehash(capacity_for(expected)); }

  void clear() {
    ++epoch_;
    size_ = 0;
  }

  /// Slot for `key`, inserting a fresh one (count 0, payload 0) if absent.
  Slot& touch(std::uint64_t key) {
    if (2 * (size_ + 1) > slots_.size()) grow();
    std::size_t i = mix64(key) & mask_;
    while (true) {
      Slot& s = slots_[i];
      if (s.epoch != epoch_) {
        s = Slot{key, epoch_, 0, 0.0};
        ++size_;
        return s;
      }
      if (s.key == key) return s;
      i = (i + 1) & mask_;
    }
  }

  /// Lookup without insertion; nullptr when absent.
  const Slot* find(std::uint64_t key) const {
    std::size_t i = mix64(key) & mask_;
    while (true) {
      const Slot& s = slots_[i];
      if (s.epoch != epoch_) return nullptr;
      if (s.key == key) return &s;
      i = (i + 1) & mask_;
    }
  }

  std::size_t size() const { return size_; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Slot& s : slots_)
      if (s.epoch == epoch_) fn(s);
  }

 private:
  static std::size_t capacity_for(std::size_t expected) {
    std::size_t c = 64;
    while (c < 2 * expected) c <<= 1;
    return c;
  }

  void rehash(std::size_t cap) {
    slots_.assign(cap, Slot{0, 0, 0, 0.0});
    mask_ = cap - 1;
    epoch_ = 1;
    size_ = 0;
  }

  void grow() {
    std::vector<Slot> old;
    old.swap(slots_);
    const std::uint64_t old_epoch = epoch_;
    rehash(old.size() * 2);
    for (const Slot& s : old)
      if (s.epoch == old_epoch) touch(s.key) = Slot{s.key, epoch_, s.count, s.payload};
  }

  std::vector<Slot> slots_;
  std::size_t mask_ = 0;
  std::uint64_t epoch_ = 1;
  std::size_t size_ = 0;
};

}  // namespace persim
