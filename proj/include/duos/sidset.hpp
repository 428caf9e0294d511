#pragma once

// Fixed-width bit vector over sequence ids.  Intersection + popcount give
// itemset support without touching the data again.

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace duos {

class SidSet {
public:
  SidSet() = default;
  explicit SidSet(size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  size_t width() const { return width_; }

  void set(size_t sid) {
    check(sid);
    words_[sid >> 6] |= (uint64_t{1} << (sid & 63));
  }

  bool test(size_t sid) const {
    check(sid);
    return (words_[sid >> 6] >> (sid & 63)) & 1;
  }

  size_t count() const {
    size_t n = 0;
    for (uint64_t w : words_) n += static_cast<size_t>(std::popcount(w));
    return n;
  }

  SidSet& intersect(const SidSet& o) {
    if (o.width_ != width_) throw std::invalid_argument("sid set width mismatch");
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  friend SidSet operator&(SidSet a, const SidSet& b) { return a.intersect(b); }

  bool operator==(const SidSet& o) const { return width_ == o.width_ && words_ == o.words_; }
  bool operator!=(const SidSet& o) const { return !(*this == o); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t wi = 0; wi < words_.size(); ++wi) {
      uint64_t w = words_[wi];
      while (w) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(w));
        fn(wi * 64 + bit);
        w &= w - 1;
      }
    }
  }

private:
  void check(size_t sid) const {
    if (sid >= width_) throw std::out_of_range("sid out of range");
  }

  size_t width_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace duos
