#pragma once

// Deterministic synthetic databases.  The generator is built on splitmix64
// with fixed constants and integer-only value mapping (modulo reduction), so
// identical parameters produce bit-identical databases on every platform.
// Quantities are uniform in [1,5]; profits are integers in [1,1000] drawn
// log-skewed (a uniform decade, then a uniform value inside it).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "duos/database.hpp"

namespace duos {

class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); modulo reduction on purpose — bit-exact beats unbiased
  // for reproducible test data.
  uint64_t below(uint64_t n) { return next() % n; }

private:
  uint64_t state_;
};

struct GenParams {
  size_t items = 10;
  size_t sequences = 100;
  uint64_t seed = 1;
  size_t max_itemsets = 8;       // itemsets per sequence, uniform in [1, max]
  size_t max_itemset_size = 4;   // items per itemset, uniform in [1, max]
};

inline SequenceDatabase generate_database(const GenParams& p) {
  if (p.items == 0 || p.sequences == 0)
    throw std::invalid_argument("generator needs at least one item and one sequence");
  if (p.max_itemsets == 0 || p.max_itemset_size == 0)
    throw std::invalid_argument("generator shape limits must be positive");

  SplitMix64 rng(p.seed);
  SequenceDatabase db;
  for (size_t i = 0; i < p.items; ++i) {
    uint64_t decade = rng.below(3);
    Money lo = decade == 0 ? 1 : decade == 1 ? 10 : 100;
    Money hi = decade == 0 ? 9 : decade == 1 ? 99 : 1000;
    Money profit = lo + static_cast<Money>(rng.below(static_cast<uint64_t>(hi - lo + 1)));
    db.profits.intern("i" + std::to_string(i), profit);
  }

  std::vector<ItemId> pool(p.items);
  for (size_t i = 0; i < p.items; ++i) pool[i] = static_cast<ItemId>(i);

  for (size_t sid = 0; sid < p.sequences; ++sid) {
    size_t n_itemsets = 1 + static_cast<size_t>(rng.below(p.max_itemsets));
    // Items are unique per sequence, so itemset sizes are clamped to the
    // remaining alphabet capacity.
    std::vector<size_t> sizes;
    size_t capacity = p.items;
    for (size_t k = 0; k < n_itemsets && capacity > 0; ++k) {
      size_t sz = 1 + static_cast<size_t>(rng.below(p.max_itemset_size));
      sz = std::min(sz, capacity);
      sizes.push_back(sz);
      capacity -= sz;
    }
    size_t total = p.items - capacity;

    // Partial Fisher-Yates: the first `total` slots become the drawn items.
    for (size_t k = 0; k < total; ++k) {
      size_t j = k + static_cast<size_t>(rng.below(p.items - k));
      std::swap(pool[k], pool[j]);
    }

    QSequence seq;
    size_t cursor = 0;
    for (size_t k = 0; k < sizes.size(); ++k) {
      QItemset is;
      for (size_t t = 0; t < sizes[k]; ++t) {
        long long qty = 1 + static_cast<long long>(rng.below(5));
        is.push_back(QItem{pool[cursor++], qty});
      }
      std::sort(is.begin(), is.end(),
                [](const QItem& a, const QItem& b) { return a.item < b.item; });
      seq.itemsets.push_back(std::move(is));
    }
    seq.finalize(db.profits);
    db.sequences.push_back(std::move(seq));
  }
  return db;
}

}  // namespace duos
