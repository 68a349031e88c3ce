#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minexp {

inline constexpr const char* kVersion = "0.1.0";

using Vertex = std::uint32_t;

// ---------------------------------------------------------------------------
// Errors. Every failure mode named by an operation contract has its own type so
// callers (and the CLI exit-code mapping) can branch on it.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class NotConnectedError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// A lemma hypothesis was observed to fail at runtime.
class HypothesisError : public Error {
 public:
  explicit HypothesisError(const std::string& what, std::vector<Vertex> witness = {})
      : Error(what), witness_(std::move(witness)) {}
  const std::vector<Vertex>& witness() const { return witness_; }

 private:
  std::vector<Vertex> witness_;
};

// Something a proof guarantees did not happen.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class PatternTooLargeError : public Error {
 public:
  using Error::Error;
};

class EmbeddingFailedError : public Error {
 public:
  using Error::Error;
};

class RandomnessFailureError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// VertexSet: sorted, duplicate-free list of vertex ids. Range against a graph is
// checked by the graph operations that consume it.
// ---------------------------------------------------------------------------

class VertexSet {
 public:
  using const_iterator = std::vector<Vertex>::const_iterator;

  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : ids_(ids) { normalize(); }
  explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) { normalize(); }

  // Caller guarantees `ids` is already sorted and unique.
  static VertexSet from_sorted(std::vector<Vertex> ids) {
    VertexSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  static VertexSet range(std::size_t n) {
    std::vector<Vertex> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<Vertex>(i);
    return from_sorted(std::move(ids));
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const_iterator begin() const { return ids_.begin(); }
  const_iterator end() const { return ids_.end(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  Vertex front() const { return ids_.front(); }
  Vertex back() const { return ids_.back(); }
  const std::vector<Vertex>& ids() const { return ids_; }

  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

  VertexSet set_union(const VertexSet& other) const {
    std::vector<Vertex> out;
    out.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  VertexSet set_difference(const VertexSet& other) const {
    std::vector<Vertex> out;
    std::set_difference(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  VertexSet set_intersection(const VertexSet& other) const {
    std::vector<Vertex> out;
    std::set_intersection(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  bool intersects(const VertexSet& other) const {
    auto a = begin();
    auto b = other.begin();
    while (a != end() && b != other.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<Vertex> ids_;
};

// ---------------------------------------------------------------------------
// VertexMask: fixed-width bitset over [0, n). Used for membership tests in the
// subset-heavy routines.
// ---------------------------------------------------------------------------

class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n, bool value = false)
      : n_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }
  VertexMask(std::size_t n, const VertexSet& s) : VertexMask(n) {
    for (Vertex v : s) set(v);
  }

  std::size_t universe() const { return n_; }
  bool test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void reset(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  VertexSet to_set() const {
    std::vector<Vertex> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return VertexSet::from_sorted(std::move(out));
  }

  // Smallest member, or universe() when empty.
  std::size_t first() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      if (words_[wi] != 0) return wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi]));
    }
    return n_;
  }

 private:
  void trim() {
    if (n_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// Randomness. The engine is std::mt19937_64 (fully specified by the standard);
// the distributions below are hand-written because the standard library's are
// implementation-defined, and outputs must be bit-identical across platforms.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Named sub-seed derivation: derive_seed(seed, "retry", 3) etc.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

inline std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag, std::uint64_t index = 0) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return derive_seed(derive_seed(seed, h), index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Threshold arithmetic. Size thresholds such as alpha*n/t are compared without
// rounding the real-valued side first: `k <= num/den` is evaluated as
// `k*den <= num` with a relative slack that only absorbs binary representation
// error of decimal inputs (0.1*30 vs 3).
// ---------------------------------------------------------------------------

inline constexpr double kRelSlack = 1e-12;

inline bool at_most(double k, double num, double den) {
  return k * den <= num + std::abs(num) * kRelSlack;
}

// Largest integer k >= 0 with k <= num/den (den > 0).
inline std::size_t floor_ratio(double num, double den) {
  if (!(num > 0.0)) return 0;
  double q = std::floor(num / den);
  if (!std::isfinite(q) || q > 9.0e15) return static_cast<std::size_t>(9.0e15);
  auto k = static_cast<std::size_t>(std::max(0.0, q));
  while (at_most(static_cast<double>(k + 1), num, den)) ++k;
  while (k > 0 && !at_most(static_cast<double>(k), num, den)) --k;
  return k;
}

// Smallest integer k >= 0 with k >= num/den (den > 0).
inline std::size_t ceil_ratio(double num, double den) {
  std::size_t k = floor_ratio(num, den);
  if (static_cast<double>(k) * den >= num - std::abs(num) * kRelSlack) return k;
  return k + 1;
}

// sum_{k=1..cap} C(n,k) as a double, saturating; used for enumeration budgets.
inline double subset_count(std::size_t n, std::size_t cap) {
  double total = 0.0;
  double term = 1.0;
  for (std::size_t k = 1; k <= cap && k <= n; ++k) {
    term = term * static_cast<double>(n - k + 1) / static_cast<double>(k);
    total += term;
    if (total > 1e300) return 1e300;
  }
  return total;
}

}  // namespace minexp
