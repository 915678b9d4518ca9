#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permlab/core.hpp"
#include "permlab/rng.hpp"
#include "permlab/samplers.hpp"
#include "permlab/stats.hpp"
#include "permlab/walks.hpp"

namespace permlab {

// Enumeration caps: exact verification only runs on instances whose vertex
// set (or class list) fits these; larger instances still support sampling,
// distances, and walks through closed forms.
inline constexpr uint64_t kMaxEnumerableVertices = 20000;
inline constexpr Label kMaxClassListN = 40;

namespace detail {

inline uint64_t factorial_u64(Label n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial_u64: n! exceeds 64 bits beyond n = 20");
  uint64_t f = 1;
  for (Label i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
  return f;
}

// Conjugacy class size n! / (prod lambda_i * prod mult_j!).
inline uint64_t symmetric_class_size(Label n, const Partition& lambda) {
  if (lambda.n() != n) throw std::invalid_argument("symmetric_class_size: partition size mismatch");
  uint64_t denom = 1;
  Label run = 0;
  Label prev = 0;
  for (const Label part : lambda.parts()) {
    denom *= static_cast<uint64_t>(part);
    if (part == prev) {
      ++run;
    } else {
      prev = part;
      run = 1;
    }
    denom *= static_cast<uint64_t>(run);  // accumulates mult! incrementally
  }
  return factorial_u64(n) / denom;
}

inline bool is_even_type(const Partition& lambda) {
  return (lambda.n() - lambda.length()) % 2 == 0;
}

// Number of permutations of each inversion count (Mahonian), exact in u64
// for n <= 20.
inline std::vector<uint64_t> mahonian_counts(Label n) {
  if (n < 1 || n > 20) throw std::invalid_argument("mahonian_counts: n outside 1..20");
  std::vector<uint64_t> counts{1};
  for (Label i = 2; i <= n; ++i) {
    // Multiply by 1 + q + ... + q^{i-1} via prefix sums.
    std::vector<uint64_t> next(counts.size() + static_cast<size_t>(i) - 1, 0);
    for (size_t k = 0; k < next.size(); ++k) {
      const size_t lo = k >= static_cast<size_t>(i) ? k - static_cast<size_t>(i) + 1 : 0;
      for (size_t s = lo; s <= k && s < counts.size(); ++s) next[k] += counts[s];
    }
    counts = std::move(next);
  }
  return counts;
}

inline int64_t inversion_count(const std::vector<Label>& word) {
  int64_t inv = 0;
  for (size_t i = 0; i < word.size(); ++i) {
    for (size_t j = i + 1; j < word.size(); ++j) {
      if (word[i] > word[j]) ++inv;
    }
  }
  return inv;
}

}  // namespace detail

// A locally finite graph with a partition of its vertices into classes and a
// distinguished target class. Vertices and class ids are flat label vectors
// so every instance shares one interface. Enumeration is only needed for the
// exact checkers; sampling, distances, and walks use closed forms.
class ClassifiedGraph {
 public:
  using Vertex = std::vector<Label>;
  using ClassId = std::vector<Label>;

  virtual ~ClassifiedGraph() = default;

  virtual std::string name() const = 0;
  virtual uint64_t vertex_count() const = 0;
  virtual bool enumerable() const { return vertex_count() <= kMaxEnumerableVertices; }
  virtual std::vector<Vertex> vertices() const = 0;
  virtual std::vector<Vertex> neighbors(const Vertex& v) const = 0;
  virtual ClassId class_of(const Vertex& v) const = 0;
  virtual std::vector<ClassId> classes() const = 0;
  virtual ClassId target_class() const = 0;
  virtual uint64_t class_size(const ClassId& c) const = 0;
  // Distance to the target class is constant on classes for every instance
  // here, so it is exposed at class granularity.
  virtual int64_t class_distance(const ClassId& c) const = 0;
  virtual Vertex sample_uniform(RandomSource& rng) const = 0;
  virtual Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const = 0;

  int64_t underline_d(const Vertex& v) const { return class_distance(class_of(v)); }

  // One uniformly random strictly-descending step (self-loop at the target
  // class). The default enumerates neighbors; instances with closed forms
  // override it with an exactly equidistributed draw so walks scale past
  // the enumeration caps.
  virtual Vertex descend(const Vertex& v, RandomSource& rng) const {
    const int64_t d = underline_d(v);
    if (d == 0) return v;
    std::vector<Vertex> descending;
    for (auto& u : neighbors(v)) {
      if (underline_d(u) == d - 1) descending.push_back(std::move(u));
    }
    if (descending.empty()) {
      throw std::runtime_error(name() + ": no descending neighbor at positive distance");
    }
    return descending[rng.below(descending.size())];
  }
};

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

// Cayley graph of the symmetric group generated by all transpositions;
// classes are cycle types, the target is the single n-cycle class.
class SymmetricTranspositionsGraph final : public ClassifiedGraph {
 public:
  explicit SymmetricTranspositionsGraph(Label n) : n_(n) {
    if (n < 2) throw std::invalid_argument("symmetric_transpositions: n must be at least 2");
  }

  std::string name() const override { return "sym-transp:" + std::to_string(n_); }
  uint64_t vertex_count() const override { return detail::factorial_u64(n_); }
  bool enumerable() const override { return n_ <= 7; }

  std::vector<Vertex> vertices() const override {
    if (!enumerable()) throw std::invalid_argument(name() + ": vertex enumeration cap exceeded");
    std::vector<Vertex> out;
    std::vector<Label> w(static_cast<size_t>(n_));
    std::iota(w.begin(), w.end(), 1);
    do {
      out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(n_) * (n_ - 1) / 2);
    for (Label i = 0; i < n_; ++i) {
      for (Label j = i + 1; j < n_; ++j) {
        Vertex u = v;
        std::swap(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)]);
        out.push_back(std::move(u));
      }
    }
    return out;
  }

  ClassId class_of(const Vertex& v) const override {
    return cycle_type(Permutation::from_one_line(v)).parts();
  }

  std::vector<ClassId> classes() const override {
    if (n_ > kMaxClassListN) throw std::invalid_argument(name() + ": class list cap exceeded");
    std::vector<ClassId> out;
    for (const auto& p : all_partitions(n_)) out.push_back(p.parts());
    return out;
  }

  ClassId target_class() const override { return {n_}; }

  uint64_t class_size(const ClassId& c) const override {
    return detail::symmetric_class_size(n_, Partition(c));
  }

  int64_t class_distance(const ClassId& c) const override { return static_cast<int64_t>(c.size()) - 1; }

  Vertex sample_uniform(RandomSource& rng) const override { return sample_uniform_word(rng); }

  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    return sample_cycle_type(Partition(c), rng).word();
  }

  // Descending neighbors are exactly the results of admissible merges, each
  // realized by one unordered admissible pair, so a uniform admissible pair
  // is a uniform descending neighbor.
  Vertex descend(const Vertex& v, RandomSource& rng) const override {
    const auto p = Permutation::from_one_line(v);
    if (cycle_count(p) == 1) return v;
    return merge_step(p, rng).word();
  }

  Label n() const { return n_; }

 private:
  Vertex sample_uniform_word(RandomSource& rng) const {
    return permlab::sample_uniform(n_, rng).word();
  }

  Label n_;
};

// Cayley graph of the symmetric group generated by adjacent transpositions;
// classes are inversion counts, the target class is ceil(n^2/4).
class SymmetricAdjacentGraph final : public ClassifiedGraph {
 public:
  explicit SymmetricAdjacentGraph(Label n) : n_(n) {
    if (n < 2) throw std::invalid_argument("sym-adj: n must be at least 2");
  }

  std::string name() const override { return "sym-adj:" + std::to_string(n_); }
  uint64_t vertex_count() const override { return detail::factorial_u64(n_); }
  bool enumerable() const override { return n_ <= 7; }

  std::vector<Vertex> vertices() const override {
    if (!enumerable()) throw std::invalid_argument(name() + ": vertex enumeration cap exceeded");
    std::vector<Vertex> out;
    std::vector<Label> w(static_cast<size_t>(n_));
    std::iota(w.begin(), w.end(), 1);
    do {
      out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(n_) - 1);
    for (size_t i = 0; i + 1 < v.size(); ++i) {
      Vertex u = v;
      std::swap(u[i], u[i + 1]);
      out.push_back(std::move(u));
    }
    return out;
  }

  ClassId class_of(const Vertex& v) const override {
    return {static_cast<Label>(detail::inversion_count(v))};
  }

  std::vector<ClassId> classes() const override {
    std::vector<ClassId> out;
    for (Label k = 0; k <= n_ * (n_ - 1) / 2; ++k) out.push_back({k});
    return out;
  }

  ClassId target_class() const override { return {static_cast<Label>((static_cast<int64_t>(n_) * n_ + 3) / 4)}; }

  uint64_t class_size(const ClassId& c) const override {
    const auto counts = detail::mahonian_counts(n_);
    const int64_t k = c.at(0);
    if (k < 0 || k >= static_cast<int64_t>(counts.size())) return 0;
    return counts[static_cast<size_t>(k)];
  }

  int64_t class_distance(const ClassId& c) const override {
    return std::abs(static_cast<int64_t>(c.at(0)) - target_class().at(0));
  }

  Vertex sample_uniform(RandomSource& rng) const override {
    return permlab::sample_uniform(n_, rng).word();
  }

  // Uniform permutation with a prescribed inversion count, via the exact
  // Lehmer-code distribution.
  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    int64_t k = c.at(0);
    if (class_size(c) == 0) throw std::invalid_argument("sym-adj: empty inversion class");
    // tables[m] = Mahonian counts for m symbols.
    std::vector<std::vector<uint64_t>> tables(static_cast<size_t>(n_) + 1);
    for (Label m = 1; m <= n_; ++m) tables[static_cast<size_t>(m)] = detail::mahonian_counts(m);
    std::vector<Label> code(static_cast<size_t>(n_), 0);
    for (Label pos = 0; pos < n_; ++pos) {
      const Label m = n_ - pos;  // symbols remaining
      if (m == 1) break;
      const auto& smaller = tables[static_cast<size_t>(m - 1)];
      uint64_t total = 0;
      // code value c at this position is admissible when the remaining
      // m-1 symbols can still realize k - c inversions.
      std::vector<uint64_t> weight(static_cast<size_t>(m), 0);
      for (Label cv = 0; cv < m; ++cv) {
        const int64_t rest = k - cv;
        if (rest >= 0 && rest < static_cast<int64_t>(smaller.size())) {
          weight[static_cast<size_t>(cv)] = smaller[static_cast<size_t>(rest)];
        }
        total += weight[static_cast<size_t>(cv)];
      }
      uint64_t r = rng.below(total);
      Label chosen = 0;
      while (r >= weight[static_cast<size_t>(chosen)]) {
        r -= weight[static_cast<size_t>(chosen)];
        ++chosen;
      }
      code[static_cast<size_t>(pos)] = chosen;
      k -= chosen;
    }
    // Materialize the word from the Lehmer code.
    std::vector<Label> pool(static_cast<size_t>(n_));
    std::iota(pool.begin(), pool.end(), 1);
    Vertex word;
    word.reserve(static_cast<size_t>(n_));
    for (Label pos = 0; pos < n_; ++pos) {
      const auto idx = static_cast<size_t>(code[static_cast<size_t>(pos)]);
      word.push_back(pool[idx]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return word;
  }

  Label n() const { return n_; }

 private:
  Label n_;
};

// Even permutations of an odd-size ground set, generated by all 3-cycles;
// classes are cycle types, the target is the single n-cycle.
class EvenThreeCyclesGraph final : public ClassifiedGraph {
 public:
  explicit EvenThreeCyclesGraph(Label n) : n_(n) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("even3: size must be odd and at least 3");
  }

  std::string name() const override { return "even3:" + std::to_string(n_); }
  uint64_t vertex_count() const override { return detail::factorial_u64(n_) / 2; }
  bool enumerable() const override { return n_ <= 7; }

  std::vector<Vertex> vertices() const override {
    if (!enumerable()) throw std::invalid_argument(name() + ": vertex enumeration cap exceeded");
    std::vector<Vertex> out;
    std::vector<Label> w(static_cast<size_t>(n_));
    std::iota(w.begin(), w.end(), 1);
    do {
      const auto p = Permutation::from_one_line(w);
      if ((n_ - cycle_count(p)) % 2 == 0) out.push_back(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    // sigma composed with each 3-cycle (a b c): images at a, b, c rotate.
    for (Label a = 1; a <= n_; ++a) {
      for (Label b = a + 1; b <= n_; ++b) {
        for (Label c = b + 1; c <= n_; ++c) {
          for (int orient = 0; orient < 2; ++orient) {
            Vertex u = v;
            const Label x = a, y = orient == 0 ? b : c, z = orient == 0 ? c : b;
            // compose(v, (x y z)): position x takes v[y], y takes v[z], z takes v[x].
            const Label vx = u[static_cast<size_t>(x - 1)];
            u[static_cast<size_t>(x - 1)] = u[static_cast<size_t>(y - 1)];
            u[static_cast<size_t>(y - 1)] = u[static_cast<size_t>(z - 1)];
            u[static_cast<size_t>(z - 1)] = vx;
            out.push_back(std::move(u));
          }
        }
      }
    }
    return out;
  }

  ClassId class_of(const Vertex& v) const override {
    return cycle_type(Permutation::from_one_line(v)).parts();
  }

  std::vector<ClassId> classes() const override {
    if (n_ > kMaxClassListN) throw std::invalid_argument(name() + ": class list cap exceeded");
    std::vector<ClassId> out;
    for (const auto& p : all_partitions(n_)) {
      if (detail::is_even_type(p)) out.push_back(p.parts());
    }
    return out;
  }

  ClassId target_class() const override { return {n_}; }

  uint64_t class_size(const ClassId& c) const override {
    const Partition lambda(c);
    if (!detail::is_even_type(lambda)) throw std::invalid_argument("even3: class is not an even cycle type");
    return detail::symmetric_class_size(n_, lambda);
  }

  int64_t class_distance(const ClassId& c) const override {
    const Partition lambda(c);
    if (!detail::is_even_type(lambda)) throw std::invalid_argument("even3: class is not an even cycle type");
    // Each 3-cycle changes the cycle count by -2, 0, or +2, and a merge of
    // three distinct cycles always exists while #(sigma) >= 3.
    return (static_cast<int64_t>(lambda.length()) - 1) / 2;
  }

  Vertex sample_uniform(RandomSource& rng) const override {
    auto w = permlab::sample_uniform(n_, rng).word();
    if ((n_ - cycle_count(Permutation::from_one_line(w))) % 2 != 0) std::swap(w[0], w[1]);
    return w;
  }

  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    const Partition lambda(c);
    if (!detail::is_even_type(lambda)) throw std::invalid_argument("even3: class is not an even cycle type");
    return sample_cycle_type(lambda, rng).word();
  }

  Label n() const { return n_; }

 private:
  Label n_;
};

// Hypercube (Z/2Z)^d with bit-flip edges; classes are Hamming weights, the
// target class is the middle layer d/2.
class HypercubeGraph final : public ClassifiedGraph {
 public:
  explicit HypercubeGraph(Label d) : d_(d) {
    if (d < 2 || d % 2 != 0) throw std::invalid_argument("hypercube: dimension must be even and at least 2");
  }

  std::string name() const override { return "hypercube:" + std::to_string(d_); }

  uint64_t vertex_count() const override {
    if (d_ > 63) throw std::overflow_error("hypercube: vertex count exceeds 64 bits");
    return uint64_t{1} << d_;
  }

  bool enumerable() const override { return d_ <= 14; }

  std::vector<Vertex> vertices() const override {
    if (!enumerable()) throw std::invalid_argument(name() + ": vertex enumeration cap exceeded");
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(vertex_count()));
    for (uint64_t bits = 0; bits < vertex_count(); ++bits) {
      Vertex v(static_cast<size_t>(d_));
      for (Label i = 0; i < d_; ++i) v[static_cast<size_t>(i)] = static_cast<Label>((bits >> i) & 1);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(d_));
    for (Label i = 0; i < d_; ++i) {
      Vertex u = v;
      u[static_cast<size_t>(i)] ^= 1;
      out.push_back(std::move(u));
    }
    return out;
  }

  ClassId class_of(const Vertex& v) const override {
    Label w = 0;
    for (const Label b : v) w = static_cast<Label>(w + b);
    return {w};
  }

  std::vector<ClassId> classes() const override {
    std::vector<ClassId> out;
    for (Label k = 0; k <= d_; ++k) out.push_back({k});
    return out;
  }

  ClassId target_class() const override { return {static_cast<Label>(d_ / 2)}; }

  uint64_t class_size(const ClassId& c) const override {
    const int64_t k = c.at(0);
    if (k < 0 || k > d_) return 0;
    unsigned __int128 result = 1;
    for (int64_t i = 1; i <= std::min(k, static_cast<int64_t>(d_) - k); ++i) {
      result = result * static_cast<unsigned __int128>(d_ - std::min(k, static_cast<int64_t>(d_) - k) + i) /
               static_cast<unsigned __int128>(i);
      if (result > static_cast<unsigned __int128>(UINT64_MAX)) {
        throw std::overflow_error("hypercube: class size exceeds 64 bits");
      }
    }
    return static_cast<uint64_t>(result);
  }

  int64_t class_distance(const ClassId& c) const override { return std::abs(static_cast<int64_t>(c.at(0)) - d_ / 2); }

  // Flip a uniformly random bit on the majority side of the middle layer.
  Vertex descend(const Vertex& v, RandomSource& rng) const override {
    Label weight = 0;
    for (const Label b : v) weight = static_cast<Label>(weight + b);
    if (weight == d_ / 2) return v;
    const Label wanted = weight > d_ / 2 ? 1 : 0;
    const Label options = wanted == 1 ? weight : static_cast<Label>(d_ - weight);
    auto pick = static_cast<int64_t>(rng.below(static_cast<uint64_t>(options)));
    Vertex u = v;
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i] == wanted && pick-- == 0) {
        u[i] ^= 1;
        return u;
      }
    }
    throw std::logic_error("hypercube: descend bookkeeping failed");
  }

  Vertex sample_uniform(RandomSource& rng) const override {
    Vertex v(static_cast<size_t>(d_));
    for (auto& b : v) b = static_cast<Label>(rng.below(2));
    return v;
  }

  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    const int64_t k = c.at(0);
    if (k < 0 || k > d_) throw std::invalid_argument("hypercube: weight outside 0..d");
    std::vector<Label> idx(static_cast<size_t>(d_));
    std::iota(idx.begin(), idx.end(), 0);
    Vertex v(static_cast<size_t>(d_), 0);
    for (int64_t t = 0; t < k; ++t) {
      const auto pick = t + static_cast<int64_t>(rng.below(static_cast<uint64_t>(d_ - t)));
      std::swap(idx[static_cast<size_t>(t)], idx[static_cast<size_t>(pick)]);
      v[static_cast<size_t>(idx[static_cast<size_t>(t)])] = 1;
    }
    return v;
  }

  Label dimension() const { return d_; }

 private:
  Label d_;
};

// Dihedral group of the given (even) order with the reflection generators;
// classes are {rotations, reflections}, the target is the rotations.
class DihedralGraph final : public ClassifiedGraph {
 public:
  explicit DihedralGraph(Label order) : order_(order) {
    if (order < 2 || order % 2 != 0) throw std::invalid_argument("dihedral: order must be even and at least 2");
  }

  std::string name() const override { return "dihedral:" + std::to_string(order_); }
  uint64_t vertex_count() const override { return static_cast<uint64_t>(order_); }

  std::vector<Vertex> vertices() const override {
    std::vector<Vertex> out;
    const Label n = order_ / 2;
    for (Label t = 0; t <= 1; ++t) {
      for (Label i = 0; i < n; ++i) out.push_back({t, i});
    }
    return out;
  }

  // Group law: r_i r_j = r_{i+j}, r_i s_j = s_{i+j}, s_i r_j = s_{i-j},
  // s_i s_j = r_{i-j} (indices mod n).
  Vertex multiply(const Vertex& a, const Vertex& b) const {
    const Label n = order_ / 2;
    const Label t1 = a.at(0), i = a.at(1);
    const Label t2 = b.at(0), j = b.at(1);
    const auto mod = [n](Label x) { return static_cast<Label>(((x % n) + n) % n); };
    if (t1 == 0 && t2 == 0) return {0, mod(static_cast<Label>(i + j))};
    if (t1 == 0 && t2 == 1) return {1, mod(static_cast<Label>(i + j))};
    if (t1 == 1 && t2 == 0) return {1, mod(static_cast<Label>(i - j))};
    return {0, mod(static_cast<Label>(i - j))};
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    const Label n = order_ / 2;
    std::vector<Vertex> out;
    out.reserve(static_cast<size_t>(n));
    for (Label j = 0; j < n; ++j) out.push_back(multiply(v, {1, j}));
    return out;
  }

  ClassId class_of(const Vertex& v) const override { return {v.at(0)}; }
  std::vector<ClassId> classes() const override { return {{0}, {1}}; }
  ClassId target_class() const override { return {0}; }
  uint64_t class_size(const ClassId&) const override { return static_cast<uint64_t>(order_ / 2); }
  int64_t class_distance(const ClassId& c) const override { return c.at(0); }

  Vertex sample_uniform(RandomSource& rng) const override {
    const Label n = order_ / 2;
    const auto r = rng.below(static_cast<uint64_t>(order_));
    return {static_cast<Label>(r / static_cast<uint64_t>(n)), static_cast<Label>(r % static_cast<uint64_t>(n))};
  }

  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    return {c.at(0), static_cast<Label>(rng.below(static_cast<uint64_t>(order_ / 2)))};
  }

 private:
  Label order_;
};

// Colored permutations (sigma, phi) with transposition edges acting on sigma
// only; classes are the cycle type of sigma, the target is the n-cycle class.
// A vertex is the word of sigma followed by the n color labels.
class ColoredPermutationGraph final : public ClassifiedGraph {
 public:
  ColoredPermutationGraph(Label n, Label m) : n_(n), m_(m) {
    if (n < 2 || m < 1) throw std::invalid_argument("colored: need n >= 2 and m >= 1");
  }

  std::string name() const override { return "colored:" + std::to_string(n_) + ":" + std::to_string(m_); }

  uint64_t vertex_count() const override {
    unsigned __int128 total = detail::factorial_u64(n_);
    for (Label i = 0; i < n_; ++i) {
      total *= static_cast<unsigned __int128>(m_);
      if (total > static_cast<unsigned __int128>(UINT64_MAX)) {
        throw std::overflow_error("colored: vertex count exceeds 64 bits");
      }
    }
    return static_cast<uint64_t>(total);
  }

  bool enumerable() const override {
    if (n_ > 8) return false;
    unsigned __int128 total = detail::factorial_u64(n_);
    for (Label i = 0; i < n_; ++i) {
      total *= static_cast<unsigned __int128>(m_);
      if (total > kMaxEnumerableVertices) return false;
    }
    return true;
  }

  std::vector<Vertex> vertices() const override {
    if (!enumerable()) throw std::invalid_argument(name() + ": vertex enumeration cap exceeded");
    std::vector<Vertex> out;
    std::vector<Label> w(static_cast<size_t>(n_));
    std::iota(w.begin(), w.end(), 1);
    do {
      std::vector<Label> colors(static_cast<size_t>(n_), 1);
      while (true) {
        Vertex v = w;
        v.insert(v.end(), colors.begin(), colors.end());
        out.push_back(std::move(v));
        // Odometer over colors.
        size_t pos = 0;
        while (pos < colors.size() && colors[pos] == m_) {
          colors[pos] = 1;
          ++pos;
        }
        if (pos == colors.size()) break;
        ++colors[pos];
      }
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    for (Label i = 0; i < n_; ++i) {
      for (Label j = i + 1; j < n_; ++j) {
        Vertex u = v;
        std::swap(u[static_cast<size_t>(i)], u[static_cast<size_t>(j)]);
        out.push_back(std::move(u));
      }
    }
    return out;
  }

  ClassId class_of(const Vertex& v) const override {
    return cycle_type(Permutation::from_one_line(word_part(v))).parts();
  }

  std::vector<ClassId> classes() const override {
    if (n_ > kMaxClassListN) throw std::invalid_argument(name() + ": class list cap exceeded");
    std::vector<ClassId> out;
    for (const auto& p : all_partitions(n_)) out.push_back(p.parts());
    return out;
  }

  ClassId target_class() const override { return {n_}; }

  uint64_t class_size(const ClassId& c) const override {
    unsigned __int128 size = detail::symmetric_class_size(n_, Partition(c));
    for (Label i = 0; i < n_; ++i) {
      size *= static_cast<unsigned __int128>(m_);
      if (size > static_cast<unsigned __int128>(UINT64_MAX)) {
        throw std::overflow_error("colored: class size exceeds 64 bits");
      }
    }
    return static_cast<uint64_t>(size);
  }

  int64_t class_distance(const ClassId& c) const override { return static_cast<int64_t>(c.size()) - 1; }

  Vertex sample_uniform(RandomSource& rng) const override {
    auto v = permlab::sample_uniform(n_, rng).word();
    append_uniform_colors(v, rng);
    return v;
  }

  Vertex sample_uniform_in_class(const ClassId& c, RandomSource& rng) const override {
    auto v = sample_cycle_type(Partition(c), rng).word();
    append_uniform_colors(v, rng);
    return v;
  }

  ColoredPermutation to_colored(const Vertex& v) const {
    return {Permutation::from_one_line(word_part(v)),
            std::vector<Label>(v.begin() + n_, v.end()), m_};
  }

  Label n() const { return n_; }
  Label num_colors() const { return m_; }

 private:
  std::vector<Label> word_part(const Vertex& v) const {
    if (static_cast<Label>(v.size()) != 2 * n_) throw std::invalid_argument("colored: malformed vertex");
    return std::vector<Label>(v.begin(), v.begin() + n_);
  }

  void append_uniform_colors(Vertex& v, RandomSource& rng) const {
    for (Label i = 0; i < n_; ++i) v.push_back(static_cast<Label>(rng.below(static_cast<uint64_t>(m_))) + 1);
  }

  Label n_;
  Label m_;
};

inline SymmetricTranspositionsGraph symmetric_transpositions(Label n) { return SymmetricTranspositionsGraph(n); }
inline SymmetricAdjacentGraph symmetric_adjacent(Label n) { return SymmetricAdjacentGraph(n); }
inline EvenThreeCyclesGraph even_3cycles(Label n) { return EvenThreeCyclesGraph(n); }
inline HypercubeGraph hypercube(Label d) { return HypercubeGraph(d); }
inline DihedralGraph dihedral(Label order) { return DihedralGraph(order); }
inline ColoredPermutationGraph colored_graph(Label n, Label m) { return ColoredPermutationGraph(n, m); }

// ---------------------------------------------------------------------------
// Property checkers
// ---------------------------------------------------------------------------

// Class-to-class neighbor multiplicities, or a violating same-class vertex
// pair when the count is not constant on a class.
struct RegularityReport {
  bool pass = false;
  std::map<std::pair<ClassifiedGraph::ClassId, ClassifiedGraph::ClassId>, int64_t> e;
  ClassifiedGraph::ClassId witness_class;
  ClassifiedGraph::Vertex witness_a;
  ClassifiedGraph::Vertex witness_b;
  std::string detail;
};

inline RegularityReport verify_regularity(const ClassifiedGraph& g) {
  if (!g.enumerable()) throw std::invalid_argument(g.name() + ": too large for exact regularity check");
  RegularityReport report;
  report.pass = true;

  using Profile = std::map<ClassifiedGraph::ClassId, int64_t>;
  std::map<ClassifiedGraph::ClassId, std::pair<ClassifiedGraph::Vertex, Profile>> reference;

  for (const auto& v : g.vertices()) {
    Profile profile;
    for (const auto& u : g.neighbors(v)) profile[g.class_of(u)] += 1;
    const auto cls = g.class_of(v);
    const auto it = reference.find(cls);
    if (it == reference.end()) {
      reference.emplace(cls, std::make_pair(v, std::move(profile)));
      continue;
    }
    if (it->second.second != profile) {
      report.pass = false;
      report.witness_class = cls;
      report.witness_a = it->second.first;
      report.witness_b = v;
      report.detail = g.name() + ": two vertices of the same class have different neighbor-class counts";
      return report;
    }
  }
  for (const auto& [cls, ref] : reference) {
    for (const auto& [ncls, count] : ref.second) report.e[{cls, ncls}] = count;
  }
  report.detail = g.name() + ": regular";
  return report;
}

inline bool verify_connectivity(const ClassifiedGraph& g) {
  if (!g.enumerable()) throw std::invalid_argument(g.name() + ": too large for exact connectivity check");
  std::set<ClassifiedGraph::ClassId> seen_classes;
  std::map<ClassifiedGraph::ClassId, std::set<ClassifiedGraph::ClassId>> adjacency;
  for (const auto& v : g.vertices()) {
    const auto cls = g.class_of(v);
    seen_classes.insert(cls);
    for (const auto& u : g.neighbors(v)) {
      const auto other = g.class_of(u);
      adjacency[cls].insert(other);
      adjacency[other].insert(cls);
    }
  }
  std::set<ClassifiedGraph::ClassId> visited;
  std::vector<ClassifiedGraph::ClassId> stack{g.target_class()};
  while (!stack.empty()) {
    auto cls = stack.back();
    stack.pop_back();
    if (!visited.insert(cls).second) continue;
    for (const auto& nxt : adjacency[cls]) stack.push_back(nxt);
  }
  return visited == seen_classes;
}

// Path-count symmetry: for every vertex, the number of length-d(v) descending
// paths is the same to every reachable target vertex.
inline bool verify_symmetry(const ClassifiedGraph& g, std::string* detail = nullptr) {
  if (!g.enumerable()) throw std::invalid_argument(g.name() + ": too large for exact symmetry check");
  const auto verts = g.vertices();
  std::map<ClassifiedGraph::Vertex, size_t> index;
  for (size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);
  std::vector<int64_t> dist(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) dist[i] = g.underline_d(verts[i]);

  // Descending adjacency, by index.
  std::vector<std::vector<size_t>> down(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    for (const auto& u : g.neighbors(verts[i])) {
      const auto it = index.find(u);
      if (it != index.end() && dist[it->second] == dist[i] - 1) down[i].push_back(it->second);
    }
  }

  for (size_t start = 0; start < verts.size(); ++start) {
    std::vector<uint64_t> counts(verts.size(), 0);
    counts[start] = 1;
    for (int64_t step = 0; step < dist[start]; ++step) {
      std::vector<uint64_t> next(verts.size(), 0);
      for (size_t i = 0; i < verts.size(); ++i) {
        if (counts[i] == 0) continue;
        for (const size_t j : down[i]) next[j] += counts[i];
      }
      counts = std::move(next);
    }
    uint64_t reference = 0;
    for (size_t i = 0; i < verts.size(); ++i) {
      if (counts[i] == 0) continue;
      if (dist[i] != 0) {
        if (detail) *detail = g.name() + ": walk stranded above the target class";
        return false;
      }
      if (reference == 0) {
        reference = counts[i];
      } else if (counts[i] != reference) {
        if (detail) {
          *detail = g.name() + ": path counts differ on the reachable target set";
        }
        return false;
      }
    }
  }
  if (detail) *detail = g.name() + ": path counts constant on every reachable target set";
  return true;
}

// ---------------------------------------------------------------------------
// Derived walk and G-invariant laws
// ---------------------------------------------------------------------------

inline ClassifiedGraph::Vertex derived_step(const ClassifiedGraph& g, const ClassifiedGraph::Vertex& v,
                                            RandomSource& rng) {
  return g.descend(v, rng);
}

inline ClassifiedGraph::Vertex run_to_target(const ClassifiedGraph& g, ClassifiedGraph::Vertex v,
                                             RandomSource& rng) {
  const int64_t d = g.underline_d(v);
  for (int64_t s = 0; s < d; ++s) v = derived_step(g, v, rng);
  return v;
}

// Law over classes, uniform within each class.
struct GInvariantLaw {
  std::vector<ClassifiedGraph::ClassId> class_ids;
  std::vector<double> weights;
};

// P(v) proportional to q^{d(v)}: class i gets weight |class i| * q^{d(i)}.
inline GInvariantLaw generalized_ewens(const ClassifiedGraph& g, double q) {
  if (q < 0.0) throw std::invalid_argument("generalized_ewens: q must be nonnegative");
  GInvariantLaw law;
  law.class_ids = g.classes();
  long double total = 0.0L;
  std::vector<long double> raw;
  raw.reserve(law.class_ids.size());
  for (const auto& cls : law.class_ids) {
    const auto d = static_cast<long double>(g.class_distance(cls));
    const long double weight =
        static_cast<long double>(g.class_size(cls)) * (q == 0.0 ? (d == 0.0L ? 1.0L : 0.0L) : powl(q, d));
    raw.push_back(weight);
    total += weight;
  }
  if (total <= 0.0L) throw std::invalid_argument("generalized_ewens: all class weights vanish");
  law.weights.reserve(raw.size());
  for (const auto w : raw) law.weights.push_back(static_cast<double>(w / total));
  return law;
}

inline ClassifiedGraph::Vertex g_invariant_sample(const ClassifiedGraph& g, const GInvariantLaw& law,
                                                  RandomSource& rng) {
  if (law.class_ids.empty() || law.class_ids.size() != law.weights.size()) {
    throw std::invalid_argument("g_invariant_sample: malformed law");
  }
  const double u = rng.real01();
  double acc = 0.0;
  for (size_t i = 0; i < law.class_ids.size(); ++i) {
    acc += law.weights[i];
    if (u < acc) return g.sample_uniform_in_class(law.class_ids[i], rng);
  }
  return g.sample_uniform_in_class(law.class_ids.back(), rng);
}

// Runs both laws to the target class and reports the statistic before and
// after, plus the largest per-trial movement (the empirical analogue of the
// walk increment bounds).
struct TransferResult {
  std::vector<double> before_a, after_a, before_b, after_b;
  double max_delta_a = 0.0;
  double max_delta_b = 0.0;
};

template <typename SamplerA, typename SamplerB, typename Stat>
TransferResult transfer_experiment(const ClassifiedGraph& g, SamplerA&& law_a, SamplerB&& law_b, Stat&& statistic,
                                   int64_t trials, RandomSource& rng) {
  if (trials < 1) throw std::invalid_argument("transfer_experiment: trials must be at least 1");
  TransferResult result;
  for (int64_t t = 0; t < trials; ++t) {
    const auto va = law_a(rng);
    const double fa = statistic(va);
    const auto wa = run_to_target(g, va, rng);
    const double ga = statistic(wa);
    result.before_a.push_back(fa);
    result.after_a.push_back(ga);
    result.max_delta_a = std::max(result.max_delta_a, std::abs(ga - fa));

    const auto vb = law_b(rng);
    const double fb = statistic(vb);
    const auto wb = run_to_target(g, vb, rng);
    const double gb = statistic(wb);
    result.before_b.push_back(fb);
    result.after_b.push_back(gb);
    result.max_delta_b = std::max(result.max_delta_b, std::abs(gb - fb));
  }
  return result;
}

}  // namespace permlab
