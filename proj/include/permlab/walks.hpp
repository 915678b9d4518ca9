#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "permlab/core.hpp"
#include "permlab/rng.hpp"

namespace permlab {

// States visited by a walk, in order; steps() counts transitions.
struct WalkTrace {
  std::vector<Permutation> states;

  int64_t steps() const { return states.empty() ? 0 : static_cast<int64_t>(states.size()) - 1; }
};

// One step of the merge walk: a uniform admissible ordered pair (i, j) with j
// outside the cycle of i, then sigma composed with the transposition (i, j).
// The two cycles through i and j join, so the cycle count drops by exactly
// one. Single-cycle inputs are absorbing.
inline Permutation merge_step(const Permutation& sigma, RandomSource& rng) {
  const Label n = sigma.size();
  const auto decomposition = cycle_decomposition(sigma);
  if (decomposition.cycles.size() <= 1) return sigma;
  std::vector<Label> cycle_id(static_cast<size_t>(n) + 1, 0);
  for (size_t c = 0; c < decomposition.cycles.size(); ++c) {
    for (const Label e : decomposition.cycles[c]) cycle_id[static_cast<size_t>(e)] = static_cast<Label>(c);
  }
  // Rejection from the uniform pair law is exact: conditioned on acceptance
  // the pair is uniform over the admissible set, which is nonempty here.
  while (true) {
    const Label i = static_cast<Label>(rng.below(static_cast<uint64_t>(n))) + 1;
    const Label j = static_cast<Label>(rng.below(static_cast<uint64_t>(n))) + 1;
    if (cycle_id[static_cast<size_t>(i)] == cycle_id[static_cast<size_t>(j)]) continue;
    std::vector<Label> word = sigma.word();
    std::swap(word[static_cast<size_t>(i - 1)], word[static_cast<size_t>(j - 1)]);
    return Permutation::from_one_line(std::move(word));
  }
}

// Runs the merge walk for exactly #(sigma) - 1 steps, ending at a single
// cycle. Cycle membership is maintained incrementally (smaller cycle
// relabeled into the larger), so a full run costs O(n log n) expected time
// beyond the trace, which is recorded only when requested.
inline Permutation run_to_single_cycle(const Permutation& sigma, RandomSource& rng, WalkTrace* trace = nullptr) {
  const Label n = sigma.size();
  if (trace) {
    trace->states.clear();
    trace->states.push_back(sigma);
  }
  const auto decomposition = cycle_decomposition(sigma);
  const size_t m = decomposition.cycles.size();
  if (m <= 1) return sigma;

  std::vector<Label> word = sigma.word();
  std::vector<Label> cycle_id(static_cast<size_t>(n) + 1, 0);
  std::vector<std::vector<Label>> members(m);
  for (size_t c = 0; c < m; ++c) {
    members[c] = decomposition.cycles[c];
    for (const Label e : members[c]) cycle_id[static_cast<size_t>(e)] = static_cast<Label>(c);
  }

  for (size_t step = 0; step + 1 < m; ++step) {
    Label i = 0;
    Label j = 0;
    while (true) {
      i = static_cast<Label>(rng.below(static_cast<uint64_t>(n))) + 1;
      j = static_cast<Label>(rng.below(static_cast<uint64_t>(n))) + 1;
      if (cycle_id[static_cast<size_t>(i)] != cycle_id[static_cast<size_t>(j)]) break;
    }
    std::swap(word[static_cast<size_t>(i - 1)], word[static_cast<size_t>(j - 1)]);
    Label keep = cycle_id[static_cast<size_t>(i)];
    Label drop = cycle_id[static_cast<size_t>(j)];
    if (members[static_cast<size_t>(keep)].size() < members[static_cast<size_t>(drop)].size()) std::swap(keep, drop);
    for (const Label e : members[static_cast<size_t>(drop)]) {
      cycle_id[static_cast<size_t>(e)] = keep;
      members[static_cast<size_t>(keep)].push_back(e);
    }
    members[static_cast<size_t>(drop)].clear();
    if (trace) trace->states.push_back(Permutation::from_one_line(word));
  }
  return Permutation::from_one_line(std::move(word));
}

// Law over cycle types: either an explicit finite weighted list of partitions
// or a sampler callback.
class CycleTypeLaw {
 public:
  static CycleTypeLaw point_mass(Partition atom) {
    CycleTypeLaw law;
    law.atoms_.push_back(std::move(atom));
    law.weights_.push_back(1.0);
    return law;
  }

  static CycleTypeLaw explicit_law(std::vector<Partition> atoms, std::vector<double> weights) {
    if (atoms.empty() || atoms.size() != weights.size()) {
      throw std::invalid_argument("CycleTypeLaw: atoms and weights must be nonempty and aligned");
    }
    double total = 0.0;
    for (const double w : weights) {
      if (!(w >= 0.0)) throw std::invalid_argument("CycleTypeLaw: weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("CycleTypeLaw: weights must sum to 1");
    CycleTypeLaw law;
    law.atoms_ = std::move(atoms);
    law.weights_ = std::move(weights);
    return law;
  }

  static CycleTypeLaw from_sampler(std::function<Partition(RandomSource&)> sampler) {
    if (!sampler) throw std::invalid_argument("CycleTypeLaw: null sampler");
    CycleTypeLaw law;
    law.sampler_ = std::move(sampler);
    return law;
  }

  Partition draw(RandomSource& rng) const {
    if (sampler_) return sampler_(rng);
    const double u = rng.real01();
    double acc = 0.0;
    for (size_t k = 0; k < atoms_.size(); ++k) {
      acc += weights_[k];
      if (u < acc) return atoms_[k];
    }
    return atoms_.back();
  }

  bool is_explicit() const { return !sampler_; }
  const std::vector<Partition>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  CycleTypeLaw() = default;

  std::vector<Partition> atoms_;
  std::vector<double> weights_;
  std::function<Partition(RandomSource&)> sampler_;
};

// Splitting operator: write the full orbit sigma^1(i), ..., sigma^n(i), cut
// it into consecutive blocks of sizes lambda_1, ..., lambda_l, and let each
// block be one cycle of the output (read left to right). The output has
// cycle type exactly lambda and disagrees with sigma on at most l(lambda)
// positions: only the block endpoints are rewired.
inline Permutation split(const Permutation& sigma, Label i, const Partition& lambda) {
  const Label n = sigma.size();
  if (cycle_count(sigma) != 1) throw std::invalid_argument("split: input must be a single cycle");
  if (lambda.n() != n) throw std::invalid_argument("split: partition size does not match permutation size");
  if (i < 1 || i > n) throw std::invalid_argument("split: start label outside 1..n");

  std::vector<Label> orbit(static_cast<size_t>(n));
  Label cur = i;
  for (Label t = 0; t < n; ++t) {
    cur = sigma(cur);
    orbit[static_cast<size_t>(t)] = cur;
  }

  std::vector<Label> word(static_cast<size_t>(n), 0);
  size_t pos = 0;
  for (const Label part : lambda.parts()) {
    const size_t len = static_cast<size_t>(part);
    for (size_t t = 0; t < len; ++t) {
      const Label from = orbit[pos + t];
      const Label to = orbit[pos + (t + 1) % len];
      word[static_cast<size_t>(from - 1)] = to;
    }
    pos += len;
  }
  return Permutation::from_one_line(std::move(word));
}

// Inverse walk step: uniform start label, target type drawn from the law.
inline Permutation inverse_step(const Permutation& sigma, const CycleTypeLaw& law, RandomSource& rng) {
  if (cycle_count(sigma) != 1) throw std::invalid_argument("inverse_step: input must be a single cycle");
  const Label i = static_cast<Label>(rng.below(static_cast<uint64_t>(sigma.size()))) + 1;
  const Partition lambda = law.draw(rng);
  if (lambda.n() != sigma.size()) {
    throw std::invalid_argument("inverse_step: law produced a partition of the wrong size");
  }
  return split(sigma, i, lambda);
}

// Threshold merge: absorb every cycle of length < j into one designated
// maximal-length cycle (uniform tie-break), processing the short cycles in
// increasing order of their minimum and splicing each at a uniform pair
// (i in the growing cycle, j in the short cycle). Cycles of length >= j
// other than the designated one are untouched.
inline Permutation threshold_merge(const Permutation& sigma, Label j, RandomSource& rng) {
  if (j < 2) throw std::invalid_argument("threshold_merge: threshold must be at least 2");
  const auto decomposition = cycle_decomposition(sigma);
  const auto& cycles = decomposition.cycles;
  size_t max_len = 0;
  for (const auto& c : cycles) max_len = std::max(max_len, c.size());
  std::vector<size_t> biggest;
  for (size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c].size() == max_len) biggest.push_back(c);
  }
  const size_t big = biggest[rng.below(biggest.size())];

  std::vector<Label> word = sigma.word();
  std::vector<Label> grown = cycles[big];
  for (size_t c = 0; c < cycles.size(); ++c) {
    if (c == big || cycles[c].size() >= static_cast<size_t>(j)) continue;
    const Label i = grown[rng.below(grown.size())];
    const Label s = cycles[c][rng.below(cycles[c].size())];
    std::swap(word[static_cast<size_t>(i - 1)], word[static_cast<size_t>(s - 1)]);
    grown.insert(grown.end(), cycles[c].begin(), cycles[c].end());
  }
  return Permutation::from_one_line(std::move(word));
}

}  // namespace permlab
