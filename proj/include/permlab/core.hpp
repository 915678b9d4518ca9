#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace permlab {

using Label = int32_t;

// Permutation of {1..n} in one-line form: word()[i-1] = sigma(i). Values are
// immutable after construction and safe to share across threads.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(Label n) {
    check_size(n);
    std::vector<Label> w(static_cast<size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    return Permutation(std::move(w), unchecked());
  }

  static Permutation from_one_line(std::vector<Label> word) {
    const auto n = static_cast<Label>(word.size());
    check_size(n);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (const Label v : word) {
      if (v < 1 || v > n) throw std::invalid_argument("Permutation: value out of range");
      if (seen[static_cast<size_t>(v - 1)]) throw std::invalid_argument("Permutation: repeated value");
      seen[static_cast<size_t>(v - 1)] = 1;
    }
    return Permutation(std::move(word), unchecked());
  }

  // Cycles need not mention fixed points; labels must be disjoint and in [1,n].
  static Permutation from_cycles(Label n, const std::vector<std::vector<Label>>& cycles) {
    check_size(n);
    std::vector<Label> w(static_cast<size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (const auto& cyc : cycles) {
      if (cyc.empty()) throw std::invalid_argument("Permutation: empty cycle");
      for (const Label v : cyc) {
        if (v < 1 || v > n) throw std::invalid_argument("Permutation: cycle label out of range");
        if (seen[static_cast<size_t>(v - 1)]) throw std::invalid_argument("Permutation: label in two cycles");
        seen[static_cast<size_t>(v - 1)] = 1;
      }
      for (size_t k = 0; k < cyc.size(); ++k) {
        w[static_cast<size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()];
      }
    }
    return Permutation(std::move(w), unchecked());
  }

  // Accepts one-line form "5,3,2,1,4" (commas and/or spaces) or cycle form
  // "(1 5 4)(2 3)". For cycle form, n is the highest label mentioned and
  // omitted labels are fixed points.
  static Permutation parse(const std::string& text);

  Label size() const { return static_cast<Label>(word_.size()); }

  Label operator()(Label i) const { return word_[static_cast<size_t>(i - 1)]; }

  const std::vector<Label>& word() const { return word_; }

  Permutation inverse() const {
    std::vector<Label> inv(word_.size());
    for (size_t i = 0; i < word_.size(); ++i) inv[static_cast<size_t>(word_[i] - 1)] = static_cast<Label>(i + 1);
    return Permutation(std::move(inv), unchecked());
  }

  bool operator==(const Permutation& o) const { return word_ == o.word_; }
  bool operator!=(const Permutation& o) const { return word_ != o.word_; }
  bool operator<(const Permutation& o) const { return word_ < o.word_; }

  std::string one_line_string() const {
    std::string out;
    for (size_t i = 0; i < word_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(word_[i]);
    }
    return out;
  }

  std::string cycle_string() const;

  struct unchecked {};
  Permutation(std::vector<Label> word, unchecked) : word_(std::move(word)) {}

 private:
  static void check_size(Label n) {
    if (n < 1) throw std::invalid_argument("Permutation: size must be at least 1");
  }

  std::vector<Label> word_;
};

// Weakly decreasing positive parts; the cycle type of a permutation and the
// shape of a Young diagram share this type.
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<Label> parts) : parts_(std::move(parts)) {
    for (const Label p : parts_) {
      if (p < 1) throw std::invalid_argument("Partition: parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end(), std::greater<Label>());
  }

  const std::vector<Label>& parts() const { return parts_; }
  Label length() const { return static_cast<Label>(parts_.size()); }
  int64_t n() const { return std::accumulate(parts_.begin(), parts_.end(), int64_t{0}); }
  Label part(size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition conjugate() const {
    std::vector<Label> out;
    if (parts_.empty()) return Partition();
    out.resize(static_cast<size_t>(parts_[0]));
    for (Label c = 1; c <= parts_[0]; ++c) {
      Label cnt = 0;
      for (const Label p : parts_) {
        if (p >= c) ++cnt;
      }
      out[static_cast<size_t>(c - 1)] = cnt;
    }
    return Partition(std::move(out));
  }

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string to_string() const {
    std::string out;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(parts_[i]);
    }
    return out;
  }

 private:
  std::vector<Label> parts_;
};

inline Partition parse_partition(const std::string& text) {
  std::vector<Label> parts;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    parts.push_back(static_cast<Label>(std::stol(tok)));
  }
  if (parts.empty()) throw std::invalid_argument("Partition: empty descriptor");
  return Partition(std::move(parts));
}

// All partitions of n, largest part first within each, in a deterministic
// (reverse lexicographic) order.
inline std::vector<Partition> all_partitions(Label n) {
  std::vector<Partition> out;
  std::vector<Label> cur;
  const std::function<void(Label, Label)> rec = [&](Label remaining, Label max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (Label p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

// Permutation with an independent color in {1..num_colors} at each position.
struct ColoredPermutation {
  Permutation sigma;
  std::vector<Label> colors;  // colors[i-1] is the color at position i
  Label num_colors = 1;
};

// (outer o inner)(i) = outer(inner(i)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<Label> w(static_cast<size_t>(outer.size()));
  for (Label i = 1; i <= outer.size(); ++i) w[static_cast<size_t>(i - 1)] = outer(inner(i));
  return Permutation(std::move(w), Permutation::unchecked());
}

inline Permutation transposition(Label n, Label i, Label j) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) throw std::invalid_argument("transposition: bad labels");
  auto p = Permutation::identity(n);
  std::vector<Label> w = p.word();
  std::swap(w[static_cast<size_t>(i - 1)], w[static_cast<size_t>(j - 1)]);
  return Permutation(std::move(w), Permutation::unchecked());
}

inline Permutation power(const Permutation& sigma, int64_t k) {
  Permutation base = k < 0 ? sigma.inverse() : sigma;
  uint64_t e = k < 0 ? static_cast<uint64_t>(-k) : static_cast<uint64_t>(k);
  Permutation acc = Permutation::identity(sigma.size());
  while (e > 0) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

// rho^{-1} o sigma o rho.
inline Permutation conjugate(const Permutation& sigma, const Permutation& rho) {
  return compose(rho.inverse(), compose(sigma, rho));
}

struct CycleDecomposition {
  // Each cycle starts at its minimum; cycles sorted by that minimum.
  std::vector<std::vector<Label>> cycles;
};

inline CycleDecomposition cycle_decomposition(const Permutation& sigma) {
  const Label n = sigma.size();
  CycleDecomposition out;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  for (Label i = 1; i <= n; ++i) {
    if (seen[static_cast<size_t>(i - 1)]) continue;
    std::vector<Label> cyc;
    Label j = i;
    do {
      seen[static_cast<size_t>(j - 1)] = 1;
      cyc.push_back(j);
      j = sigma(j);
    } while (j != i);
    out.cycles.push_back(std::move(cyc));
  }
  return out;
}

inline Label cycle_count(const Permutation& sigma) {
  const Label n = sigma.size();
  std::vector<char> seen(static_cast<size_t>(n), 0);
  Label count = 0;
  for (Label i = 1; i <= n; ++i) {
    if (seen[static_cast<size_t>(i - 1)]) continue;
    ++count;
    Label j = i;
    do {
      seen[static_cast<size_t>(j - 1)] = 1;
      j = sigma(j);
    } while (j != i);
  }
  return count;
}

inline Partition cycle_type(const Permutation& sigma) {
  const auto dec = cycle_decomposition(sigma);
  std::vector<Label> parts;
  parts.reserve(dec.cycles.size());
  for (const auto& c : dec.cycles) parts.push_back(static_cast<Label>(c.size()));
  return Partition(std::move(parts));
}

inline int64_t fixed_point_count(const Permutation& sigma) {
  int64_t count = 0;
  for (Label i = 1; i <= sigma.size(); ++i) {
    if (sigma(i) == i) ++count;
  }
  return count;
}

inline int64_t cycles_of_length(const Permutation& sigma, Label len) {
  int64_t count = 0;
  for (const auto& c : cycle_decomposition(sigma).cycles) {
    if (static_cast<Label>(c.size()) == len) ++count;
  }
  return count;
}

inline std::string Permutation::cycle_string() const {
  const auto dec = cycle_decomposition(*this);
  std::string out;
  for (const auto& cyc : dec.cycles) {
    out += '(';
    for (size_t k = 0; k < cyc.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(cyc[k]);
    }
    out += ')';
  }
  return out;
}

inline Permutation Permutation::parse(const std::string& text) {
  size_t pos = text.find_first_not_of(" \t");
  if (pos == std::string::npos) throw std::invalid_argument("Permutation: empty text");
  if (text[pos] != '(') {
    std::vector<Label> word;
    std::string tok;
    for (const char c : text) {
      if (c == ',' || c == ' ' || c == '\t') {
        if (!tok.empty()) {
          word.push_back(static_cast<Label>(std::stol(tok)));
          tok.clear();
        }
      } else {
        tok += c;
      }
    }
    if (!tok.empty()) word.push_back(static_cast<Label>(std::stol(tok)));
    return from_one_line(std::move(word));
  }
  std::vector<std::vector<Label>> cycles;
  std::vector<Label> cur;
  Label max_label = 0;
  bool inside = false;
  std::string tok;
  const auto flush_label = [&]() {
    if (tok.empty()) return;
    const Label v = static_cast<Label>(std::stol(tok));
    tok.clear();
    cur.push_back(v);
    max_label = std::max(max_label, v);
  };
  for (size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') {
      if (inside) throw std::invalid_argument("Permutation: nested '('");
      inside = true;
    } else if (c == ')') {
      if (!inside) throw std::invalid_argument("Permutation: unmatched ')'");
      flush_label();
      if (cur.empty()) throw std::invalid_argument("Permutation: empty cycle");
      cycles.push_back(std::move(cur));
      cur.clear();
      inside = false;
    } else if (c == ',' || c == ' ' || c == '\t') {
      flush_label();
    } else {
      if (!inside) throw std::invalid_argument("Permutation: label outside cycle");
      tok += c;
    }
  }
  if (inside) throw std::invalid_argument("Permutation: unterminated cycle");
  if (max_label == 0) throw std::invalid_argument("Permutation: no labels");
  return from_cycles(max_label, cycles);
}

// Ordered pairs (i, j) with j outside the cycle of i; composing with (i j)
// merges the two cycles. There are n^2 - sum(lambda_k^2) of them.
inline std::vector<std::pair<Label, Label>> admissible_merge_pairs(const Permutation& sigma) {
  const Label n = sigma.size();
  std::vector<Label> cycle_id(static_cast<size_t>(n));
  const auto dec = cycle_decomposition(sigma);
  for (size_t c = 0; c < dec.cycles.size(); ++c) {
    for (const Label v : dec.cycles[c]) cycle_id[static_cast<size_t>(v - 1)] = static_cast<Label>(c);
  }
  std::vector<std::pair<Label, Label>> out;
  for (Label i = 1; i <= n; ++i) {
    for (Label j = 1; j <= n; ++j) {
      if (cycle_id[static_cast<size_t>(i - 1)] != cycle_id[static_cast<size_t>(j - 1)]) out.emplace_back(i, j);
    }
  }
  return out;
}

inline uint64_t admissible_merge_pair_count(const Permutation& sigma) {
  const auto type = cycle_type(sigma);
  uint64_t sum_sq = 0;
  for (const Label p : type.parts()) sum_sq += static_cast<uint64_t>(p) * static_cast<uint64_t>(p);
  const uint64_t n = static_cast<uint64_t>(sigma.size());
  return n * n - sum_sq;
}

}  // namespace permlab
