#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "permlab/class_graphs.hpp"
#include "permlab/core.hpp"
#include "permlab/limit_laws.hpp"
#include "permlab/oracle.hpp"
#include "permlab/rational.hpp"
#include "permlab/rng.hpp"
#include "permlab/samplers.hpp"
#include "permlab/stats.hpp"
#include "permlab/walks.hpp"

using namespace permlab;

using Vertex = ClassifiedGraph::Vertex;
using CI = ClassifiedGraph::ClassId;

namespace {

// Hand-wired graph for validating the checkers against known-bad inputs.
class ToyGraph final : public ClassifiedGraph {
 public:
  ToyGraph(std::vector<std::vector<Label>> adjacency, std::vector<Label> cls)
      : adjacency_(std::move(adjacency)), cls_(std::move(cls)) {}

  std::string name() const override { return "toy"; }
  uint64_t vertex_count() const override { return adjacency_.size(); }

  std::vector<Vertex> vertices() const override {
    std::vector<Vertex> out;
    for (size_t i = 0; i < adjacency_.size(); ++i) out.push_back({static_cast<Label>(i)});
    return out;
  }

  std::vector<Vertex> neighbors(const Vertex& v) const override {
    std::vector<Vertex> out;
    for (const Label u : adjacency_.at(static_cast<size_t>(v.at(0)))) out.push_back({u});
    return out;
  }

  ClassId class_of(const Vertex& v) const override { return {cls_.at(static_cast<size_t>(v.at(0)))}; }

  std::vector<ClassId> classes() const override {
    std::set<Label> seen(cls_.begin(), cls_.end());
    std::vector<ClassId> out;
    for (const Label c : seen) out.push_back({c});
    return out;
  }

  ClassId target_class() const override { return {0}; }

  uint64_t class_size(const ClassId& c) const override {
    return static_cast<uint64_t>(std::count(cls_.begin(), cls_.end(), c.at(0)));
  }

  int64_t class_distance(const ClassId& c) const override { return c.at(0); }

  Vertex sample_uniform(RandomSource&) const override { throw std::logic_error("toy: not samplable"); }
  Vertex sample_uniform_in_class(const ClassId&, RandomSource&) const override {
    throw std::logic_error("toy: not samplable");
  }

 private:
  std::vector<std::vector<Label>> adjacency_;
  std::vector<Label> cls_;
};

// Multi-source breadth-first distances from the target class, for checking
// the closed-form distances instance by instance.
std::map<Vertex, int64_t> bfs_distances(const ClassifiedGraph& g) {
  std::map<Vertex, int64_t> dist;
  std::deque<Vertex> queue;
  for (const auto& v : g.vertices()) {
    if (g.class_of(v) == g.target_class()) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const auto& u : g.neighbors(v)) {
      if (dist.emplace(u, dist.at(v) + 1).second) queue.push_back(u);
    }
  }
  return dist;
}

void check_inventory(const ClassifiedGraph& g) {
  const auto verts = g.vertices();
  REQUIRE(verts.size() == g.vertex_count());
  REQUIRE(std::set<Vertex>(verts.begin(), verts.end()).size() == verts.size());

  const auto classes = g.classes();
  const std::set<CI> class_set(classes.begin(), classes.end());
  REQUIRE(class_set.size() == classes.size());
  REQUIRE(class_set.count(g.target_class()) == 1);
  REQUIRE(g.class_distance(g.target_class()) == 0);

  std::map<CI, uint64_t> tally;
  for (const auto& v : verts) {
    const auto c = g.class_of(v);
    REQUIRE(class_set.count(c) == 1);
    tally[c] += 1;
  }
  uint64_t covered = 0;
  for (const auto& c : classes) {
    const auto it = tally.find(c);
    const uint64_t observed = it == tally.end() ? 0 : it->second;
    REQUIRE(g.class_size(c) == observed);
    covered += observed;
  }
  REQUIRE(covered == g.vertex_count());
}

// Exact rational push of one derived step applied to the uniform law on each
// positive-distance class; the result must again be uniform on classes.
void check_class_uniform_preservation(const ClassifiedGraph& g) {
  const auto verts = g.vertices();
  std::map<Vertex, size_t> index;
  for (size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);
  std::vector<int64_t> dist(verts.size());
  std::vector<CI> cls(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    cls[i] = g.class_of(verts[i]);
    dist[i] = g.class_distance(cls[i]);
  }
  std::vector<std::vector<size_t>> down(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    for (const auto& u : g.neighbors(verts[i])) {
      const size_t j = index.at(u);
      if (dist[j] == dist[i] - 1) down[i].push_back(j);
    }
  }
  std::map<CI, std::vector<size_t>> members;
  for (size_t i = 0; i < verts.size(); ++i) members[cls[i]].push_back(i);

  for (const auto& [start_class, start_members] : members) {
    if (g.class_distance(start_class) < 1) continue;
    const size_t fanout = down[start_members.front()].size();
    REQUIRE(fanout > 0);
    for (const size_t i : start_members) REQUIRE(down[i].size() == fanout);

    std::map<size_t, Rational> mass;
    const Rational share(1, static_cast<int64_t>(start_members.size()) * static_cast<int64_t>(fanout));
    for (const size_t i : start_members) {
      for (const size_t j : down[i]) mass[j] = mass[j] + share;
    }
    Rational total(0);
    std::set<CI> touched;
    for (const auto& [j, m] : mass) {
      total = total + m;
      touched.insert(cls[j]);
    }
    REQUIRE(total == Rational(1));
    for (const auto& c : touched) {
      const auto& everyone = members.at(c);
      const auto first = mass.find(everyone.front());
      REQUIRE(first != mass.end());
      for (const size_t j : everyone) {
        const auto it = mass.find(j);
        REQUIRE(it != mass.end());
        REQUIRE(it->second == first->second);
      }
    }
  }
}

Permutation canonical_of_type(Label n, const CI& parts) {
  std::vector<std::vector<Label>> cycles;
  Label next = 1;
  for (const Label part : parts) {
    std::vector<Label> cycle;
    for (Label t = 0; t < part; ++t) cycle.push_back(next++);
    cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(n, cycles);
}

}  // namespace

TEST_CASE("instances enumerate consistently with their class data") {
  check_inventory(symmetric_transpositions(4));
  check_inventory(symmetric_adjacent(4));
  check_inventory(even_3cycles(5));
  check_inventory(hypercube(6));
  check_inventory(dihedral(12));
  check_inventory(colored_graph(3, 2));

  const auto sym4 = symmetric_transpositions(4);
  CHECK(sym4.vertex_count() == 24);
  CHECK(sym4.classes().size() == 5);
  CHECK(sym4.target_class() == CI{4});
  CHECK(sym4.class_size({2, 1, 1}) == 6);
  CHECK(sym4.class_size({4}) == 6);

  const auto adj4 = symmetric_adjacent(4);
  CHECK(adj4.classes().size() == 7);
  CHECK(adj4.target_class() == CI{4});
  const std::vector<uint64_t> mahonian{1, 3, 5, 6, 5, 3, 1};
  for (Label k = 0; k <= 6; ++k) CHECK(adj4.class_size({k}) == mahonian[static_cast<size_t>(k)]);
  CHECK(symmetric_adjacent(5).target_class() == CI{7});

  const auto even5 = even_3cycles(5);
  CHECK(even5.vertex_count() == 60);
  CHECK(even5.classes().size() == 4);
  CHECK(even5.class_size({5}) == 24);
  CHECK(even5.class_size({3, 1, 1}) == 20);
  CHECK(even5.class_size({2, 2, 1}) == 15);
  CHECK(even5.class_size({1, 1, 1, 1, 1}) == 1);
  CHECK_THROWS_AS(even5.class_size({4, 1}), std::invalid_argument);

  const auto cube6 = hypercube(6);
  CHECK(cube6.vertex_count() == 64);
  CHECK(cube6.target_class() == CI{3});
  CHECK(cube6.class_size({2}) == 15);

  const auto col32 = colored_graph(3, 2);
  CHECK(col32.vertex_count() == 48);
  CHECK(col32.class_size({3}) == 16);
  CHECK(col32.class_size({2, 1}) == 24);
  CHECK(col32.class_size({1, 1, 1}) == 8);

  CHECK(dihedral(12).vertex_count() == 12);
  CHECK(dihedral(12).class_size({0}) == 6);

  // Constructor validation and representability guards.
  CHECK_THROWS_AS(symmetric_transpositions(1), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_adjacent(1), std::invalid_argument);
  CHECK_THROWS_AS(even_3cycles(4), std::invalid_argument);
  CHECK_THROWS_AS(even_3cycles(1), std::invalid_argument);
  CHECK_THROWS_AS(hypercube(5), std::invalid_argument);
  CHECK_THROWS_AS(hypercube(0), std::invalid_argument);
  CHECK_THROWS_AS(dihedral(7), std::invalid_argument);
  CHECK_THROWS_AS(colored_graph(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_transpositions(25).vertex_count(), std::overflow_error);
  CHECK_THROWS_AS(hypercube(64).vertex_count(), std::overflow_error);
  CHECK_THROWS_AS(hypercube(70).class_size({35}), std::overflow_error);
  CHECK(hypercube(64).class_size({32}) == 1832624140942590534ULL);
  CHECK_FALSE(symmetric_transpositions(25).enumerable());
  CHECK_FALSE(hypercube(64).enumerable());
  CHECK_FALSE(colored_graph(8, 9).enumerable());
  CHECK_THROWS_AS(symmetric_transpositions(10).vertices(), std::invalid_argument);
}

TEST_CASE("closed-form distances equal breadth-first distances") {
  const auto check = [](const ClassifiedGraph& g) {
    const auto dist = bfs_distances(g);
    const auto verts = g.vertices();
    REQUIRE(dist.size() == verts.size());  // every vertex reachable from the target class
    for (const auto& v : verts) REQUIRE(dist.at(v) == g.underline_d(v));
  };
  check(symmetric_transpositions(5));
  check(symmetric_adjacent(5));
  check(even_3cycles(3));
  check(even_3cycles(5));
  check(even_3cycles(7));
  check(hypercube(8));
  check(dihedral(10));
  check(colored_graph(3, 2));
}

TEST_CASE("regularity checker certifies the regular instances") {
  const auto sym4 = verify_regularity(symmetric_transpositions(4));
  REQUIRE(sym4.pass);
  const std::map<std::pair<CI, CI>, int64_t> expected_sym4{
      {{{1, 1, 1, 1}, {2, 1, 1}}, 6}, {{{2, 1, 1}, {1, 1, 1, 1}}, 1}, {{{2, 1, 1}, {2, 2}}, 1},
      {{{2, 1, 1}, {3, 1}}, 4},       {{{2, 2}, {2, 1, 1}}, 2},       {{{2, 2}, {4}}, 4},
      {{{3, 1}, {2, 1, 1}}, 3},       {{{3, 1}, {4}}, 3},             {{{4}, {3, 1}}, 4},
      {{{4}, {2, 2}}, 2},
  };
  CHECK(sym4.e == expected_sym4);

  // The induced class graph: five classes joined by exactly five edges.
  std::set<std::pair<CI, CI>> class_edges;
  for (const auto& [key, count] : sym4.e) {
    if (count > 0) class_edges.insert({std::min(key.first, key.second), std::max(key.first, key.second)});
  }
  const std::set<std::pair<CI, CI>> expected_edges{
      {{1, 1, 1, 1}, {2, 1, 1}}, {{2, 1, 1}, {2, 2}}, {{2, 1, 1}, {3, 1}}, {{2, 2}, {4}}, {{3, 1}, {4}},
  };
  CHECK(class_edges == expected_edges);

  CHECK(verify_regularity(symmetric_transpositions(5)).pass);
  CHECK(verify_regularity(even_3cycles(5)).pass);
  CHECK(verify_regularity(dihedral(12)).pass);
  CHECK(verify_regularity(dihedral(2)).pass);

  const auto cube = verify_regularity(hypercube(6));
  REQUIRE(cube.pass);
  std::map<std::pair<CI, CI>, int64_t> expected_cube;
  for (Label k = 0; k <= 6; ++k) {
    if (k > 0) expected_cube[{{k}, {static_cast<Label>(k - 1)}}] = k;
    if (k < 6) expected_cube[{{k}, {static_cast<Label>(k + 1)}}] = 6 - k;
  }
  CHECK(cube.e == expected_cube);

  const auto col = verify_regularity(colored_graph(3, 2));
  REQUIRE(col.pass);
  const std::map<std::pair<CI, CI>, int64_t> expected_col{
      {{{1, 1, 1}, {2, 1}}, 3}, {{{2, 1}, {1, 1, 1}}, 1}, {{{2, 1}, {3}}, 2}, {{{3}, {2, 1}}, 3},
  };
  CHECK(col.e == expected_col);

  // Every row of a Cayley-style instance sums to the generator count.
  const auto even5 = verify_regularity(even_3cycles(5));
  std::map<CI, int64_t> row_sum;
  for (const auto& [key, count] : even5.e) row_sum[key.first] += count;
  for (const auto& [cls, sum] : row_sum) CHECK(sum == 20);

  CHECK_THROWS_AS(verify_regularity(symmetric_transpositions(10)), std::invalid_argument);
}

TEST_CASE("regularity checker rejects the adjacent-transposition instance") {
  const auto g = symmetric_adjacent(4);
  const auto report = verify_regularity(g);
  REQUIRE_FALSE(report.pass);
  REQUIRE_FALSE(report.witness_a.empty());
  REQUIRE(g.class_of(report.witness_a) == report.witness_class);
  REQUIRE(g.class_of(report.witness_b) == report.witness_class);

  const auto profile = [&g](const Vertex& v) {
    std::map<CI, int64_t> p;
    for (const auto& u : g.neighbors(v)) p[g.class_of(u)] += 1;
    return p;
  };
  REQUIRE(profile(report.witness_a) != profile(report.witness_b));

  // The documented witness pair: both have two inversions, but one has one
  // descent and the other two, so their down-neighbor counts differ.
  const Vertex a{1, 3, 4, 2};
  const Vertex b{2, 1, 4, 3};
  REQUIRE(g.class_of(a) == CI{2});
  REQUIRE(g.class_of(b) == CI{2});
  REQUIRE(profile(a)[{1}] == 1);
  REQUIRE(profile(b)[{1}] == 2);
  REQUIRE(profile(a) != profile(b));
}

TEST_CASE("connectivity checker accepts the instances and rejects a split toy") {
  CHECK(verify_connectivity(symmetric_transpositions(4)));
  CHECK(verify_connectivity(symmetric_adjacent(4)));
  CHECK(verify_connectivity(even_3cycles(5)));
  CHECK(verify_connectivity(hypercube(6)));
  CHECK(verify_connectivity(dihedral(12)));
  CHECK(verify_connectivity(colored_graph(3, 2)));

  const ToyGraph split({{1}, {0}, {}}, {1, 1, 0});
  CHECK_FALSE(verify_connectivity(split));
}

TEST_CASE("symmetry checker separates instances by the pointwise path-count law") {
  std::string detail;
  CHECK(verify_symmetry(symmetric_transpositions(2)));
  CHECK(verify_symmetry(symmetric_transpositions(3)));
  CHECK(verify_symmetry(even_3cycles(5)));
  CHECK(verify_symmetry(hypercube(6)));
  CHECK(verify_symmetry(hypercube(8)));
  CHECK(verify_symmetry(dihedral(12)));
  CHECK(verify_symmetry(colored_graph(3, 2)));

  // The pointwise condition fails on the transposition instance from n = 4
  // on: started at the single permutation (1 2), the two-step endpoint law
  // on the 4-cycles is not uniform (masses 11/60 on four of them and 2/15 on
  // the other two, checked exactly below), so the path counts cannot be
  // constant on the final set. Only the class-averaged statement holds; it
  // is verified exactly with the rational walk matrices elsewhere.
  CHECK_FALSE(verify_symmetry(symmetric_transpositions(4), &detail));
  CHECK_FALSE(verify_symmetry(symmetric_transpositions(5)));

  const auto matrix = exact_walk_matrix(4);
  const auto perms = enumerate_sn(4);
  std::vector<Rational> law(24, Rational(0));
  law[static_cast<size_t>(perm_rank(Permutation::from_cycles(4, {{1, 2}})))] = Rational(1);
  auto pushed = apply_to_distribution(law, matrix);
  pushed = apply_to_distribution(pushed, matrix);
  std::map<Rational, int> mass_tally;
  for (size_t r = 0; r < pushed.size(); ++r) {
    if (!(pushed[r] == Rational(0))) {
      REQUIRE(cycle_count(perms[r]) == 1);
      mass_tally[pushed[r]] += 1;
    }
  }
  REQUIRE(mass_tally.size() == 2);
  REQUIRE(mass_tally.at(Rational(11, 60)) == 4);
  REQUIRE(mass_tally.at(Rational(2, 15)) == 2);

  // v reaches one target twice and the other once: counts differ.
  const ToyGraph lopsided({{1, 2}, {0, 3}, {0, 3, 4}, {1, 2}, {2}}, {2, 1, 1, 0, 0});
  CHECK_FALSE(verify_symmetry(lopsided, &detail));

  const auto toy_report = verify_regularity(lopsided);
  REQUIRE_FALSE(toy_report.pass);
  CHECK(toy_report.witness_class == CI{1});

  const bool adjacent_symmetry = verify_symmetry(symmetric_adjacent(4), &detail);
  INFO("sym-adj:4 symmetry verdict: " << detail);
  if (!adjacent_symmetry) {
    WARN("sym-adj:4 fails the path-count symmetry check: " << detail);
  }
  CHECK(true);  // measured, not asserted: the instance is documented as irregular
}

TEST_CASE("derived steps descend one level and stop at the target") {
  RandomSource rng(20260818);

  const auto run_paths = [&rng](const ClassifiedGraph& g, int trials) {
    for (int t = 0; t < trials; ++t) {
      Vertex v = g.sample_uniform(rng);
      int64_t d = g.underline_d(v);
      int64_t steps = 0;
      while (d > 0) {
        const Vertex u = derived_step(g, v, rng);
        REQUIRE(g.underline_d(u) == d - 1);
        v = u;
        d -= 1;
        ++steps;
      }
      REQUIRE(derived_step(g, v, rng) == v);  // absorbing at the target class
      const Vertex w = run_to_target(g, g.sample_uniform(rng), rng);
      REQUIRE(g.class_of(w) == g.target_class());
      (void)steps;
    }
  };
  run_paths(symmetric_transpositions(6), 30);
  run_paths(symmetric_adjacent(6), 30);
  run_paths(even_3cycles(7), 15);
  run_paths(hypercube(8), 30);
  run_paths(dihedral(12), 30);
  run_paths(colored_graph(4, 3), 30);

  // Large instances walk through the closed-form overrides.
  const auto big_cube = hypercube(2000);
  const Vertex far_corner(2000, 1);
  REQUIRE(big_cube.underline_d(far_corner) == 1000);
  const Vertex settled = run_to_target(big_cube, far_corner, rng);
  REQUIRE(big_cube.class_of(settled) == big_cube.target_class());

  const auto big_sym = symmetric_transpositions(500);
  const Vertex sorted = run_to_target(big_sym, Permutation::identity(500).word(), rng);
  REQUIRE(big_sym.class_of(sorted) == CI{500});

  // A stuck graph reports instead of looping.
  const ToyGraph stuck({{1}, {0}, {}}, {1, 1, 0});
  CHECK_THROWS_AS(derived_step(stuck, {0}, rng), std::runtime_error);
}

TEST_CASE("derived graph of the transposition instance is the merge-walk graph") {
  for (Label n = 2; n <= 5; ++n) {
    const auto g = symmetric_transpositions(n);
    for (const auto& vw : g.vertices()) {
      const auto sigma = Permutation::from_one_line(vw);
      const int64_t d = g.underline_d(vw);

      std::set<Vertex> derived;
      for (const auto& u : g.neighbors(vw)) {
        if (g.underline_d(u) == d - 1) derived.insert(u);
      }
      std::set<Vertex> merged;
      for (const auto& [i, j] : admissible_merge_pairs(sigma)) {
        merged.insert(compose(sigma, transposition(n, i, j)).word());
      }
      REQUIRE(derived == merged);
    }
  }
}

TEST_CASE("closed-form descent draws match the uniform descending law") {
  RandomSource rng(7000);
  const auto chi2 = [](const std::map<Vertex, int64_t>& counts, const std::set<Vertex>& support, int64_t draws) {
    const double expected = static_cast<double>(draws) / static_cast<double>(support.size());
    double stat = 0.0;
    int64_t seen = 0;
    for (const auto& [v, c] : counts) {
      REQUIRE(support.count(v) == 1);
      seen += c;
      const double diff = static_cast<double>(c) - expected;
      stat += diff * diff / expected;
    }
    REQUIRE(seen == draws);
    return stat;
  };

  const auto sym = symmetric_transpositions(4);
  const Vertex id4 = Permutation::identity(4).word();
  std::set<Vertex> down_sym;
  for (const auto& u : sym.neighbors(id4)) {
    if (sym.underline_d(u) == sym.underline_d(id4) - 1) down_sym.insert(u);
  }
  REQUIRE(down_sym.size() == 6);
  std::map<Vertex, int64_t> counts_sym;
  const int64_t draws = 30000;
  for (int64_t t = 0; t < draws; ++t) counts_sym[sym.descend(id4, rng)] += 1;
  CHECK(chi2(counts_sym, down_sym, draws) < chi_squared_critical(5, 1e-3));

  const auto cube = hypercube(6);
  const Vertex ones(6, 1);
  std::set<Vertex> down_cube;
  for (const auto& u : cube.neighbors(ones)) {
    if (cube.underline_d(u) == cube.underline_d(ones) - 1) down_cube.insert(u);
  }
  REQUIRE(down_cube.size() == 6);
  std::map<Vertex, int64_t> counts_cube;
  for (int64_t t = 0; t < draws; ++t) counts_cube[cube.descend(ones, rng)] += 1;
  CHECK(chi2(counts_cube, down_cube, draws) < chi_squared_critical(5, 1e-3));
}

TEST_CASE("one derived step preserves class-uniform laws exactly") {
  check_class_uniform_preservation(symmetric_transpositions(4));
  check_class_uniform_preservation(symmetric_transpositions(5));
  check_class_uniform_preservation(even_3cycles(5));
  check_class_uniform_preservation(hypercube(6));
  check_class_uniform_preservation(hypercube(8));
  check_class_uniform_preservation(dihedral(12));
  check_class_uniform_preservation(colored_graph(3, 2));
}

TEST_CASE("generalized Ewens laws specialize correctly") {
  const auto sym5 = symmetric_transpositions(5);

  // q = 1 is the uniform law on vertices.
  const auto flat = generalized_ewens(sym5, 1.0);
  for (size_t i = 0; i < flat.class_ids.size(); ++i) {
    const double expected =
        static_cast<double>(sym5.class_size(flat.class_ids[i])) / static_cast<double>(sym5.vertex_count());
    REQUIRE(std::abs(flat.weights[i] - expected) < 1e-15);
  }

  // q = 0 is the uniform law on the target class.
  const auto frozen = generalized_ewens(sym5, 0.0);
  for (size_t i = 0; i < frozen.class_ids.size(); ++i) {
    REQUIRE(frozen.weights[i] == (frozen.class_ids[i] == sym5.target_class() ? 1.0 : 0.0));
  }

  CHECK_THROWS_AS(generalized_ewens(sym5, -0.5), std::invalid_argument);

  // On the transposition instance the law is exactly Ewens with theta = q.
  const std::vector<Rational> thetas{Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  for (Label n = 4; n <= 6; ++n) {
    const auto g = symmetric_transpositions(n);
    for (const auto& theta : thetas) {
      const auto law = generalized_ewens(g, theta.to_double());
      double total = 0.0;
      for (size_t i = 0; i < law.class_ids.size(); ++i) {
        const auto rep = canonical_of_type(n, law.class_ids[i]);
        const Rational exact =
            ewens_mass(rep, theta) * Rational(static_cast<int64_t>(g.class_size(law.class_ids[i])));
        REQUIRE(std::abs(law.weights[i] - exact.to_double()) < 1e-12);
        total += law.weights[i];
      }
      REQUIRE(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("G-invariant sampling matches its law") {
  RandomSource rng(424242);

  // Per-vertex frequencies on the transposition instance at q = 2.
  const auto sym4 = symmetric_transpositions(4);
  const auto law = generalized_ewens(sym4, 2.0);
  std::map<CI, double> class_weight;
  for (size_t i = 0; i < law.class_ids.size(); ++i) class_weight[law.class_ids[i]] = law.weights[i];

  const int64_t draws = 48000;
  std::map<Vertex, int64_t> counts;
  for (int64_t t = 0; t < draws; ++t) counts[g_invariant_sample(sym4, law, rng)] += 1;

  double stat = 0.0;
  int64_t seen = 0;
  for (const auto& v : sym4.vertices()) {
    const auto c = sym4.class_of(v);
    const double p = class_weight.at(c) / static_cast<double>(sym4.class_size(c));
    const double expected = p * static_cast<double>(draws);
    const auto it = counts.find(v);
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    seen += it == counts.end() ? 0 : it->second;
    stat += (observed - expected) * (observed - expected) / expected;
  }
  REQUIRE(seen == draws);
  CHECK(stat < chi_squared_critical(23, 1e-3));

  // Class-level frequencies on the hypercube at q = 1/2.
  const auto cube = hypercube(6);
  const auto cube_law = generalized_ewens(cube, 0.5);
  std::map<CI, int64_t> class_counts;
  for (int64_t t = 0; t < draws; ++t) class_counts[cube.class_of(g_invariant_sample(cube, cube_law, rng))] += 1;
  double cube_stat = 0.0;
  for (size_t i = 0; i < cube_law.class_ids.size(); ++i) {
    const double expected = cube_law.weights[i] * static_cast<double>(draws);
    const auto it = class_counts.find(cube_law.class_ids[i]);
    const double observed = it == class_counts.end() ? 0.0 : static_cast<double>(it->second);
    cube_stat += (observed - expected) * (observed - expected) / expected;
  }
  CHECK(cube_stat < chi_squared_critical(6, 1e-3));

  CHECK_THROWS_AS(g_invariant_sample(sym4, GInvariantLaw{}, rng), std::invalid_argument);
}

TEST_CASE("uniform hypercube vertices sit near the middle layer at scale") {
  const auto g = hypercube(2000);
  CHECK(g.class_distance({980}) == 20);
  CHECK(g.class_distance({1000}) == 0);

  RandomSource rng(5150);
  const int64_t samples = 20000;
  double total = 0.0;
  for (int64_t t = 0; t < samples; ++t) {
    total += static_cast<double>(g.underline_d(g.sample_uniform(rng)));
  }
  const double mean = total / static_cast<double>(samples);
  // sqrt(n/2) with dimension 2n = 2000.
  CHECK(mean <= std::sqrt(1000.0 / 2.0));
  CHECK(mean > 5.0);

  const auto in_layer = g.sample_uniform_in_class({700}, rng);
  Label weight = 0;
  for (const Label b : in_layer) weight = static_cast<Label>(weight + b);
  CHECK(weight == 700);
}

TEST_CASE("transfer experiments land both laws on the target class") {
  const auto g = symmetric_transpositions(60);
  RandomSource rng(99);
  const auto uniform_law = [](RandomSource& r) { return sample_uniform(60, r).word(); };
  const auto ewens_law = [](RandomSource& r) { return sample_ewens(60, 2.0, r).word(); };
  const auto stat = [](const Vertex& v) { return static_cast<double>(lis(Permutation::from_one_line(v))); };

  const auto result = transfer_experiment(g, uniform_law, ewens_law, stat, 250, rng);
  REQUIRE(result.before_a.size() == 250);
  REQUIRE(result.after_b.size() == 250);
  CHECK(result.max_delta_a <= 60.0);
  CHECK(result.max_delta_b <= 60.0);

  const auto mean = [](const std::vector<double>& xs) {
    double s = 0.0;
    for (const double x : xs) s += x;
    return s / static_cast<double>(xs.size());
  };
  // After the walk both samples follow the same law (uniform on 60-cycles).
  CHECK(std::abs(mean(result.after_a) - mean(result.after_b)) < 1.5);
  CHECK(two_sample_ks(result.after_a, result.after_b) < 0.2);

  CHECK_THROWS_AS(transfer_experiment(g, uniform_law, ewens_law, stat, 0, rng), std::invalid_argument);
}

TEST_CASE("dihedral multiplication follows the stated relations") {
  const auto g = dihedral(12);
  const auto verts = g.vertices();
  REQUIRE(verts.size() == 12);
  const Vertex e{0, 0};

  // Pinned relations (indices mod 6).
  CHECK(g.multiply({0, 2}, {0, 5}) == Vertex{0, 1});  // r2 r5 = r1
  CHECK(g.multiply({0, 2}, {1, 1}) == Vertex{1, 3});  // r2 s1 = s3
  CHECK(g.multiply({1, 2}, {0, 1}) == Vertex{1, 1});  // s2 r1 = s1
  CHECK(g.multiply({1, 2}, {1, 5}) == Vertex{0, 3});  // s2 s5 = r{-3} = r3

  const std::set<Vertex> all(verts.begin(), verts.end());
  for (const auto& a : verts) {
    CHECK(g.multiply(e, a) == a);
    CHECK(g.multiply(a, e) == a);
    bool has_inverse = false;
    for (const auto& b : verts) {
      REQUIRE(all.count(g.multiply(a, b)) == 1);
      if (g.multiply(a, b) == e && g.multiply(b, a) == e) has_inverse = true;
    }
    CHECK(has_inverse);
  }
  for (const auto& a : verts) {
    for (const auto& b : verts) {
      for (const auto& c : verts) {
        REQUIRE(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
      }
    }
  }

  // Right multiplication by the reflections is the edge rule.
  std::set<Vertex> rot_neighbors;
  for (const auto& u : g.neighbors({0, 2})) rot_neighbors.insert(u);
  std::set<Vertex> reflections;
  for (Label j = 0; j < 6; ++j) reflections.insert({1, j});
  CHECK(rot_neighbors == reflections);

  std::set<Vertex> refl_neighbors;
  for (const auto& u : g.neighbors({1, 3})) refl_neighbors.insert(u);
  std::set<Vertex> rotations;
  for (Label j = 0; j < 6; ++j) rotations.insert({0, j});
  CHECK(refl_neighbors == rotations);
}

TEST_CASE("colored vertices round-trip through the colored-permutation view") {
  const auto g = colored_graph(3, 2);
  RandomSource rng(31337);
  for (int t = 0; t < 50; ++t) {
    const auto v = g.sample_uniform(rng);
    const auto cp = g.to_colored(v);
    REQUIRE(cp.sigma.size() == 3);
    REQUIRE(cp.colors.size() == 3);
    for (const Label c : cp.colors) {
      REQUIRE(c >= 1);
      REQUIRE(c <= 2);
    }
    const auto score = colored_lis(cp);
    REQUIRE(score >= 1);
    REQUIRE(score <= 2 * 3);
  }

  // Neighbors keep colors fixed and move only the permutation part.
  const Vertex v{2, 3, 1, 1, 2, 1};
  for (const auto& u : g.neighbors(v)) {
    REQUIRE(std::vector<Label>(u.begin() + 3, u.end()) == std::vector<Label>(v.begin() + 3, v.end()));
    REQUIRE(std::vector<Label>(u.begin(), u.begin() + 3) != std::vector<Label>(v.begin(), v.begin() + 3));
  }
}
