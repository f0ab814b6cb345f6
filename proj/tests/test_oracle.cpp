#include <doctest.h>

#include <set>

#include "chromacut/errors.hpp"
#include "chromacut/fixtures.hpp"
#include "chromacut/oracle.hpp"
#include "chromacut/treegen.hpp"
#include "oracles.hpp"

using namespace chromacut;

TEST_CASE("deletion/contraction base cases") {
  const auto single = wcp_multiset(WeightedForest{{4}, {}});
  CHECK(single.total() == 1);
  CHECK(single.multiplicity(Partition({4})) == 1);

  const auto p2 = wcp_multiset(WeightedForest::unit(path_tree(2)));
  CHECK(p2.multiplicity(Partition({2})) == 1);
  CHECK(p2.multiplicity(Partition({1, 1})) == 1);
  CHECK(p2.total() == 2);

  const auto star = wcp_multiset(WeightedForest::unit(fixtures::star4()));
  CHECK(star.multiplicity(Partition({1, 1, 1, 1})) == 1);
  CHECK(star.multiplicity(Partition({2, 1, 1})) == 3);
  CHECK(star.multiplicity(Partition({3, 1})) == 3);
  CHECK(star.multiplicity(Partition({4})) == 1);
}

TEST_CASE("weighted forests are validated") {
  CHECK_THROWS_AS(wcp_multiset(WeightedForest{{1, 1, 1}, {{0, 1}, {1, 2}, {2, 0}}}), CycleError);
  CHECK_THROWS_AS(wcp_multiset(WeightedForest{{1, 1}, {{0, 1}, {0, 1}}}), CycleError);
  CHECK_THROWS_AS(wcp_multiset(WeightedForest{{1, 0}, {{0, 1}}}), RangeError);
  CHECK_THROWS_AS(wcp_multiset(WeightedForest::unit(path_tree(17))), SizeLimitError);

  // A genuine forest with weights: two components.
  const auto f = wcp_multiset(WeightedForest{{2, 1, 3}, {{0, 1}}});
  CHECK(f.multiplicity(Partition({3, 2, 1})) == 1);
  CHECK(f.multiplicity(Partition({3, 3})) == 1);
}

TEST_CASE("recursion agrees with subset enumeration") {
  CHECK(check_wcp_vs_subsets(path_tree(4)));
  for (const auto& t : all_free_trees(9)) CHECK(check_wcp_vs_subsets(t));
  const auto f1 = fixtures::figure1_pair();
  CHECK(check_wcp_vs_subsets(f1.left));
  CHECK(check_wcp_vs_subsets(f1.right));
  CHECK_THROWS_AS(check_wcp_vs_subsets(path_tree(17)), SizeLimitError);
}

TEST_CASE("edge order does not matter") {
  for (std::size_t n = 2; n <= 8; ++n) {
    for (const auto& t : all_free_trees(n)) {
      const auto base = wcp_multiset(WeightedForest::unit(t));
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        WcpOptions options;
        options.memoize = false;
        options.edge_seed = seed * 7919 + n;
        CHECK(wcp_multiset(WeightedForest::unit(t), options) == base);
      }
    }
  }
}

TEST_CASE("signed image reproduces the expansion") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (const auto& t : all_free_trees(n)) {
      CHECK(signed_image(wcp_multiset(WeightedForest::unit(t)), static_cast<int>(n)) == psum_expansion(t));
    }
  }
}

TEST_CASE("Newton conversion") {
  const std::pair<Partition, Rational> p1[] = {{Partition({1}), Rational(1)}};
  const auto e1 = p_to_e(p1);
  CHECK(e1.terms().size() == 1);
  CHECK(e1.coefficient(Partition({1})) == 1);

  const std::pair<Partition, Rational> p2[] = {{Partition({2}), Rational(1)}};
  const auto e2 = p_to_e(p2);
  CHECK(e2.terms().size() == 2);
  CHECK(e2.coefficient(Partition({1, 1})) == 1);
  CHECK(e2.coefficient(Partition({2})) == -2);

  const std::pair<Partition, Rational> mixed[] = {{Partition({2}), Rational(1)}, {Partition({1}), Rational(1)}};
  CHECK_THROWS_AS(p_to_e(mixed), MixedDegreeError);
}

TEST_CASE("Newton conversion checked by evaluation") {
  // p_lambda(x) = sum of c_mu e_mu(x) at integer points in 6 variables.
  const std::vector<std::vector<oracle::Big>> points = {
      {1, 2, 3, 4, 5, 6}, {2, -1, 0, 7, 3, 1}, {5, 5, -2, 1, 9, -4}};
  for (int n = 1; n <= 6; ++n) {
    const auto& table = PartitionTable::of(n);
    for (PartitionId id = 0; id < table.size(); ++id) {
      const std::pair<Partition, Rational> term[] = {{table.at(id), Rational(1)}};
      const auto e = p_to_e(term);
      for (const auto& x : points) {
        Rational sum = 0;
        for (const auto& [mu, c] : e.terms()) sum += c * Rational(oracle::eval_e(mu, x));
        CHECK(sum == Rational(oracle::eval_p(table.at(id), x)));
      }
    }
  }
}

TEST_CASE("distinct trees give distinct e-expansions") {
  CHECK(!(p_to_e(psum_expansion(fixtures::star4())) == p_to_e(psum_expansion(fixtures::path4()))));
  for (std::size_t n = 1; n <= 8; ++n) {
    std::set<std::string> psums;
    std::vector<EBasisExpr> es;
    for (const auto& t : all_free_trees(n)) {
      const auto x = psum_expansion(t);
      psums.insert(x.to_string());
      es.push_back(p_to_e(x));
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < es.size(); ++i) {
      bool fresh = true;
      for (std::size_t j = 0; j < i && fresh; ++j) fresh = !(es[i] == es[j]);
      distinct += fresh;
    }
    CHECK(distinct == psums.size());
  }
}

TEST_CASE("proper colourings") {
  const SimpleGraph p2{2, {{0, 1}}};
  const auto t = coloring_expansion(p2, 2);
  CHECK(t.size() == 1);
  CHECK(t.at({1, 1}) == 2);

  const SimpleGraph k3{3, {{0, 1}, {1, 2}, {0, 2}}};
  CHECK(coloring_expansion(k3, 2).empty());
  CHECK_THROWS_AS(coloring_expansion(SimpleGraph{9, {}}, 2), SizeLimitError);
  CHECK_THROWS_AS(coloring_expansion(p2, 5), SizeLimitError);

  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& tree : all_free_trees(n)) {
      SimpleGraph g{n, {tree.edges().begin(), tree.edges().end()}};
      for (std::uint64_t c = 1; c <= 4; ++c) {
        std::uint64_t sum = 0;
        for (const auto& [mono, count] : coloring_expansion(g, c)) sum += count;
        std::uint64_t expect = c;
        for (std::size_t i = 1; i < n; ++i) expect *= c - 1;
        CHECK(sum == expect);
      }
    }
  }
}

TEST_CASE("the two 5-vertex graphs share their chromatic symmetric function") {
  const auto [a, b] = fixtures::general_graph_pair();
  for (std::size_t vars = 1; vars <= 4; ++vars) CHECK(coloring_expansion(a, vars) == coloring_expansion(b, vars));
  CHECK(graph_psum_expansion(a) == graph_psum_expansion(b));

  // Not isomorphic: the degree sequences differ.
  auto degrees = [](const SimpleGraph& g) {
    std::vector<int> d(g.n, 0);
    for (const auto& [u, v] : g.edges) ++d[u], ++d[v];
    std::sort(d.begin(), d.end());
    return d;
  };
  CHECK(degrees(a) != degrees(b));

  // On a tree the general expansion is the tree expansion.
  const Tree f = fixtures::figure2_pair().left;
  const auto general = graph_psum_expansion(SimpleGraph{f.size(), {f.edges().begin(), f.edges().end()}});
  const auto tree = psum_expansion(f);
  CHECK(general.size() == tree.items().size());
  for (const auto& [p, c] : tree.items()) CHECK(general.at(p) == c);
}
