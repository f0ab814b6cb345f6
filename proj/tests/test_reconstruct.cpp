#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "chromacut/errors.hpp"
#include "chromacut/fixtures.hpp"
#include "chromacut/reconstruct.hpp"
#include "chromacut/treegen.hpp"

using namespace chromacut;

namespace {

const Partition& one_cut(const LabeledCuts& lc, std::uint32_t e) { return lc.at(EdgeSet::of({e})); }

Tree shuffle_edges(const Tree& t, std::uint64_t seed) {
  std::vector<Edge> edges(t.edges().begin(), t.edges().end());
  std::mt19937_64 rng(seed);
  std::shuffle(edges.begin(), edges.end(), rng);
  return Tree(t.size(), std::move(edges));
}

}  // namespace

TEST_CASE("pair relations on the figure 2 tree") {
  const Tree t = fixtures::figure2_pair().left;
  const int n = 10;
  const auto one = labeled_k_cuts(t, 1);
  // e2 (far side 2) and e8 (far side 1).
  CHECK(theta(t, EdgeSet::of({1, 7})) == Partition({8, 1, 1}));
  CHECK(pair_relation(one_cut(one, 1), one_cut(one, 7), theta(t, EdgeSet::of({1, 7})), n) ==
        PairRelation::Nested);
  CHECK(theta(t, EdgeSet::of({1, 2})) == Partition({6, 2, 2}));
  CHECK(pair_relation(one_cut(one, 1), one_cut(one, 2), theta(t, EdgeSet::of({1, 2})), n) ==
        PairRelation::Disjoint);
  for (std::uint32_t j = 1; j < 9; ++j) {
    CHECK(pair_relation(one_cut(one, 0), one_cut(one, j), theta(t, EdgeSet::of({0, j})), n) ==
          PairRelation::Nested);
  }
  CHECK_THROWS_AS(pair_relation(Partition({8, 2}), Partition({9, 1}), Partition({5, 3, 2}), n),
                  InconsistentDataError);
  CHECK_THROWS_AS(pair_relation(Partition({8, 2}), Partition({9, 1}), Partition({8, 2}), n),
                  InconsistentDataError);
  CHECK(relation_name(PairRelation::Disjoint) == "DISJOINT");
}

TEST_CASE("pair relations match the tree structure up to 10 vertices") {
  for (std::size_t n = 3; n <= 10; ++n) {
    for (const auto& t : all_free_trees(n)) {
      const auto one = labeled_k_cuts(t, 1);
      for (std::uint32_t a = 0; a < t.edge_count(); ++a) {
        for (std::uint32_t b = a + 1; b < t.edge_count(); ++b) {
          const auto r = pair_relation(one_cut(one, a), one_cut(one, b), theta(t, EdgeSet::of({a, b})),
                                       static_cast<int>(n));
          CHECK(r != PairRelation::Ambiguous);
          CHECK(r == structural_relation(t, EdgeId{a}, EdgeId{b}));
        }
      }
    }
  }
}

TEST_CASE("side of the central edge") {
  CHECK(side_of_central_edge(Partition({5, 2, 2, 1}), 10) == Side::Same);
  CHECK(side_of_central_edge(Partition({3, 3, 2, 2}), 10) == Side::Opposite);
  CHECK(side_of_central_edge(Partition({7, 3, 3, 1}), 14) == Side::Same);
}

TEST_CASE("deriving 2-cuts of P6 from its 3-cuts") {
  const Tree p6 = path_tree(6);
  const auto derived = derive_lower_cuts(labeled_k_cuts(p6, 3), 6);
  CHECK(derived == labeled_k_cuts(p6, 2));
  // Removing e2 and e4 leaves three 2-vertex paths.
  CHECK(derived.at(EdgeSet::of({1, 3})) == Partition({2, 2, 2}));
}

TEST_CASE("derived tables equal direct tables up to 9 vertices") {
  for (int n = 5; n <= 9; ++n) {
    for (const auto& t : all_free_trees(static_cast<std::size_t>(n))) {
      for (int k = 2; k <= n - 3; ++k) {
        CHECK(derive_lower_cuts(labeled_k_cuts(t, static_cast<std::size_t>(k)), n) ==
              labeled_k_cuts(t, static_cast<std::size_t>(k - 1)));
      }
    }
  }
}

TEST_CASE("derive_lower_cuts preconditions") {
  const Tree p6 = path_tree(6);
  CHECK_THROWS_AS(derive_lower_cuts(labeled_k_cuts(p6, 4), 6), RangeError);
  CHECK_THROWS_AS(derive_lower_cuts(labeled_k_cuts(p6, 1), 6), RangeError);
  auto entries = labeled_k_cuts(p6, 3).entries();
  entries.pop_back();
  CHECK_THROWS_AS(derive_lower_cuts(LabeledCuts(6, 3, entries), 6), IncompleteTableError);
}

TEST_CASE("k = n-2 is ambiguous") {
  // In P5 every 3-cut is (2,1,1,1). Removing e1,e2 leaves (3,1,1), removing
  // e1,e3 leaves (2,2,1), yet both see the same augmentations.
  const Tree p5 = path_tree(5);
  const auto three = labeled_k_cuts(p5, 3);
  for (const auto& [s, p] : three.entries()) CHECK(p == Partition({2, 1, 1, 1}));
  CHECK(theta(p5, EdgeSet::of({0, 1})) == Partition({3, 1, 1}));
  CHECK(theta(p5, EdgeSet::of({0, 2})) == Partition({2, 2, 1}));
  const std::vector<Partition> augs(2, Partition({2, 1, 1, 1}));
  const auto cands = lower_cut_candidates(augs);
  CHECK(cands == std::vector<Partition>{Partition({2, 2, 1}), Partition({3, 1, 1})});
  CHECK_THROWS_AS(derive_lower_cuts(three, 5), RangeError);
}

TEST_CASE("reconstruction of the figure trees") {
  const auto f2 = fixtures::figure2_pair();
  const auto in = make_reconstruction_input(f2.left);
  const Tree rebuilt = reconstruct_double_centroid(in.input);
  CHECK(canonical_form(rebuilt) == canonical_form(f2.left));
  CHECK(labeled_k_cuts(rebuilt, 2) == in.input.two_cuts);

  const auto f1 = fixtures::figure1_pair();
  for (const Tree& t : {f1.left, f1.right, f2.right}) {
    CHECK(canonical_form(reconstruct_double_centroid(make_reconstruction_input(t).input)) == canonical_form(t));
  }
}

TEST_CASE("reconstruction round trip for small two-centroid trees") {
  std::size_t checked = 0;
  for (std::size_t n : {4u, 6u, 8u, 10u}) {
    for (const auto& t : all_free_trees(n)) {
      if (!centroid_info(t).double_centroid()) continue;
      const auto in = make_reconstruction_input(t);
      CHECK(canonical_form(reconstruct_double_centroid(in.input)) == canonical_form(t));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("reconstruction rejects bad input") {
  CHECK_THROWS_AS(make_reconstruction_input(star_tree(5)), NotDoubleCentroidError);

  auto in = make_reconstruction_input(fixtures::figure2_pair().left).input;
  auto entries = in.two_cuts.entries();
  // Swap two values: the table no longer comes from a tree.
  std::swap(entries[3].second, entries[20].second);
  ReconstructionInput bad = in;
  bad.two_cuts = LabeledCuts(10, 2, entries);
  CHECK_THROWS_AS(reconstruct_double_centroid(bad), InconsistentDataError);

  ReconstructionInput missing = in;
  missing.slices.clear();
  CHECK_THROWS_AS(reconstruct_double_centroid(missing), IncompleteTableError);

  ReconstructionInput odd = in;
  odd.n = 9;
  CHECK_THROWS_AS(reconstruct_double_centroid(odd), NotDoubleCentroidError);

  // The figure 2 pair shares its 2-cut table, so the slices alone decide
  // which of the two trees comes back.
  ReconstructionInput mixed = in;
  const auto right = fixtures::figure2_pair().right;
  mixed.slices = make_reconstruction_input(right).input.slices;
  CHECK(canonical_form(reconstruct_double_centroid(mixed)) == canonical_form(right));
}

TEST_CASE("reconstruction from a labeled 3-cut table in any edge order") {
  const auto f2 = fixtures::figure2_pair();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Tree shuffled = shuffle_edges(f2.left, seed);
    const Tree out = reconstruct_from_labeled_cuts(labeled_k_cuts(shuffled, 3), 10);
    CHECK(canonical_form(out) == canonical_form(f2.left));
  }
  const Tree f1r = fixtures::figure1_pair().right;
  CHECK(canonical_form(reconstruct_from_labeled_cuts(labeled_k_cuts(f1r, 4), 14)) == canonical_form(f1r));
  CHECK_THROWS_AS(reconstruct_from_labeled_cuts(labeled_k_cuts(f2.left, 2), 10), RangeError);
  CHECK_THROWS_AS(reconstruct_from_labeled_cuts(labeled_k_cuts(star_tree(7), 3), 7), NotDoubleCentroidError);
}

TEST_CASE("labeled 2-cut equivalence") {
  const auto f2 = fixtures::figure2_pair();
  CHECK(labeled_2cuts_equivalent(f2.left, f2.right));
  CHECK(labeled_2cuts_equivalent(f2.left, shuffle_edges(f2.right, 3)));
  CHECK(!labeled_2cuts_equivalent(star_tree(6), path_tree(6)));
  // Degenerate: with three edges every 2-cut is (2,1,1).
  CHECK(labeled_2cuts_equivalent(fixtures::star4(), fixtures::path4()));
  const auto f1 = fixtures::figure1_pair();
  CHECK(labeled_2cuts_equivalent(shuffle_edges(f1.left, 1), shuffle_edges(f1.right, 2)));
}

TEST_CASE("labeled 2-cuts alone do not determine a tree") {
  const auto r = verify_labeled_2cut_insufficiency();
  CHECK(r.fig2_same_labeled_2cuts);
  CHECK(r.fig1_same_labeled_2cuts);
  CHECK(r.pairs_non_isomorphic);
  CHECK(r.fig2_left_e123 == Partition({5, 2, 2, 1}));
  CHECK(r.fig2_right_e123 == Partition({3, 3, 2, 2}));
  CHECK(r.fig1_left_e123 == Partition({7, 3, 3, 1}));
  CHECK(r.fig1_right_e123 == Partition({4, 4, 3, 3}));
  CHECK(r.no_smaller_pair);
}

TEST_CASE("labeled k-cuts determine the tree for 3 <= k <= n-3") {
  for (int n = 6; n <= 8; ++n) {
    const auto trees = all_free_trees(static_cast<std::size_t>(n));
    for (const auto& t : trees) {
      for (int k = 3; k <= n - 3; ++k) {
        const auto lc = labeled_k_cuts(t, static_cast<std::size_t>(k));
        if (centroid_info(t).double_centroid()) {
          CHECK(canonical_form(reconstruct_from_labeled_cuts(lc, n)) == canonical_form(t));
        } else {
          auto two = lc;
          while (two.k() > 2) two = derive_lower_cuts(two, n);
          CHECK(two == labeled_k_cuts(t, 2));
          for (const auto& other : trees) {
            if (canonical_form(other) != canonical_form(t)) CHECK(!labeled_2cuts_equivalent(t, other));
          }
        }
      }
    }
  }
}

TEST_CASE("table JSON") {
  const auto lc = labeled_k_cuts(fixtures::figure2_pair().left, 2);
  const auto text = labeled_cuts_to_json(lc);
  CHECK(text.starts_with("{\"n\":10,\"k\":2,\"entries\":[[[0,1],[5,3,2]]"));
  CHECK(labeled_cuts_from_json(text) == lc);

  const auto in = make_reconstruction_input(fixtures::figure2_pair().left).input;
  const auto back = reconstruction_input_from_json(reconstruction_input_to_json(in));
  CHECK(back.n == in.n);
  CHECK(back.two_cuts == in.two_cuts);
  CHECK(back.slices == in.slices);

  CHECK_THROWS_AS(labeled_cuts_from_json("{"), ParseError);
  CHECK_THROWS_AS(labeled_cuts_from_json("{\"n\":4}"), ParseError);
  CHECK_THROWS_AS(labeled_cuts_from_json(R"({"n":4,"k":1,"entries":[[[0],[2,1]]]})"), InconsistentDataError);
  CHECK_THROWS_AS(labeled_cuts_from_json(R"({"n":4,"k":1,"entries":[[[5],[2,2]]]})"), InconsistentDataError);
  CHECK_THROWS_AS(labeled_cuts_from_json(R"({"n":4,"k":1,"entries":[[[0],[2,2]],[[0],[3,1]]]})"),
                  InconsistentDataError);
}
