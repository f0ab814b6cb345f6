#ifndef CHROMACUT_RECONSTRUCT_HPP
#define CHROMACUT_RECONSTRUCT_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chromacut/cuts.hpp"
#include "chromacut/partition.hpp"
#include "chromacut/tree.hpp"

namespace chromacut {

// How the far components of two edges sit. The far component of an edge is
// the side without a centroid. NESTED: one far component contains the other
// edge. The central edge counts as NESTED with every edge.
enum class PairRelation { Nested, Disjoint, Ambiguous };

std::string relation_name(PairRelation r);

// From theta({e_i}), theta({e_j}) and theta({e_i, e_j}). With far sizes
// i >= k: NESTED predicts sort(n-i, i-k, k), DISJOINT sort(n-i-k, i, k).
// The two coincide only for i = n/2, the central edge, which is reported as
// NESTED. InconsistentDataError if neither matches.
PairRelation pair_relation(const Partition& theta_i, const Partition& theta_j, const Partition& theta_ij,
                           int n);

// Ground truth from the tree itself, for checking pair_relation.
PairRelation structural_relation(const Tree& t, EdgeId a, EdgeId b);

enum class Side { Same, Opposite };

// Input is theta({e1, e_i, e_j}) with e1 central: e_i and e_j lie on the same
// side of e1 iff some part equals n/2.
Side side_of_central_edge(const Partition& theta_e1ij, int n);

// All (k-1)-cut values consistent with the augmentations theta(E' + x), x
// not in E'. A unique survivor is the answer; see derive_lower_cuts.
std::vector<Partition> lower_cut_candidates(std::span<const Partition> augmentations);

// Labeled (k-1)-cuts from labeled k-cuts, 2 <= k <= n-3. Each theta(E') is
// recovered from the partitions theta(E' + x): it must be a merge of two
// parts of any augmentation, every augmentation must be a one-part split of
// it, and the split counts must fit a forest (a component of c vertices has
// c-1 edges, at least two leaf edges when c >= 3 and at most one balanced
// edge). RangeError outside the k range, IncompleteTableError on a partial
// table, InconsistentDataError when no unique value fits.
LabeledCuts derive_lower_cuts(const LabeledCuts& lc, int n);

// Edge order e1, e2, ... with theta({e1}) >= theta({e2}) >= ... under
// ReverseLex, so e1 is the central edge. Index i in the tables is e_{i+1}.
struct ReconstructionInput {
  int n = 0;
  LabeledCuts two_cuts;
  std::map<std::uint32_t, Partition> slices;  // j -> theta({e1, e2, e_j}), j >= 2
};

// The input for t with its edges reordered as above (ties by EdgeId), along
// with the reordered tree itself. NotDoubleCentroidError for one centroid.
struct OrderedInput {
  ReconstructionInput input;
  Tree ordered;
};
OrderedInput make_reconstruction_input(const Tree& t);

// Builds the tree edge by edge (e1 between the centroids, e2 at c1, then
// each e_i under the deepest edge whose far side contains it, or across e1
// as the side test says) and checks every input value before returning.
// Edge i of the result is e_{i+1}.
Tree reconstruct_double_centroid(const ReconstructionInput& input);

// Full labeled k-cut table in any edge order, 3 <= k <= n-3: derives lower
// tables, orders the edges and reconstructs. The result is isomorphic to the
// source tree.
Tree reconstruct_from_labeled_cuts(const LabeledCuts& lc, int n);

// Is there an edge bijection a -> b preserving every labeled 2-cut?
bool labeled_2cuts_equivalent(const Tree& a, const Tree& b);

struct InsufficiencyReport {
  bool fig2_same_labeled_2cuts = false;
  bool fig1_same_labeled_2cuts = false;
  bool pairs_non_isomorphic = false;
  Partition fig2_left_e123, fig2_right_e123;
  Partition fig1_left_e123, fig1_right_e123;
  int smallest_n_checked = 0;  // every n in 5..smallest_n_checked-1 was searched exhaustively
  bool no_smaller_pair = false;
};

// Checks the two figure pairs and searches n < 10 for a smaller pair with
// matching labeled 2-cuts. FixtureError if any expectation fails.
InsufficiencyReport verify_labeled_2cut_insufficiency();

// {"n": 10, "k": 2, "entries": [[[0, 1], [8, 1, 1]], ...]}
std::string labeled_cuts_to_json(const LabeledCuts& lc);
LabeledCuts labeled_cuts_from_json(std::string_view text);

// {"n": ..., "two_cuts": <table>, "slices": [[j, [parts]], ...]}
std::string reconstruction_input_to_json(const ReconstructionInput& input);
ReconstructionInput reconstruction_input_from_json(std::string_view text);

}  // namespace chromacut

#endif  // CHROMACUT_RECONSTRUCT_HPP
