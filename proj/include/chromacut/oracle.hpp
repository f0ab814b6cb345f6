#ifndef CHROMACUT_ORACLE_HPP
#define CHROMACUT_ORACLE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chromacut/cuts.hpp"
#include "chromacut/partition.hpp"
#include "chromacut/tree.hpp"

namespace chromacut {

// Independent cross-checks for the cut machinery. Nothing here calls theta.

struct WeightedForest {
  std::vector<std::uint32_t> weights;  // one per vertex, >= 1
  std::vector<Edge> edges;

  static WeightedForest unit(const Tree& t);
  std::uint32_t total_weight() const;
  // CycleError on a loop, a repeated edge or a cycle; RangeError on bad
  // weights or labels.
  void validate() const;
};

// Unsigned multiset of partitions produced by the weighted deletion/contraction
// recursion.
class PartitionMultiset {
 public:
  void add(const Partition& p, std::uint64_t count = 1) { counts_[p] += count; }
  void merge(const PartitionMultiset& other);
  std::uint64_t total() const;
  std::uint64_t multiplicity(const Partition& p) const;
  const std::map<Partition, std::uint64_t>& counts() const { return counts_; }

  friend bool operator==(const PartitionMultiset&, const PartitionMultiset&) = default;

 private:
  std::map<Partition, std::uint64_t> counts_;
};

struct WcpOptions {
  // Memoize on the canonical form of the weighted forest.
  bool memoize = true;
  // When set, every step contracts/deletes a uniformly random edge drawn from
  // this seed instead of the first listed edge.
  std::optional<std::uint64_t> edge_seed;
  std::uint32_t weight_guard = 16;
};

PartitionMultiset wcp_multiset(const WeightedForest& f, const WcpOptions& options = {});

// Attaches (-1)^(n - #parts) to each entry.
PSumExpr signed_image(const PartitionMultiset& m, int n);

// Unsigned multiset of theta(S) over all S, the empty cut included.
PartitionMultiset subset_multiset(const Tree& t);

// wcp_multiset on unit weights equals subset_multiset. Requires n <= 16.
bool check_wcp_vs_subsets(const Tree& t);

using Rational = boost::multiprecision::cpp_rational;

// Linear combination of products of elementary symmetric functions e_lambda.
class EBasisExpr {
 public:
  void add(const Partition& p, const Rational& c);
  Rational coefficient(const Partition& p) const;
  const std::map<Partition, Rational>& terms() const { return terms_; }

  friend bool operator==(const EBasisExpr&, const EBasisExpr&) = default;

 private:
  std::map<Partition, Rational> terms_;
};

// Rewrites a power-sum combination in the e-basis via Newton's identities,
// p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... + (-1)^(k-1) k e_k. All partitions
// must share one total (MixedDegreeError otherwise), at most 16.
EBasisExpr p_to_e(std::span<const std::pair<Partition, Rational>> terms);
EBasisExpr p_to_e(const PSumExpr& expr);

// Small general graph for the one non-tree fixture.
struct SimpleGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
};

// Monomial exponent vector (one entry per colour) -> number of proper
// colourings with exactly those colour counts, using var_count colours.
using MonomialTable = std::map<std::vector<int>, std::uint64_t>;
MonomialTable coloring_expansion(const SimpleGraph& g, std::size_t var_count);

// Power-sum expansion of a general graph: sum over spanning edge subsets A of
// (-1)^|A| p_lambda(A), lambda(A) the component sizes of (V, A). Limited to
// 20 edges.
std::map<Partition, std::int64_t> graph_psum_expansion(const SimpleGraph& g);

}  // namespace chromacut

#endif  // CHROMACUT_ORACLE_HPP
