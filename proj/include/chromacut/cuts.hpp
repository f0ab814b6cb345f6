#ifndef CHROMACUT_CUTS_HPP
#define CHROMACUT_CUTS_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chromacut/partition.hpp"
#include "chromacut/tree.hpp"

namespace chromacut {

// A set of edges of one tree, as a bitmask over EdgeId indices.
struct EdgeSet {
  std::uint64_t mask = 0;

  static EdgeSet of(std::initializer_list<std::uint32_t> indices);
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask)); }
  bool contains(EdgeId e) const { return (mask >> e.index) & 1; }
  EdgeSet with(EdgeId e) const { return {mask | (std::uint64_t{1} << e.index)}; }
  std::vector<std::uint32_t> indices() const;

  friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;
};

// Calls f(mask) for every k-subset of {0..width-1}, masks ascending.
template <typename F>
void for_each_k_subset(std::size_t width, std::size_t k, F&& f) {
  if (k > width) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << width;
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  while (x < limit) {
    f(x);
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

std::uint64_t binomial(std::size_t n, std::size_t k);

// Precomputed evaluator for theta on one tree. The tree is rooted at vertex 0
// and each edge is ranked by the preorder position of its lower endpoint, so
// the cut edges of a rank mask come out in preorder and each component size
// is the lower subtree minus the cut subtrees nested directly inside it.
class CutEngine {
 public:
  explicit CutEngine(const Tree& t);

  std::size_t n() const { return n_; }
  std::size_t edge_count() const { return sub_.size(); }

  // Component sizes, non-increasing, for a mask over preorder ranks.
  // Returns the number of parts written to out (size >= popcount + 1).
  std::size_t parts_by_rank(std::uint64_t rank_mask, int* out) const;

  std::uint64_t rank_mask(EdgeSet s) const;
  Partition theta(EdgeSet s) const;

 private:
  std::size_t n_;
  std::vector<int> sub_;                 // by rank: size of the lower side
  std::vector<std::uint32_t> rank_of_;   // by EdgeId
};

// Component sizes of t after deleting s.
Partition theta(const Tree& t, EdgeSet s);

// Multiset {theta(S) : |S| = k}, as (partition id, multiplicity) pairs in
// ascending id order, i.e. ascending LexOnParts.
class CutMultiset {
 public:
  CutMultiset() = default;
  CutMultiset(int n, int k, std::vector<std::pair<PartitionId, std::uint64_t>> entries)
      : n_(n), k_(k), entries_(std::move(entries)) {}

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<std::pair<PartitionId, std::uint64_t>>& entries() const { return entries_; }
  std::uint64_t total() const;
  std::uint64_t multiplicity(const Partition& p) const;
  std::vector<std::pair<Partition, std::uint64_t>> items() const;

  // One "<parts>x<multiplicity>" line per entry, e.g. "3,1x2".
  std::string serialize() const;
  // Fixed-width binary form used for grouping keys.
  void append_key_bytes(std::string& out) const;

  friend bool operator==(const CutMultiset&, const CutMultiset&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<std::pair<PartitionId, std::uint64_t>> entries_;
};

// Map from every k-subset of edges to its partition, masks ascending.
class LabeledCuts {
 public:
  LabeledCuts() = default;
  LabeledCuts(int n, int k, std::vector<std::pair<EdgeSet, Partition>> entries);

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<std::pair<EdgeSet, Partition>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // nullptr if s is not in the table.
  const Partition* find(EdgeSet s) const;
  const Partition& at(EdgeSet s) const;  // IncompleteTableError if missing

  // True iff the domain is exactly the k-subsets of the n-1 edges.
  bool complete() const;
  CutMultiset forget_labels() const;

  friend bool operator==(const LabeledCuts&, const LabeledCuts&) = default;

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<std::pair<EdgeSet, Partition>> entries_;
};

// Signed power-sum expansion, sum over S of (-1)^(n-1-|S|) p_theta(S).
class PSumExpr {
 public:
  PSumExpr() = default;
  PSumExpr(int n, std::vector<std::pair<PartitionId, std::int64_t>> terms)
      : n_(n), terms_(std::move(terms)) {}

  int n() const { return n_; }
  const std::vector<std::pair<PartitionId, std::int64_t>>& terms() const { return terms_; }
  std::int64_t coefficient(const Partition& p) const;
  std::vector<std::pair<Partition, std::int64_t>> items() const;
  std::uint64_t absolute_mass() const;
  std::string to_string() const;

  friend bool operator==(const PSumExpr&, const PSumExpr&) = default;

 private:
  int n_ = 0;
  std::vector<std::pair<PartitionId, std::int64_t>> terms_;
};

inline constexpr std::size_t kSignatureGuard = 24;

CutMultiset k_cuts(const Tree& t, std::size_t k);
CutMultiset k_cuts(const CutEngine& engine, std::size_t k);
LabeledCuts labeled_k_cuts(const Tree& t, std::size_t k);
PSumExpr psum_expansion(const Tree& t, std::size_t guard = kSignatureGuard);

// k-cut multisets for k = 1..n-1.
std::vector<CutMultiset> all_cuts_signature(const Tree& t, std::size_t guard = kSignatureGuard);

// Signed image of a full signature (the empty cut contributes (n) itself).
PSumExpr psum_from_signature(int n, const std::vector<CutMultiset>& signature);
std::vector<CutMultiset> signature_from_psum(const PSumExpr& expr);

}  // namespace chromacut

#endif  // CHROMACUT_CUTS_HPP
