#ifndef CHROMACUT_DISTINGUISH_HPP
#define CHROMACUT_DISTINGUISH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chromacut/cuts.hpp"
#include "chromacut/tree.hpp"

namespace chromacut {

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend auto operator<=>(const Hash128&, const Hash128&) = default;
  std::string hex() const;
};

Hash128 hash128(std::string_view bytes);

// Cumulative grouping key: the key bytes of the 1-cut, ..., k-cut multisets
// concatenated. Equal keys at depth k mean equal j-cuts for every j <= k.
struct SignatureKey {
  int k = 0;
  std::string bytes;

  void extend(const CutMultiset& cuts);
  Hash128 hash() const { return hash128(bytes); }
  friend auto operator<=>(const SignatureKey&, const SignatureKey&) = default;
};

struct TableRow {
  int n = 0;
  int k = 0;
  std::uint64_t colliding = 0;
  std::uint64_t total = 0;  // free trees on n vertices
  std::uint64_t families = 0;

  double density() const { return total ? static_cast<double>(colliding) / total : 0.0; }
  // density to 3 significant figures, printf %.3g
  std::string density_text() const;
};

// True iff colliding/total rounds to `printed` at the printed number of
// decimal places, e.g. "0.029" or "0.000041".
bool density_matches_printed(std::uint64_t colliding, std::uint64_t total, std::string_view printed);

// Trees that still share every j-cut multiset for j <= k, enumeration order.
struct Family {
  int n = 0;
  int k = 0;
  std::vector<Tree> members;
};

struct FiltrationOptions {
  int max_k = 1;
  unsigned threads = 1;  // 0 = hardware concurrency
  std::size_t guard_n = 20;
  // When set, surviving groups are written to <run_dir>/shards/<n>/<k>/ and a
  // later run with the same directory resumes from the deepest finished k.
  std::optional<std::filesystem::path> run_dir;
};

struct FiltrationResult {
  int n = 0;
  std::uint64_t total = 0;
  std::vector<TableRow> rows;     // one per computed depth, k ascending
  std::vector<Family> families;   // survivors at the last computed depth
  bool distinguished = false;     // no family survives at max_k
  int resumed_from = 0;           // deepest depth loaded from run_dir
};

FiltrationResult filtration(int n, const FiltrationOptions& options);

enum class Ordering { Less, Equal, Greater };

struct PreorderResult {
  Ordering order = Ordering::Equal;
  int depth = 0;  // k at which the comparison was decided; 0 when Equal
};

// Compares (C_1, ..., C_{n-1}) lexicographically, each C_k read as the sorted
// list of k-cut partitions with repetition. Stops at the first difference.
PreorderResult preorder_compare(const Tree& a, const Tree& b, std::size_t guard = kSignatureGuard);

struct MinimalPair {
  int n = 0;
  Tree first;
  Tree second;
};

// Smallest n <= max_n with two non-isomorphic trees sharing all j-cuts for
// j <= k; the pair is the first two members of the first family.
MinimalPair minimal_pair(int k, int max_n, unsigned threads = 1);

// Both trees have two centroids and b arises from a by moving some centroid
// branches across the central edge (the two are not isomorphic).
bool is_branch_transposition(const Tree& a, const Tree& b);

enum class SplitStatus { Pass, Fail, Skip };

struct SplitRecord {
  SplitStatus status = SplitStatus::Skip;
  Family family;
  std::vector<Tree> images;  // empty for Skip
  std::string note;
};

struct SplitReport {
  int n = 0;
  int k = 0;
  std::vector<SplitRecord> records;
  bool passed() const;
};

SplitReport split_conjecture_check(int n, int k, unsigned threads = 1);

std::string status_name(SplitStatus s);

// Reports. The header echoes the run configuration and a FNV-1a checksum of
// the body, so outputs are byte-comparable across runs and shard counts.
std::string csv_report(const std::vector<FiltrationResult>& results, std::string_view config);
std::string json_report(const std::vector<FiltrationResult>& results, std::string_view config);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace chromacut

#endif  // CHROMACUT_DISTINGUISH_HPP
