#ifndef CHROMACUT_PARTITION_HPP
#define CHROMACUT_PARTITION_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chromacut {

// A non-increasing tuple of positive integers. The built-in ordering is
// lexicographic on the parts (LexOnParts).
class Partition {
 public:
  Partition() = default;
  // Sorts the parts; throws RangeError on a non-positive part.
  explicit Partition(std::vector<int> parts);

  std::span<const int> parts() const { return parts_; }
  int operator[](std::size_t i) const { return parts_[i]; }
  std::size_t length() const { return parts_.size(); }
  int total() const;
  std::size_t count(int value) const;

  // "3,1,1"
  std::string to_string() const;
  static Partition parse(std::string_view text);

  friend auto operator<=>(const Partition&, const Partition&) = default;
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

enum class PartitionOrder { LexOnParts, ReverseLex };

// Strict "a precedes b". ReverseLex ranks a above b when, at the first
// differing index, a has the smaller part; so (n/2, n/2) is the largest
// two-part partition of n.
bool partition_less(const Partition& a, const Partition& b, PartitionOrder order);

using PartitionId = std::uint32_t;

// All partitions of n, numbered in ascending lexicographic order. Ranking is
// arithmetic, so looking up a sorted part list costs O(length).
class PartitionTable {
 public:
  static constexpr int kMaxN = 40;

  // Shared immutable table; thread-safe.
  static const PartitionTable& of(int n);

  int n() const { return n_; }
  std::size_t size() const { return partitions_.size(); }
  const Partition& at(PartitionId id) const { return partitions_[id]; }

  // parts must be non-increasing, positive and sum to n.
  PartitionId rank(std::span<const int> parts) const;
  PartitionId rank(const Partition& p) const { return rank(p.parts()); }

  // Number of partitions of r into parts no larger than m.
  std::uint64_t bounded_count(int r, int m) const;

 private:
  explicit PartitionTable(int n);

  int n_;
  std::vector<std::uint64_t> counts_;  // (n+1) x (n+1)
  std::vector<Partition> partitions_;
};

}  // namespace chromacut

#endif  // CHROMACUT_PARTITION_HPP
