#ifndef CHROMACUT_TREEGEN_HPP
#define CHROMACUT_TREEGEN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "chromacut/tree.hpp"

namespace chromacut {

// Streams every free tree on n vertices exactly once, in a fixed order, using
// the Wright-Richmond-Odlyzko-McKay successor rule on canonical level
// sequences. State is O(n). A sharded stream yields the trees whose position
// in the full stream is congruent to shard_index modulo shard_count.
class TreeStream {
 public:
  explicit TreeStream(std::size_t n, std::size_t shard_index = 0, std::size_t shard_count = 1);

  std::optional<Tree> next();

  // Position in the unsharded stream of the tree most recently returned.
  std::uint64_t position() const { return position_ - 1; }
  std::size_t n() const { return n_; }

 private:
  bool advance();

  std::size_t n_;
  std::size_t shard_index_;
  std::size_t shard_count_;
  std::vector<int> levels_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t position_ = 0;
};

TreeStream enumerate_free_trees(std::size_t n);
TreeStream shard_stream(std::size_t n, std::size_t shard_index, std::size_t shard_count);

std::vector<Tree> all_free_trees(std::size_t n);
std::uint64_t count_free_trees(std::size_t n);

// Tree whose vertex i has depth levels[i]; levels[0] == 0 is the root.
Tree tree_from_level_sequence(const std::vector<int>& levels);

}  // namespace chromacut

#endif  // CHROMACUT_TREEGEN_HPP
