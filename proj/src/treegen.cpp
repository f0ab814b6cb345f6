#include "chromacut/treegen.hpp"

#include <algorithm>

#include "chromacut/errors.hpp"

namespace chromacut {

namespace {

// Index of the second vertex at depth 1, i.e. the end of the first subtree of
// the root; levels.size() if the root has one child.
std::size_t first_subtree_end(const std::vector<int>& levels) {
  for (std::size_t i = 2; i < levels.size(); ++i) {
    if (levels[i] == 1) return i;
  }
  return levels.size();
}

// Successor of a rooted level sequence. p is the position to advance, or
// npos to use the last vertex deeper than 1. Returns false when exhausted.
bool next_rooted(std::vector<int>& levels, std::size_t p = std::string::npos) {
  if (p == std::string::npos) {
    p = levels.size() - 1;
    while (levels[p] == 1) --p;
  }
  if (p == 0) return false;
  std::size_t q = p - 1;
  while (levels[q] != levels[p] - 1) --q;
  for (std::size_t i = p; i < levels.size(); ++i) levels[i] = levels[i - p + q];
  return true;
}

// Ensures the sequence is the canonical representative of a free tree rooted
// at its (first) centre; otherwise jumps to the next candidate that is.
void make_free(std::vector<int>& levels) {
  const std::size_t m = first_subtree_end(levels);
  // left: first subtree, depths shifted up by one; rest: root plus the others.
  const std::size_t left_len = m - 1;
  const std::size_t rest_len = levels.size() - m + 1;
  int left_height = 0;
  for (std::size_t i = 1; i < m; ++i) left_height = std::max(left_height, levels[i] - 1);
  int rest_height = 0;
  for (std::size_t i = m; i < levels.size(); ++i) rest_height = std::max(rest_height, levels[i]);

  bool valid = rest_height >= left_height;
  if (valid && rest_height == left_height) {
    if (left_len > rest_len) {
      valid = false;
    } else if (left_len == rest_len) {
      // Compare left = levels[1..m) - 1 against rest = [0] + levels[m..).
      for (std::size_t i = 0; i < left_len; ++i) {
        const int a = levels[1 + i] - 1;
        const int b = i == 0 ? 0 : levels[m + i - 1];
        if (a != b) {
          valid = a < b;
          break;
        }
      }
    }
  }
  if (valid) return;

  const std::size_t p = left_len;
  const int old = levels[p];
  next_rooted(levels, p);
  if (old > 2) {
    const std::size_t m2 = first_subtree_end(levels);
    int h = 0;
    for (std::size_t i = 1; i < m2; ++i) h = std::max(h, levels[i] - 1);
    // Rest becomes a path of height h + 1.
    const std::size_t len = static_cast<std::size_t>(h) + 1;
    for (std::size_t i = 0; i < len; ++i) levels[levels.size() - len + i] = static_cast<int>(i) + 1;
  }
}

}  // namespace

Tree tree_from_level_sequence(const std::vector<int>& levels) {
  std::vector<Edge> edges;
  std::vector<Vertex> last_at_depth(levels.size() + 1, 0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int d = levels[i];
    if (i > 0) edges.push_back({last_at_depth[d - 1], static_cast<Vertex>(i)});
    last_at_depth[d] = static_cast<Vertex>(i);
  }
  return Tree(levels.size(), std::move(edges));
}

TreeStream::TreeStream(std::size_t n, std::size_t shard_index, std::size_t shard_count)
    : n_(n), shard_index_(shard_index), shard_count_(shard_count) {
  if (n < 1) throw RangeError("free tree enumeration needs n >= 1");
  if (shard_count == 0 || shard_index >= shard_count) {
    throw RangeError("shard index must satisfy 0 <= index < count");
  }
}

bool TreeStream::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (n_ <= 2) {
      levels_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) levels_[i] = static_cast<int>(i);
      return true;
    }
    // Path of length n rooted at its centre.
    for (std::size_t i = 0; i <= n_ / 2; ++i) levels_.push_back(static_cast<int>(i));
    for (std::size_t i = 1; i < (n_ + 1) / 2; ++i) levels_.push_back(static_cast<int>(i));
    make_free(levels_);
    return true;
  }
  if (n_ <= 2 || !next_rooted(levels_)) {
    done_ = true;
    return false;
  }
  make_free(levels_);
  return true;
}

std::optional<Tree> TreeStream::next() {
  while (advance()) {
    const auto pos = position_++;
    if (pos % shard_count_ == shard_index_) return tree_from_level_sequence(levels_);
  }
  return std::nullopt;
}

TreeStream enumerate_free_trees(std::size_t n) { return TreeStream(n); }

TreeStream shard_stream(std::size_t n, std::size_t shard_index, std::size_t shard_count) {
  return TreeStream(n, shard_index, shard_count);
}

std::vector<Tree> all_free_trees(std::size_t n) {
  std::vector<Tree> out;
  auto stream = enumerate_free_trees(n);
  while (auto t = stream.next()) out.push_back(std::move(*t));
  return out;
}

std::uint64_t count_free_trees(std::size_t n) {
  auto stream = enumerate_free_trees(n);
  std::uint64_t count = 0;
  while (stream.next()) ++count;
  return count;
}

}  // namespace chromacut
