#include "chromacut/partition.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>

#include "chromacut/errors.hpp"

namespace chromacut {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_) {
    if (p <= 0) throw RangeError("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::size_t Partition::count(int value) const {
  return static_cast<std::size_t>(std::count(parts_.begin(), parts_.end(), value));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(parts_[i]);
  }
  return out;
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto tok = text.substr(0, comma);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad partition part '" + std::string(tok) + "'");
    }
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (parts.empty()) throw ParseError("empty partition");
  return Partition(std::move(parts));
}

bool partition_less(const Partition& a, const Partition& b, PartitionOrder order) {
  if (order == PartitionOrder::LexOnParts) return a < b;
  const auto n = std::min(a.length(), b.length());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return a.length() < b.length();
}

PartitionTable::PartitionTable(int n) : n_(n), counts_((n + 1) * (n + 1), 0) {
  // counts_[r * (n+1) + m]: partitions of r with parts <= m.
  for (int m = 0; m <= n; ++m) counts_[m] = 1;
  for (int r = 1; r <= n; ++r) {
    for (int m = 1; m <= n; ++m) {
      auto& c = counts_[r * (n + 1) + m];
      c = counts_[r * (n + 1) + m - 1];
      if (m <= r) c += counts_[(r - m) * (n + 1) + m];
    }
  }

  // Enumerate in ascending lexicographic order.
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      partitions_.emplace_back(parts);
      return;
    }
    for (int p = 1; p <= std::min(remaining, max_part); ++p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
}

std::uint64_t PartitionTable::bounded_count(int r, int m) const {
  if (r < 0) return 0;
  m = std::min(std::max(m, 0), n_);
  return counts_[r * (n_ + 1) + m];
}

PartitionId PartitionTable::rank(std::span<const int> parts) const {
  std::uint64_t id = 0;
  int remaining = n_;
  for (int p : parts) {
    id += bounded_count(remaining, p - 1);
    remaining -= p;
  }
  return static_cast<PartitionId>(id);
}

const PartitionTable& PartitionTable::of(int n) {
  if (n < 0 || n > kMaxN) throw SizeLimitError("partition tables support n <= 40");
  static std::array<std::unique_ptr<PartitionTable>, kMaxN + 1> tables;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto& slot = tables[n];
  if (!slot) slot.reset(new PartitionTable(n));
  return *slot;
}

}  // namespace chromacut
