#include "chromacut/cuts.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "chromacut/errors.hpp"

namespace chromacut {

namespace {

void sort_descending(int* parts, std::size_t count) {
  for (std::size_t i = 1; i < count; ++i) {
    const int v = parts[i];
    std::size_t j = i;
    while (j > 0 && parts[j - 1] < v) {
      parts[j] = parts[j - 1];
      --j;
    }
    parts[j] = v;
  }
}

// Dense counter over partition ids that remembers which slots it touched.
class IdCounter {
 public:
  explicit IdCounter(std::size_t size) : counts_(size, 0) {}
  void add(PartitionId id, std::uint64_t by = 1) {
    if (counts_[id] == 0) touched_.push_back(id);
    counts_[id] += by;
  }
  std::vector<std::pair<PartitionId, std::uint64_t>> take() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<std::pair<PartitionId, std::uint64_t>> out;
    out.reserve(touched_.size());
    for (auto id : touched_) {
      out.emplace_back(id, counts_[id]);
      counts_[id] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<PartitionId> touched_;
};

}  // namespace

EdgeSet EdgeSet::of(std::initializer_list<std::uint32_t> indices) {
  EdgeSet s;
  for (auto i : indices) s.mask |= std::uint64_t{1} << i;
  return s;
}

std::vector<std::uint32_t> EdgeSet::indices() const {
  std::vector<std::uint32_t> out;
  for (auto m = mask; m; m &= m - 1) out.push_back(static_cast<std::uint32_t>(std::countr_zero(m)));
  return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

CutEngine::CutEngine(const Tree& t) : n_(t.size()) {
  if (t.edge_count() > 63) throw SizeLimitError("edge masks support at most 63 edges");
  const auto m = t.edge_count();
  sub_.assign(m, 0);
  rank_of_.assign(m, 0);

  // Iterative preorder from vertex 0; record for each non-root vertex the
  // edge to its parent.
  std::vector<Vertex> order;
  std::vector<Vertex> parent(n_, 0);
  std::vector<std::uint32_t> parent_edge(n_, 0);
  order.reserve(n_);
  std::vector<Vertex> stack{0};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [w, e] : t.neighbors(v)) {
      if (v != 0 && w == parent[v]) continue;
      if (w == 0) continue;
      parent[w] = v;
      parent_edge[w] = e;
      stack.push_back(w);
    }
  }
  std::vector<int> size(n_, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }
  for (std::size_t pos = 1; pos < order.size(); ++pos) {
    const Vertex v = order[pos];
    const auto rank = static_cast<std::uint32_t>(pos - 1);
    sub_[rank] = size[v];
    rank_of_[parent_edge[v]] = rank;
  }
}

std::size_t CutEngine::parts_by_rank(std::uint64_t rank_mask, int* out) const {
  // out[0] is the root component; out[i] belongs to the i-th cut edge.
  int stack_rank[64];
  std::size_t stack_slot[64];
  std::size_t top = 0;
  std::size_t count = 1;
  out[0] = static_cast<int>(n_);
  for (auto m = rank_mask; m; m &= m - 1) {
    const auto r = static_cast<int>(std::countr_zero(m));
    while (top > 0 && r >= stack_rank[top - 1] + sub_[stack_rank[top - 1]]) --top;
    const std::size_t enclosing = top > 0 ? stack_slot[top - 1] : 0;
    out[enclosing] -= sub_[r];
    out[count] = sub_[r];
    stack_rank[top] = r;
    stack_slot[top] = count;
    ++top;
    ++count;
  }
  sort_descending(out, count);
  return count;
}

std::uint64_t CutEngine::rank_mask(EdgeSet s) const {
  std::uint64_t out = 0;
  for (auto m = s.mask; m; m &= m - 1) {
    const auto e = static_cast<std::size_t>(std::countr_zero(m));
    if (e >= rank_of_.size()) throw RangeError("edge index out of range");
    out |= std::uint64_t{1} << rank_of_[e];
  }
  return out;
}

Partition CutEngine::theta(EdgeSet s) const {
  int parts[65];
  const auto count = parts_by_rank(rank_mask(s), parts);
  return Partition(std::vector<int>(parts, parts + count));
}

Partition theta(const Tree& t, EdgeSet s) { return CutEngine(t).theta(s); }

std::uint64_t CutMultiset::total() const {
  std::uint64_t sum = 0;
  for (const auto& [id, c] : entries_) sum += c;
  return sum;
}

std::uint64_t CutMultiset::multiplicity(const Partition& p) const {
  if (p.total() != n_) return 0;
  const auto id = PartitionTable::of(n_).rank(p);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(id, std::uint64_t{0}));
  return it != entries_.end() && it->first == id ? it->second : 0;
}

std::vector<std::pair<Partition, std::uint64_t>> CutMultiset::items() const {
  const auto& table = PartitionTable::of(n_);
  std::vector<std::pair<Partition, std::uint64_t>> out;
  for (const auto& [id, c] : entries_) out.emplace_back(table.at(id), c);
  return out;
}

std::string CutMultiset::serialize() const {
  const auto& table = PartitionTable::of(n_);
  std::string out;
  for (const auto& [id, c] : entries_) {
    out += table.at(id).to_string();
    out += 'x';
    out += std::to_string(c);
    out += '\n';
  }
  return out;
}

void CutMultiset::append_key_bytes(std::string& out) const {
  auto put = [&](std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  };
  put(static_cast<std::uint64_t>(k_), 1);
  put(entries_.size(), 4);
  for (const auto& [id, c] : entries_) {
    put(id, 4);
    put(c, 8);
  }
}

LabeledCuts::LabeledCuts(int n, int k, std::vector<std::pair<EdgeSet, Partition>> entries)
    : n_(n), k_(k), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first) {
      throw InconsistentDataError("edge set listed twice");
    }
  }
}

const Partition* LabeledCuts::find(EdgeSet s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const auto& e, EdgeSet key) { return e.first < key; });
  return it != entries_.end() && it->first == s ? &it->second : nullptr;
}

const Partition& LabeledCuts::at(EdgeSet s) const {
  if (const auto* p = find(s)) return *p;
  throw IncompleteTableError("no entry for edge set {" + [&] {
    std::string ids;
    for (auto i : s.indices()) ids += (ids.empty() ? "" : ",") + std::to_string(i);
    return ids;
  }() + "}");
}

bool LabeledCuts::complete() const {
  if (n_ < 1 || k_ < 0) return false;
  const auto width = static_cast<std::size_t>(n_ - 1);
  if (entries_.size() != binomial(width, static_cast<std::size_t>(k_))) return false;
  for (const auto& [s, p] : entries_) {
    if (s.size() != static_cast<std::size_t>(k_) || (width < 64 && (s.mask >> width) != 0)) return false;
  }
  return true;
}

CutMultiset LabeledCuts::forget_labels() const {
  const auto& table = PartitionTable::of(n_);
  IdCounter counter(table.size());
  for (const auto& [s, p] : entries_) counter.add(table.rank(p));
  return CutMultiset(n_, k_, counter.take());
}

std::int64_t PSumExpr::coefficient(const Partition& p) const {
  if (p.total() != n_) return 0;
  const auto id = PartitionTable::of(n_).rank(p);
  for (const auto& [tid, c] : terms_) {
    if (tid == id) return c;
  }
  return 0;
}

std::vector<std::pair<Partition, std::int64_t>> PSumExpr::items() const {
  const auto& table = PartitionTable::of(n_);
  std::vector<std::pair<Partition, std::int64_t>> out;
  for (const auto& [id, c] : terms_) out.emplace_back(table.at(id), c);
  return out;
}

std::uint64_t PSumExpr::absolute_mass() const {
  std::uint64_t sum = 0;
  for (const auto& [id, c] : terms_) sum += static_cast<std::uint64_t>(std::llabs(c));
  return sum;
}

std::string PSumExpr::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : items()) {
    if (!first || c < 0) out << (c < 0 ? (first ? "-" : " - ") : " + ");
    first = false;
    const auto mag = std::llabs(c);
    if (mag != 1) out << mag << '*';
    out << "p(" << p.to_string() << ')';
  }
  return out.str();
}

CutMultiset k_cuts(const CutEngine& engine, std::size_t k) {
  const auto m = engine.edge_count();
  if (k > m) throw RangeError("k exceeds the number of edges");
  const int n = static_cast<int>(engine.n());
  const auto& table = PartitionTable::of(n);
  IdCounter counter(table.size());
  int parts[65];
  for_each_k_subset(m, k, [&](std::uint64_t mask) {
    const auto count = engine.parts_by_rank(mask, parts);
    counter.add(table.rank(std::span<const int>(parts, count)));
  });
  return CutMultiset(n, static_cast<int>(k), counter.take());
}

CutMultiset k_cuts(const Tree& t, std::size_t k) { return k_cuts(CutEngine(t), k); }

LabeledCuts labeled_k_cuts(const Tree& t, std::size_t k) {
  const CutEngine engine(t);
  const auto m = t.edge_count();
  if (k > m) throw RangeError("k exceeds the number of edges");
  std::vector<std::pair<EdgeSet, Partition>> entries;
  entries.reserve(binomial(m, k));
  int parts[65];
  for_each_k_subset(m, k, [&](std::uint64_t mask) {
    const auto count = engine.parts_by_rank(engine.rank_mask({mask}), parts);
    entries.emplace_back(EdgeSet{mask}, Partition(std::vector<int>(parts, parts + count)));
  });
  return LabeledCuts(static_cast<int>(t.size()), static_cast<int>(k), std::move(entries));
}

std::vector<CutMultiset> all_cuts_signature(const Tree& t, std::size_t guard) {
  if (t.size() > guard) {
    throw SizeLimitError("full signature needs n <= " + std::to_string(guard));
  }
  const CutEngine engine(t);
  std::vector<CutMultiset> out;
  for (std::size_t k = 1; k < t.size(); ++k) out.push_back(k_cuts(engine, k));
  return out;
}

PSumExpr psum_from_signature(int n, const std::vector<CutMultiset>& signature) {
  const auto& table = PartitionTable::of(n);
  std::vector<std::pair<PartitionId, std::int64_t>> terms;
  const int whole[1] = {n};
  // The empty cut: sign (-1)^(n-1).
  terms.emplace_back(table.rank(std::span<const int>(whole, 1)), (n - 1) % 2 ? -1 : 1);
  for (const auto& cm : signature) {
    const std::int64_t sign = (n - 1 - cm.k()) % 2 ? -1 : 1;
    for (const auto& [id, c] : cm.entries()) terms.emplace_back(id, sign * static_cast<std::int64_t>(c));
  }
  std::sort(terms.begin(), terms.end());
  return PSumExpr(n, std::move(terms));
}

std::vector<CutMultiset> signature_from_psum(const PSumExpr& expr) {
  const int n = expr.n();
  const auto& table = PartitionTable::of(n);
  std::vector<std::vector<std::pair<PartitionId, std::uint64_t>>> by_k(static_cast<std::size_t>(n));
  for (const auto& [id, c] : expr.terms()) {
    const auto k = table.at(id).length() - 1;
    if (k == 0) continue;
    by_k[k].emplace_back(id, static_cast<std::uint64_t>(std::llabs(c)));
  }
  std::vector<CutMultiset> out;
  for (int k = 1; k < n; ++k) out.emplace_back(n, k, std::move(by_k[static_cast<std::size_t>(k)]));
  return out;
}

PSumExpr psum_expansion(const Tree& t, std::size_t guard) {
  if (t.size() > guard) {
    throw SizeLimitError("power-sum expansion needs n <= " + std::to_string(guard));
  }
  return psum_from_signature(static_cast<int>(t.size()), all_cuts_signature(t, guard));
}

}  // namespace chromacut
