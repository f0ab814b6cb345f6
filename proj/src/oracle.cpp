#include "chromacut/oracle.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "chromacut/errors.hpp"

namespace chromacut {

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

Adjacency adjacency_of(const WeightedForest& f) {
  Adjacency adj(f.weights.size());
  for (const auto& [u, v] : f.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

// Level sequence interleaved with weights, rooted at root, away from blocked.
std::string weighted_code(const Adjacency& adj, const std::vector<std::uint32_t>& weights,
                          Vertex root, Vertex blocked) {
  std::function<std::string(Vertex, Vertex)> rec = [&](Vertex v, Vertex parent) {
    std::vector<std::string> kids;
    for (Vertex w : adj[v]) {
      if (w == parent || (v == root && w == blocked)) continue;
      kids.push_back(rec(w, v));
    }
    std::sort(kids.begin(), kids.end(), std::greater<>());
    std::string c;
    c.push_back('\0');
    c.push_back(static_cast<char>(weights[v]));
    for (const auto& k : kids) {
      for (std::size_t i = 0; i < k.size(); i += 2) {
        c.push_back(static_cast<char>(k[i] + 1));
        c.push_back(k[i + 1]);
      }
    }
    return c;
  };
  return rec(root, root);
}

std::string forest_key(const WeightedForest& f) {
  const auto n = f.weights.size();
  const auto adj = adjacency_of(f);
  std::vector<int> comp(n, -1);
  std::vector<std::string> codes;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    // Collect the component in BFS order with parents.
    std::vector<Vertex> order{s};
    std::vector<Vertex> parent(n, s);
    comp[s] = static_cast<int>(codes.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Vertex w : adj[order[i]]) {
        if (comp[w] >= 0) continue;
        comp[w] = comp[s];
        parent[w] = order[i];
        order.push_back(w);
      }
    }
    // Unweighted centroids of the component.
    const auto size = order.size();
    std::vector<std::size_t> sub(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (*it != s) sub[parent[*it]] += sub[*it];
    }
    std::size_t best = size;
    std::vector<Vertex> centroids;
    for (Vertex v : order) {
      std::size_t w = size - sub[v];
      for (Vertex c : adj[v]) {
        if (c != parent[v] || v == s) w = std::max(w, c == parent[v] && v != s ? 0 : sub[c]);
      }
      if (w < best) {
        best = w;
        centroids = {v};
      } else if (w == best) {
        centroids.push_back(v);
      }
    }
    std::string code;
    if (centroids.size() == 1) {
      code = "A" + weighted_code(adj, f.weights, centroids[0], centroids[0]);
    } else {
      auto a = weighted_code(adj, f.weights, centroids[0], centroids[1]);
      auto b = weighted_code(adj, f.weights, centroids[1], centroids[0]);
      if (a < b) std::swap(a, b);
      code = "B" + a + "|" + b;
    }
    codes.push_back(std::to_string(code.size()) + ":" + code);
  }
  std::sort(codes.begin(), codes.end());
  std::string key;
  for (const auto& c : codes) key += c;
  return key;
}

class WcpMemo {
 public:
  std::shared_ptr<const PartitionMultiset> find(const std::string& key) const {
    std::shared_lock lock(mutex_);
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : it->second;
  }
  void store(const std::string& key, std::shared_ptr<const PartitionMultiset> value) {
    std::unique_lock lock(mutex_);
    table_[key] = std::move(value);
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const PartitionMultiset>> table_;
};

WcpMemo& shared_memo() {
  static WcpMemo memo;
  return memo;
}

WeightedForest delete_edge(const WeightedForest& f, std::size_t e) {
  WeightedForest out{f.weights, {}};
  out.edges.reserve(f.edges.size() - 1);
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    if (i != e) out.edges.push_back(f.edges[i]);
  }
  return out;
}

WeightedForest contract_edge(const WeightedForest& f, std::size_t e) {
  const auto [keep, gone] = f.edges[e];
  const auto n = f.weights.size();
  std::vector<Vertex> rename(n);
  WeightedForest out;
  for (Vertex v = 0, next = 0; v < n; ++v) {
    if (v == gone) continue;
    rename[v] = next++;
    out.weights.push_back(f.weights[v]);
  }
  rename[gone] = rename[keep];
  out.weights[rename[keep]] += f.weights[gone];
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    if (i == e) continue;
    out.edges.push_back({rename[f.edges[i].u], rename[f.edges[i].v]});
  }
  return out;
}

PartitionMultiset recurse(const WeightedForest& f, const WcpOptions& options, std::mt19937_64* rng) {
  if (f.edges.empty()) {
    PartitionMultiset base;
    base.add(Partition(std::vector<int>(f.weights.begin(), f.weights.end())));
    return base;
  }
  std::string key;
  if (options.memoize) {
    key = forest_key(f);
    if (auto hit = shared_memo().find(key)) return *hit;
  }
  std::size_t e = 0;
  if (rng) e = std::uniform_int_distribution<std::size_t>(0, f.edges.size() - 1)(*rng);
  auto result = recurse(delete_edge(f, e), options, rng);
  result.merge(recurse(contract_edge(f, e), options, rng));
  if (options.memoize) shared_memo().store(key, std::make_shared<const PartitionMultiset>(result));
  return result;
}

}  // namespace

WeightedForest WeightedForest::unit(const Tree& t) {
  return {std::vector<std::uint32_t>(t.size(), 1), {t.edges().begin(), t.edges().end()}};
}

std::uint32_t WeightedForest::total_weight() const {
  return std::accumulate(weights.begin(), weights.end(), 0u);
}

void WeightedForest::validate() const {
  const auto n = weights.size();
  for (auto w : weights) {
    if (w == 0) throw RangeError("vertex weights must be positive");
  }
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<Vertex(Vertex)> find = [&](Vertex x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw RangeError("edge endpoint out of range");
    if (u == v) throw CycleError("self-loop");
    const auto a = find(u), b = find(v);
    if (a == b) throw CycleError("weighted forest contains a cycle");
    parent[a] = b;
  }
}

void PartitionMultiset::merge(const PartitionMultiset& other) {
  for (const auto& [p, c] : other.counts_) counts_[p] += c;
}

std::uint64_t PartitionMultiset::total() const {
  std::uint64_t sum = 0;
  for (const auto& [p, c] : counts_) sum += c;
  return sum;
}

std::uint64_t PartitionMultiset::multiplicity(const Partition& p) const {
  auto it = counts_.find(p);
  return it == counts_.end() ? 0 : it->second;
}

PartitionMultiset wcp_multiset(const WeightedForest& f, const WcpOptions& options) {
  f.validate();
  if (f.total_weight() > options.weight_guard) {
    throw SizeLimitError("total weight exceeds " + std::to_string(options.weight_guard));
  }
  std::optional<std::mt19937_64> rng;
  if (options.edge_seed) rng.emplace(*options.edge_seed);
  return recurse(f, options, rng ? &*rng : nullptr);
}

PSumExpr signed_image(const PartitionMultiset& m, int n) {
  const auto& table = PartitionTable::of(n);
  std::vector<std::pair<PartitionId, std::int64_t>> terms;
  for (const auto& [p, c] : m.counts()) {
    if (p.total() != n) throw MixedDegreeError("partition of " + std::to_string(p.total()));
    const std::int64_t sign = (n - static_cast<int>(p.length())) % 2 ? -1 : 1;
    terms.emplace_back(table.rank(p), sign * static_cast<std::int64_t>(c));
  }
  std::sort(terms.begin(), terms.end());
  return PSumExpr(n, std::move(terms));
}

PartitionMultiset subset_multiset(const Tree& t) {
  PartitionMultiset out;
  out.add(Partition({static_cast<int>(t.size())}));
  for (std::size_t k = 1; k < t.size(); ++k) {
    const auto cuts = k_cuts(t, k);
    for (const auto& [p, c] : cuts.items()) out.add(p, c);
  }
  return out;
}

bool check_wcp_vs_subsets(const Tree& t) {
  if (t.size() > 16) throw SizeLimitError("check_wcp_vs_subsets needs n <= 16");
  return wcp_multiset(WeightedForest::unit(t)) == subset_multiset(t);
}

void EBasisExpr::add(const Partition& p, const Rational& c) {
  auto& slot = terms_[p];
  slot += c;
  if (slot == 0) terms_.erase(p);
}

Rational EBasisExpr::coefficient(const Partition& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

namespace {

EBasisExpr multiply(const EBasisExpr& a, const EBasisExpr& b) {
  EBasisExpr out;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      std::vector<int> parts(pa.parts().begin(), pa.parts().end());
      parts.insert(parts.end(), pb.parts().begin(), pb.parts().end());
      out.add(Partition(std::move(parts)), ca * cb);
    }
  }
  return out;
}

// p_k in the e-basis for k = 1..max_k.
std::vector<EBasisExpr> newton_table(int max_k) {
  std::vector<EBasisExpr> p(static_cast<std::size_t>(max_k) + 1);
  for (int k = 1; k <= max_k; ++k) {
    EBasisExpr pk;
    for (int i = 1; i < k; ++i) {
      EBasisExpr ei;
      ei.add(Partition({i}), Rational(i % 2 ? 1 : -1));
      const auto term = multiply(ei, p[static_cast<std::size_t>(k - i)]);
      for (const auto& [part, c] : term.terms()) pk.add(part, c);
    }
    pk.add(Partition({k}), Rational((k % 2 ? 1 : -1) * k));
    p[static_cast<std::size_t>(k)] = std::move(pk);
  }
  return p;
}

}  // namespace

EBasisExpr p_to_e(std::span<const std::pair<Partition, Rational>> terms) {
  if (terms.empty()) return {};
  const int n = terms.front().first.total();
  for (const auto& [p, c] : terms) {
    if (p.total() != n) throw MixedDegreeError("partitions of " + std::to_string(n) + " and " +
                                               std::to_string(p.total()));
  }
  if (n > 16) throw SizeLimitError("p_to_e supports degree <= 16");
  const auto newton = newton_table(n);
  EBasisExpr out;
  for (const auto& [p, c] : terms) {
    EBasisExpr product;
    product.add(Partition(), Rational(1));
    for (int part : p.parts()) product = multiply(product, newton[static_cast<std::size_t>(part)]);
    for (const auto& [q, d] : product.terms()) out.add(q, c * d);
  }
  return out;
}

EBasisExpr p_to_e(const PSumExpr& expr) {
  std::vector<std::pair<Partition, Rational>> terms;
  for (const auto& [p, c] : expr.items()) terms.emplace_back(p, Rational(c));
  return p_to_e(terms);
}

MonomialTable coloring_expansion(const SimpleGraph& g, std::size_t var_count) {
  if (g.n > 8 || var_count > 4) throw SizeLimitError("coloring_expansion needs n <= 8 and <= 4 colours");
  MonomialTable table;
  if (var_count == 0) {
    if (g.n == 0) table[{}] = 1;
    return table;
  }
  std::vector<int> colour(g.n, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < g.n; ++i) total *= var_count;
  for (std::uint64_t code = 0; code < total; ++code) {
    auto c = code;
    for (std::size_t i = 0; i < g.n; ++i) {
      colour[i] = static_cast<int>(c % var_count);
      c /= var_count;
    }
    bool proper = true;
    for (const auto& [u, v] : g.edges) {
      if (colour[u] == colour[v]) {
        proper = false;
        break;
      }
    }
    if (!proper) continue;
    std::vector<int> exponent(var_count, 0);
    for (std::size_t i = 0; i < g.n; ++i) ++exponent[static_cast<std::size_t>(colour[i])];
    ++table[exponent];
  }
  return table;
}

std::map<Partition, std::int64_t> graph_psum_expansion(const SimpleGraph& g) {
  if (g.edges.size() > 20) throw SizeLimitError("graph_psum_expansion supports <= 20 edges");
  std::map<Partition, std::int64_t> out;
  const std::uint64_t subsets = std::uint64_t{1} << g.edges.size();
  std::vector<Vertex> parent(g.n);
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<Vertex(Vertex)> find = [&](Vertex x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if ((mask >> i) & 1) parent[find(g.edges[i].u)] = find(g.edges[i].v);
    }
    std::vector<int> size(g.n, 0);
    for (Vertex v = 0; v < g.n; ++v) ++size[find(v)];
    std::vector<int> parts;
    for (int s : size) {
      if (s) parts.push_back(s);
    }
    auto& slot = out[Partition(std::move(parts))];
    slot += std::popcount(mask) % 2 ? -1 : 1;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace chromacut
