// Brute-force reference implementations. None of these call into the
// library's fast paths; they only build Trees and Partitions.
#ifndef CHROMACUT_TESTS_ORACLES_HPP
#define CHROMACUT_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chromacut/partition.hpp"
#include "chromacut/tree.hpp"

namespace oracle {

using chromacut::Edge;
using chromacut::Partition;
using chromacut::Tree;
using chromacut::Vertex;

inline Tree prufer_decode(const std::vector<Vertex>& seq, std::size_t n) {
  if (n == 1) return Tree(1, {});
  if (n == 2) return Tree(2, {{0, 1}});
  std::vector<int> degree(n, 1);
  for (auto v : seq) ++degree[v];
  std::vector<Edge> edges;
  for (auto v : seq) {
    Vertex leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.push_back({leaf, v});
    --degree[leaf];
    --degree[v];
  }
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < n; ++v) {
    if (degree[v] == 1) rest.push_back(v);
  }
  edges.push_back({rest[0], rest[1]});
  return Tree(n, std::move(edges));
}

// Every labeled tree on n vertices (n^(n-2) of them) when full is set;
// otherwise only those whose degrees are non-increasing in the label, which
// still meets every isomorphism class.
inline void for_each_prufer_tree(std::size_t n, bool full, const std::function<void(const Tree&)>& f) {
  if (n <= 2) {
    f(prufer_decode({}, n));
    return;
  }
  const std::size_t len = n - 2;
  if (full) {
    std::vector<Vertex> seq(len, 0);
    while (true) {
      f(prufer_decode(seq, n));
      std::size_t i = 0;
      while (i < len && seq[i] == n - 1) seq[i++] = 0;
      if (i == len) break;
      ++seq[i];
    }
    return;
  }
  // Occurrence counts c_0 >= c_1 >= ... summing to n-2, then every
  // arrangement of that multiset.
  std::vector<int> count;
  std::function<void(int, int)> counts = [&](int left, int cap) {
    if (left == 0) {
      if (count.size() > n) return;
      std::vector<Vertex> seq;
      for (std::size_t v = 0; v < count.size(); ++v) seq.insert(seq.end(), count[v], static_cast<Vertex>(v));
      do {
        f(prufer_decode(seq, n));
      } while (std::next_permutation(seq.begin(), seq.end()));
      return;
    }
    for (int c = std::min(left, cap); c >= 1; --c) {
      count.push_back(c);
      counts(left - c, c);
      count.pop_back();
    }
  };
  counts(static_cast<int>(len), static_cast<int>(len));
}

inline std::size_t count_isomorphism_classes(std::size_t n) {
  std::set<std::string> forms;
  for_each_prufer_tree(n, n <= 8, [&](const Tree& t) { forms.insert(chromacut::canonical_form(t).bytes); });
  return forms.size();
}

// Component sizes after deleting the masked edges, by union-find.
inline Partition naive_theta(const Tree& t, std::uint64_t mask) {
  std::vector<Vertex> parent(t.size());
  std::iota(parent.begin(), parent.end(), 0u);
  std::function<Vertex(Vertex)> find = [&](Vertex x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  const auto edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!((mask >> i) & 1)) parent[find(edges[i].u)] = find(edges[i].v);
  }
  std::vector<int> size(t.size(), 0);
  for (Vertex v = 0; v < t.size(); ++v) ++size[find(v)];
  std::vector<int> parts;
  for (int s : size) {
    if (s) parts.push_back(s);
  }
  return Partition(std::move(parts));
}

inline std::vector<std::uint32_t> naive_subtree_sizes(const Tree& t, Vertex root) {
  std::vector<std::uint32_t> size(t.size(), 0);
  std::function<std::uint32_t(Vertex, Vertex)> dfs = [&](Vertex v, Vertex parent) {
    std::uint32_t s = 1;
    for (auto [w, e] : t.neighbors(v)) {
      if (w != parent) s += dfs(w, v);
    }
    return size[v] = s;
  };
  dfs(root, static_cast<Vertex>(t.size()));
  return size;
}

using Big = boost::multiprecision::cpp_int;

inline Big power_sum(const std::vector<Big>& x, int k) {
  Big s = 0;
  for (const auto& v : x) s += boost::multiprecision::pow(v, static_cast<unsigned>(k));
  return s;
}

// e_k(x) for k = 0..x.size() by the product expansion.
inline std::vector<Big> elementary(const std::vector<Big>& x) {
  std::vector<Big> e(x.size() + 1, 0);
  e[0] = 1;
  for (const auto& v : x) {
    for (std::size_t k = x.size(); k >= 1; --k) e[k] += e[k - 1] * v;
  }
  return e;
}

inline Big eval_p(const Partition& p, const std::vector<Big>& x) {
  Big r = 1;
  for (int part : p.parts()) r *= power_sum(x, part);
  return r;
}

inline Big eval_e(const Partition& p, const std::vector<Big>& x) {
  const auto e = elementary(x);
  Big r = 1;
  for (int part : p.parts()) r *= static_cast<std::size_t>(part) < e.size() ? e[static_cast<std::size_t>(part)] : Big(0);
  return r;
}

}  // namespace oracle

#endif  // CHROMACUT_TESTS_ORACLES_HPP
