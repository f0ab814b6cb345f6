#include "chromacut/tree.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

#include "chromacut/errors.hpp"

namespace chromacut {

namespace {

struct DisjointSets {
  std::vector<std::uint32_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Preorder of the tree rooted at root, with parent pointers.
void rooted_order(const Tree& t, Vertex root, std::vector<Vertex>& order,
                  std::vector<Vertex>& parent) {
  const auto n = t.size();
  order.clear();
  order.reserve(n);
  parent.assign(n, root);
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [w, e] : t.neighbors(v)) {
      if (w == parent[v] && v != root) continue;
      if (w == root) continue;
      parent[w] = v;
      stack.push_back(w);
    }
  }
}

}  // namespace

Tree::Tree(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw ParseError("a tree needs at least one vertex");
  DisjointSets sets(n_);
  for (const auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) {
      throw ParseError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has a label >= n=" + std::to_string(n_));
    }
    if (u == v) throw CycleError("self-loop at vertex " + std::to_string(u));
    if (!sets.unite(u, v)) {
      throw CycleError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") closes a cycle");
    }
  }
  if (edges_.size() != n_ - 1) {
    throw DisconnectedError(std::to_string(edges_.size()) + " edges on " +
                            std::to_string(n_) + " vertices");
  }

  offsets_.assign(n_ + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incidences_.resize(2 * edges_.size());
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const auto [u, v] = edges_[i];
    incidences_[fill[u]++] = {v, i};
    incidences_[fill[v]++] = {u, i};
  }
}

Tree parse_edgelist(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  auto parse_uint = [&](std::string_view tok) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": bad integer '" +
                       std::string(tok) + "'");
    }
    return value;
  };

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
      if (end > pos) tokens.push_back(line.substr(pos, end - pos));
      pos = end;
    }
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (!n) {
      if (tokens.size() != 1 || !tokens[0].starts_with("n=")) {
        throw ParseError("line " + std::to_string(line_no) + ": expected header n=<int>");
      }
      n = parse_uint(tokens[0].substr(2));
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    auto u = parse_uint(tokens[0]);
    auto v = parse_uint(tokens[1]);
    if (u >= *n || v >= *n) {
      throw ParseError("line " + std::to_string(line_no) + ": label >= n");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!n) throw ParseError("missing n=<int> header");
  return Tree(*n, std::move(edges));
}

std::string to_edgelist(const Tree& t) {
  std::ostringstream out;
  out << "n=" << t.size() << '\n';
  for (const auto& [u, v] : t.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

namespace detail {

std::string rooted_code(const Tree& t, Vertex root, Vertex blocked) {
  // Iterative postorder; codes of finished children are collected per parent.
  std::vector<std::string> code(t.size());
  std::vector<Vertex> parent(t.size());
  std::vector<Vertex> order;
  std::vector<Vertex> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto [w, e] : t.neighbors(v)) {
      if ((v != root && w == parent[v]) || (v == root && w == blocked) || w == root) continue;
      parent[w] = v;
      stack.push_back(w);
    }
  }
  std::vector<std::string> kids;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Vertex v = *it;
    kids.clear();
    for (auto [w, e] : t.neighbors(v)) {
      if (w == root || w == parent[v] || (v == root && w == blocked)) continue;
      kids.push_back(std::move(code[w]));
    }
    std::sort(kids.begin(), kids.end(), std::greater<>());
    std::string c(1, '\0');
    for (auto& k : kids) {
      for (char ch : k) c.push_back(static_cast<char>(ch + 1));
    }
    code[v] = std::move(c);
  }
  return std::move(code[root]);
}

}  // namespace detail

CentroidInfo centroid_info(const Tree& t) {
  const auto n = t.size();
  CentroidInfo info;
  info.weights.assign(n, 0);
  std::vector<Vertex> order, parent;
  rooted_order(t, 0, order, parent);
  std::vector<std::uint32_t> size(n, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }
  for (Vertex v = 0; v < n; ++v) {
    std::uint32_t w = static_cast<std::uint32_t>(n - size[v]);
    for (auto [c, e] : t.neighbors(v)) {
      if (v != 0 && c == parent[v]) continue;
      w = std::max(w, size[c]);
    }
    info.weights[v] = w;
  }
  auto best = *std::min_element(info.weights.begin(), info.weights.end());
  for (Vertex v = 0; v < n; ++v) {
    if (info.weights[v] == best) info.centroids.push_back(v);
  }
  if (info.centroids.size() == 2) {
    for (auto [w, e] : t.neighbors(info.centroids[0])) {
      if (w == info.centroids[1]) info.central_edge = EdgeId{e};
    }
  }
  return info;
}

CanonicalForm canonical_form(const Tree& t) {
  // Depths are stored one per byte.
  if (t.size() > 250) throw SizeLimitError("canonical_form supports n <= 250");
  auto info = centroid_info(t);
  CanonicalForm form;
  if (!info.double_centroid()) {
    form.bytes.push_back('\x01');
    form.bytes += detail::rooted_code(t, info.centroids[0], info.centroids[0]);
    return form;
  }
  // Virtual root on the central edge; its two children are the halves.
  auto a = detail::rooted_code(t, info.centroids[0], info.centroids[1]);
  auto b = detail::rooted_code(t, info.centroids[1], info.centroids[0]);
  if (a < b) std::swap(a, b);
  form.bytes.push_back('\x02');
  form.bytes.push_back('\0');
  for (char ch : a) form.bytes.push_back(static_cast<char>(ch + 1));
  for (char ch : b) form.bytes.push_back(static_cast<char>(ch + 1));
  return form;
}

std::vector<std::uint32_t> subtree_sizes(const Tree& t, Vertex root) {
  if (root >= t.size()) throw RangeError("root out of range");
  std::vector<Vertex> order, parent;
  rooted_order(t, root, order, parent);
  std::vector<std::uint32_t> size(t.size(), 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != root) size[parent[*it]] += size[*it];
  }
  return size;
}

Tree split_central_edge(const Tree& t) {
  auto info = centroid_info(t);
  if (!info.central_edge) throw SingleCentroidError("tree has a single centroid");
  const auto x = static_cast<Vertex>(t.size());
  std::vector<Edge> edges(t.edges().begin(), t.edges().end());
  const auto [u, w] = edges[info.central_edge->index];
  edges[info.central_edge->index] = {u, x};
  edges.push_back({x, w});
  return Tree(t.size() + 1, std::move(edges));
}

Tree path_tree(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({v - 1, v});
  return Tree(n, std::move(edges));
}

Tree star_tree(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n; ++v) edges.push_back({0, v});
  return Tree(n, std::move(edges));
}

Tree relabel(const Tree& t, std::span<const Vertex> perm) {
  std::vector<Edge> edges;
  edges.reserve(t.edge_count());
  for (const auto& [u, v] : t.edges()) edges.push_back({perm[u], perm[v]});
  return Tree(t.size(), std::move(edges));
}

}  // namespace chromacut
