#ifndef CHROMACUT_TREE_HPP
#define CHROMACUT_TREE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chromacut {

using Vertex = std::uint32_t;

// Position of an edge in a Tree's edge list.
struct EdgeId {
  std::uint32_t index = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex neighbor;
  std::uint32_t edge;
};

// An immutable free tree on vertices 0..n-1. Construction validates the edge
// list: exactly n-1 edges, no loops or duplicates, connected.
class Tree {
 public:
  Tree(std::size_t n, std::vector<Edge> edges);

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  Edge edge(EdgeId e) const { return edges_[e.index]; }

  std::span<const Incidence> neighbors(Vertex v) const {
    return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Same labels, same edge order.
  friend bool operator==(const Tree& a, const Tree& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Incidence> incidences_;
};

// Edge-list text: a `n=<int>` header line followed by one "u v" pair per line.
// Blank lines and lines starting with '#' are ignored.
Tree parse_edgelist(std::string_view text);
std::string to_edgelist(const Tree& t);

// Isomorphism certificate: a tag byte (1 = one centroid, 2 = two centroids)
// followed by the canonical level sequence of the tree rooted at its centroid,
// or at a virtual vertex on the central edge.
struct CanonicalForm {
  std::string bytes;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Tree& t);

struct CentroidInfo {
  std::vector<Vertex> centroids;    // one or two, ascending
  std::optional<EdgeId> central_edge;
  std::vector<std::uint32_t> weights;  // largest component of T - v, in vertices

  bool double_centroid() const { return centroids.size() == 2; }
};

CentroidInfo centroid_info(const Tree& t);

// size[v] = number of vertices in the subtree of v when t is rooted at root.
std::vector<std::uint32_t> subtree_sizes(const Tree& t, Vertex root);

// Replaces the central edge (u,w) by (u,x),(x,w) with x = n. The new edges
// take the central edge's position and the end of the edge list.
Tree split_central_edge(const Tree& t);

Tree path_tree(std::size_t n);
Tree star_tree(std::size_t n);

// Returns a copy with vertex v renamed to perm[v]; edge order is kept.
Tree relabel(const Tree& t, std::span<const Vertex> perm);

namespace detail {

// Canonical level sequence of the subtree hanging from root, away from
// `blocked` (pass root itself for none). Depths are relative to root; children
// are ordered by code, descending.
std::string rooted_code(const Tree& t, Vertex root, Vertex blocked);

}  // namespace detail

}  // namespace chromacut

#endif  // CHROMACUT_TREE_HPP
