#include "chromacut/fixtures.hpp"

#include <initializer_list>

namespace chromacut::fixtures {

namespace {

Tree from_one_based(std::size_t n, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> out;
  for (auto [u, v] : edges) out.push_back({u - 1, v - 1});
  return Tree(n, std::move(out));
}

}  // namespace

TreePair figure1_pair() {
  return {
      from_one_based(14, {{1, 2}, {1, 3}, {1, 6}, {2, 9}, {2, 12}, {3, 4}, {6, 7},
                          {4, 5}, {7, 8}, {9, 10}, {9, 11}, {12, 13}, {12, 14}}),
      from_one_based(14, {{1, 2}, {1, 3}, {2, 12}, {2, 9}, {1, 6}, {3, 4}, {12, 13},
                          {4, 5}, {13, 14}, {9, 10}, {9, 11}, {6, 7}, {6, 8}}),
  };
}

TreePair figure2_pair() {
  return {
      from_one_based(10, {{10, 1}, {10, 6}, {10, 7}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {6, 8}, {7, 9}}),
      from_one_based(10, {{10, 5}, {5, 8}, {10, 1}, {5, 6}, {5, 7}, {10, 3}, {10, 4}, {8, 9}, {1, 2}}),
  };
}

std::pair<SimpleGraph, SimpleGraph> general_graph_pair() {
  SimpleGraph a{5, {{0, 1}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  SimpleGraph b{5, {{0, 1}, {0, 4}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  return {a, b};
}

Tree star4() { return star_tree(4); }
Tree path4() { return path_tree(4); }

}  // namespace chromacut::fixtures
