#ifndef CHROMACUT_FIXTURES_HPP
#define CHROMACUT_FIXTURES_HPP

#include <utility>

#include "chromacut/oracle.hpp"
#include "chromacut/tree.hpp"

namespace chromacut::fixtures {

// Pairs of non-isomorphic trees with identical labeled 2-cuts. Edge i of each
// tree carries the label e_{i+1} from the original drawings; vertex ids are
// the drawn node numbers minus one.
struct TreePair {
  Tree left;
  Tree right;
};

TreePair figure1_pair();  // n = 14
TreePair figure2_pair();  // n = 10, the smallest such pair

// Two non-isomorphic 5-vertex graphs with the same chromatic symmetric
// function.
std::pair<SimpleGraph, SimpleGraph> general_graph_pair();

// The 4-vertex star and path.
Tree star4();
Tree path4();

}  // namespace chromacut::fixtures

#endif  // CHROMACUT_FIXTURES_HPP
