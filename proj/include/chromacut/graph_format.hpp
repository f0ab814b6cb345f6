#ifndef CHROMACUT_GRAPH_FORMAT_HPP
#define CHROMACUT_GRAPH_FORMAT_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromacut/tree.hpp"

namespace chromacut {

// graph6 / sparse6 as used by nauty's gtools. Encoders emit no header and no
// trailing newline; decoders accept an optional >>graph6<< / >>sparse6<<
// header and trailing whitespace. Decoded graphs that are not trees raise
// CycleError or DisconnectedError; malformed bytes raise FormatError.

std::string encode_graph6(const Tree& t);
std::string encode_sparse6(const Tree& t);

Tree decode_graph6(std::string_view text);
Tree decode_sparse6(std::string_view text);

// Dispatches on the leading ':' (sparse6) or a "n=" header (edge list).
Tree decode_tree_text(std::string_view text);

// Raw graph content without the tree check; multi-edges and loops are kept.
struct RawGraph {
  std::size_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
};
RawGraph decode_graph6_raw(std::string_view text);
RawGraph decode_sparse6_raw(std::string_view text);
std::string encode_graph6(const RawGraph& g);

}  // namespace chromacut

#endif  // CHROMACUT_GRAPH_FORMAT_HPP
