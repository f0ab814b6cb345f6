#include "chromacut/graph_format.hpp"

#include <algorithm>
#include <cstdint>

#include "chromacut/errors.hpp"

namespace chromacut {

namespace {

constexpr char kBias = 63;

std::string_view strip(std::string_view text, std::string_view header) {
  if (text.starts_with(header)) text.remove_prefix(header.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                           text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  const auto body = text.starts_with(':') ? text.substr(1) : text;
  for (char c : body) {
    if (c < 63 || c > 126) throw FormatError("byte outside printable range 63..126");
  }
  return text;
}

void put_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  } else {
    out.append("~~");
    for (int shift = 30; shift >= 0; shift -= 6) {
      out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
    }
  }
}

std::size_t take_size(std::string_view& text) {
  auto need = [&](std::size_t count) {
    if (text.size() < count) throw FormatError("truncated vertex count");
  };
  need(1);
  std::size_t groups = 1;
  if (text[0] == '~') {
    need(2);
    if (text[1] == '~') {
      text.remove_prefix(2);
      groups = 6;
    } else {
      text.remove_prefix(1);
      groups = 3;
    }
  }
  need(groups);
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < groups; ++i) n = (n << 6) | static_cast<std::uint64_t>(text[i] - kBias);
  text.remove_prefix(groups);
  return static_cast<std::size_t>(n);
}

class BitWriter {
 public:
  void push(bool bit) { bits_.push_back(bit); }
  void push(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) bits_.push_back(((value >> i) & 1) != 0);
  }
  std::size_t size() const { return bits_.size(); }
  void flush(std::string& out) const {
    for (std::size_t i = 0; i < bits_.size(); i += 6) {
      int v = 0;
      for (std::size_t j = 0; j < 6; ++j) {
        v = (v << 1) | (i + j < bits_.size() && bits_[i + j] ? 1 : 0);
      }
      out.push_back(static_cast<char>(v + kBias));
    }
  }

 private:
  std::vector<bool> bits_;
};

int sparse6_width(std::size_t n) {
  int k = 1;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

Tree to_tree(const RawGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return Tree(g.n, std::move(edges));
}

RawGraph raw_of(const Tree& t) {
  RawGraph g{t.size(), {}};
  for (const auto& [u, v] : t.edges()) g.edges.emplace_back(u, v);
  return g;
}

}  // namespace

std::string encode_graph6(const RawGraph& g) {
  std::string out;
  put_size(out, g.n);
  std::vector<bool> adj(g.n * g.n, false);
  for (auto [u, v] : g.edges) {
    adj[u * g.n + v] = true;
    adj[v * g.n + u] = true;
  }
  BitWriter bits;
  for (std::size_t j = 1; j < g.n; ++j) {
    for (std::size_t i = 0; i < j; ++i) bits.push(adj[i * g.n + j]);
  }
  bits.flush(out);
  return out;
}

std::string encode_graph6(const Tree& t) { return encode_graph6(raw_of(t)); }

std::string encode_sparse6(const Tree& t) {
  const auto n = t.size();
  std::string out(1, ':');
  put_size(out, n);
  const int k = sparse6_width(n);

  std::vector<std::pair<Vertex, Vertex>> edges;  // (larger, smaller)
  for (const auto& [u, v] : t.edges()) edges.emplace_back(std::max(u, v), std::min(u, v));
  std::sort(edges.begin(), edges.end());

  BitWriter bits;
  std::uint64_t cur = 0;
  for (auto [v, u] : edges) {
    if (v == cur) {
      bits.push(false);
      bits.push(u, k);
    } else if (v == cur + 1) {
      cur = v;
      bits.push(true);
      bits.push(u, k);
    } else {
      cur = v;
      bits.push(true);
      bits.push(v, k);
      bits.push(false);
      bits.push(u, k);
    }
  }
  // nauty's special case: keep the padding from decoding as an extra edge.
  const std::size_t pad = (6 - bits.size() % 6) % 6;
  if (k < 6 && n == (std::size_t{1} << k) && pad >= static_cast<std::size_t>(k) &&
      cur + 1 < n) {
    bits.push(false);
  }
  while (bits.size() % 6 != 0) bits.push(true);
  bits.flush(out);
  return out;
}

RawGraph decode_graph6_raw(std::string_view text) {
  text = strip(text, ">>graph6<<");
  if (text.starts_with(':')) throw FormatError("sparse6 data passed to graph6 decoder");
  RawGraph g;
  g.n = take_size(text);
  const std::size_t nbits = g.n < 2 ? 0 : g.n * (g.n - 1) / 2;
  if (text.size() != (nbits + 5) / 6) {
    throw FormatError("graph6 body has " + std::to_string(text.size()) + " bytes, expected " +
                      std::to_string((nbits + 5) / 6));
  }
  std::size_t bit = 0;
  for (std::size_t j = 1; j < g.n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const int byte = text[bit / 6] - kBias;
      if ((byte >> (5 - bit % 6)) & 1) {
        g.edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return g;
}

RawGraph decode_sparse6_raw(std::string_view text) {
  text = strip(text, ">>sparse6<<");
  if (!text.starts_with(':')) throw FormatError("sparse6 data must start with ':'");
  text.remove_prefix(1);
  RawGraph g;
  g.n = take_size(text);
  const int k = sparse6_width(g.n);

  std::size_t pos = 0;
  int avail = 0;  // unread bits of `cur`
  std::uint64_t cur = 0;
  auto next_byte = [&]() -> bool {
    if (pos >= text.size()) return false;
    cur = static_cast<std::uint64_t>(text[pos++] - kBias);
    avail = 6;
    return true;
  };

  std::uint64_t v = 0;
  while (true) {
    if (avail < 1 && !next_byte()) break;
    --avail;
    const bool b = ((cur >> avail) & 1) != 0;
    std::uint64_t x = cur & ((std::uint64_t{1} << avail) - 1);
    int xlen = avail;
    bool truncated = false;
    while (xlen < k) {
      if (!next_byte()) {
        truncated = true;
        break;
      }
      x = (x << 6) | cur;
      xlen += 6;
    }
    if (truncated) break;
    avail = xlen - k;
    cur = x & ((std::uint64_t{1} << avail) - 1);
    x >>= avail;

    if (b) ++v;
    if (x >= g.n || v >= g.n) break;
    if (x > v) {
      v = x;
    } else {
      g.edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(v));
    }
  }
  return g;
}

Tree decode_graph6(std::string_view text) { return to_tree(decode_graph6_raw(text)); }
Tree decode_sparse6(std::string_view text) { return to_tree(decode_sparse6_raw(text)); }

Tree decode_tree_text(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty input");
  text.remove_prefix(first);
  if (text.starts_with(":") || text.starts_with(">>sparse6<<")) return decode_sparse6(text);
  if (text.starts_with("n=") || text.starts_with("#")) return parse_edgelist(text);
  return decode_graph6(text);
}

}  // namespace chromacut
