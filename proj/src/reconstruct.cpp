#include "chromacut/reconstruct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include <json.hpp>

#include "chromacut/errors.hpp"
#include "chromacut/fixtures.hpp"
#include "chromacut/treegen.hpp"

namespace chromacut {

namespace {

EdgeSet bit(std::uint32_t i) { return {std::uint64_t{1} << i}; }

struct Split {
  int whole = 0;
  int a = 0;
  int b = 0;
};

// aug = cand with one part c replaced by a + b = c, if so.
std::optional<Split> as_split(const Partition& cand, const Partition& aug) {
  if (aug.length() != cand.length() + 1) return std::nullopt;
  std::vector<int> removed, added;
  auto x = cand.parts(), y = aug.parts();
  std::size_t i = 0, j = 0;
  // Both sorted descending; walk them as a merge.
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i] > y[j])) {
      removed.push_back(x[i++]);
    } else if (i == x.size() || y[j] > x[i]) {
      added.push_back(y[j++]);
    } else {
      ++i;
      ++j;
    }
    if (removed.size() > 1 || added.size() > 2) return std::nullopt;
  }
  if (removed.size() != 1 || added.size() != 2 || added[0] + added[1] != removed[0]) return std::nullopt;
  return Split{removed[0], added[0], added[1]};
}

bool fits_forest(const Partition& cand, std::span<const Partition> augmentations) {
  std::map<int, int> splits, leaf, balanced;
  for (const auto& aug : augmentations) {
    auto s = as_split(cand, aug);
    if (!s) return false;
    ++splits[s->whole];
    if (s->b == 1) ++leaf[s->whole];
    if (s->a == s->b) ++balanced[s->whole];
  }
  std::map<int, int> mult;
  for (int c : cand.parts()) ++mult[c];
  for (const auto& [c, mu] : mult) {
    if (c < 2) continue;
    if (splits[c] != mu * (c - 1)) return false;
    if (c >= 3 && leaf[c] < 2 * mu) return false;
    if (c >= 4 && c % 2 == 0 && balanced[c] > mu) return false;
  }
  return true;
}

std::vector<std::uint32_t> far_children(const Tree& t, Vertex root, std::vector<std::uint32_t>& tin,
                                        std::vector<std::uint32_t>& tout) {
  // child endpoint per edge when rooted at root, plus Euler interval times.
  const auto n = t.size();
  std::vector<std::uint32_t> child(t.edge_count());
  tin.assign(n, 0);
  tout.assign(n, 0);
  std::uint32_t clock = 0;
  std::vector<std::pair<Vertex, std::size_t>> stack{{root, 0}};
  std::vector<Vertex> parent(n, root);
  tin[root] = clock++;
  while (!stack.empty()) {
    auto& [v, idx] = stack.back();
    auto nbrs = t.neighbors(v);
    if (idx == nbrs.size()) {
      tout[v] = clock++;
      stack.pop_back();
      continue;
    }
    auto [w, e] = nbrs[idx++];
    if (v != root && w == parent[v]) continue;
    if (w == root) continue;
    parent[w] = v;
    child[e] = w;
    tin[w] = clock++;
    stack.push_back({w, 0});
  }
  return child;
}

// Position of each edge of the sorted order, e1 first.
std::vector<std::uint32_t> reverse_lex_order(const std::vector<Partition>& one) {
  std::vector<std::uint32_t> order(one.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return partition_less(one[y], one[x], PartitionOrder::ReverseLex);
  });
  return order;
}

Partition parse_parts(const nlohmann::json& j) {
  return Partition(j.get<std::vector<int>>());
}

}  // namespace

std::string relation_name(PairRelation r) {
  switch (r) {
    case PairRelation::Nested: return "NESTED";
    case PairRelation::Disjoint: return "DISJOINT";
    case PairRelation::Ambiguous: return "AMBIGUOUS";
  }
  return "?";
}

PairRelation pair_relation(const Partition& theta_i, const Partition& theta_j, const Partition& theta_ij,
                           int n) {
  if (theta_i.length() != 2 || theta_j.length() != 2 || theta_ij.length() != 3 || theta_i.total() != n ||
      theta_j.total() != n || theta_ij.total() != n) {
    throw InconsistentDataError("pair_relation expects 1-cuts and a 2-cut of n=" + std::to_string(n));
  }
  int i = theta_i[1], k = theta_j[1];
  if (i < k) std::swap(i, k);
  if (2 * i == n) return PairRelation::Nested;
  const bool nested = i > k && theta_ij == Partition({n - i, i - k, k});
  const bool disjoint = n - i - k > 0 && theta_ij == Partition({n - i - k, i, k});
  if (nested && disjoint) return PairRelation::Ambiguous;
  if (nested) return PairRelation::Nested;
  if (disjoint) return PairRelation::Disjoint;
  throw InconsistentDataError("theta " + theta_ij.to_string() + " fits neither relation");
}

PairRelation structural_relation(const Tree& t, EdgeId a, EdgeId b) {
  const auto info = centroid_info(t);
  if (info.central_edge && (a == *info.central_edge || b == *info.central_edge)) return PairRelation::Nested;
  std::vector<std::uint32_t> tin, tout;
  const auto child = far_children(t, info.centroids[0], tin, tout);
  auto inside = [&](Vertex x, Vertex y) { return tin[y] <= tin[x] && tout[x] <= tout[y]; };
  const Vertex ca = child[a.index], cb = child[b.index];
  return inside(ca, cb) || inside(cb, ca) ? PairRelation::Nested : PairRelation::Disjoint;
}

Side side_of_central_edge(const Partition& theta_e1ij, int n) {
  for (int p : theta_e1ij.parts()) {
    if (2 * p == n) return Side::Same;
  }
  return Side::Opposite;
}

std::vector<Partition> lower_cut_candidates(std::span<const Partition> augmentations) {
  if (augmentations.empty()) return {};
  std::set<Partition> seen;
  const auto first = augmentations.front().parts();
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = i + 1; j < first.size(); ++j) {
      std::vector<int> parts;
      for (std::size_t t = 0; t < first.size(); ++t) {
        if (t != i && t != j) parts.push_back(first[t]);
      }
      parts.push_back(first[i] + first[j]);
      seen.insert(Partition(std::move(parts)));
    }
  }
  std::vector<Partition> out;
  for (const auto& cand : seen) {
    if (fits_forest(cand, augmentations)) out.push_back(cand);
  }
  return out;
}

LabeledCuts derive_lower_cuts(const LabeledCuts& lc, int n) {
  const int k = lc.k();
  if (k < 2 || k > n - 3) {
    throw RangeError("derive_lower_cuts needs 2 <= k <= n-3, got k=" + std::to_string(k) +
                     " n=" + std::to_string(n));
  }
  if (lc.n() != n) throw InconsistentDataError("table is for n=" + std::to_string(lc.n()));
  if (!lc.complete()) throw IncompleteTableError("labeled " + std::to_string(k) + "-cut table is partial");
  const auto m = static_cast<std::size_t>(n - 1);
  std::vector<std::pair<EdgeSet, Partition>> entries;
  std::vector<Partition> augs;
  for_each_k_subset(m, static_cast<std::size_t>(k - 1), [&](std::uint64_t mask) {
    augs.clear();
    for (std::uint32_t x = 0; x < m; ++x) {
      if ((mask >> x) & 1) continue;
      augs.push_back(lc.at(EdgeSet{mask | (std::uint64_t{1} << x)}));
    }
    auto cands = lower_cut_candidates(augs);
    if (cands.size() != 1) {
      throw InconsistentDataError(std::to_string(cands.size()) + " values fit edge set " +
                                  std::to_string(mask));
    }
    entries.emplace_back(EdgeSet{mask}, std::move(cands.front()));
  });
  return LabeledCuts(n, k - 1, std::move(entries));
}

OrderedInput make_reconstruction_input(const Tree& t) {
  if (!centroid_info(t).double_centroid()) throw NotDoubleCentroidError("tree has one centroid");
  std::vector<Partition> one;
  for (std::uint32_t e = 0; e < t.edge_count(); ++e) one.push_back(theta(t, bit(e)));
  const auto order = reverse_lex_order(one);
  std::vector<Edge> edges;
  for (auto e : order) edges.push_back(t.edge(EdgeId{e}));
  Tree ordered(t.size(), std::move(edges));
  ReconstructionInput input;
  input.n = static_cast<int>(t.size());
  input.two_cuts = labeled_k_cuts(ordered, 2);
  for (std::uint32_t j = 2; j < ordered.edge_count(); ++j) {
    input.slices.emplace(j, theta(ordered, EdgeSet{0b11 | (std::uint64_t{1} << j)}));
  }
  return {std::move(input), std::move(ordered)};
}

Tree reconstruct_double_centroid(const ReconstructionInput& input) {
  const int n = input.n;
  if (n < 4 || n % 2) throw NotDoubleCentroidError("n=" + std::to_string(n) + " cannot have two centroids");
  if (input.two_cuts.k() != 2 || input.two_cuts.n() != n) {
    throw InconsistentDataError("expected a labeled 2-cut table for n=" + std::to_string(n));
  }
  if (!input.two_cuts.complete()) throw IncompleteTableError("labeled 2-cut table is partial");
  const auto m = static_cast<std::uint32_t>(n - 1);

  std::vector<Partition> one;
  if (n >= 5) {
    const auto lower = derive_lower_cuts(input.two_cuts, n);
    for (std::uint32_t e = 0; e < m; ++e) one.push_back(lower.at(bit(e)));
  } else {
    // At n = 4 the 2-cuts are all (2,1,1); two centroids force the path.
    one = {Partition({2, 2}), Partition({3, 1}), Partition({3, 1})};
  }
  if (one[0] != Partition({n / 2, n / 2})) throw NotDoubleCentroidError("e1 is not a central edge");
  for (std::uint32_t i = 1; i < m; ++i) {
    if (partition_less(one[i - 1], one[i], PartitionOrder::ReverseLex)) {
      throw InconsistentDataError("edges are not in reverse-lex order of their 1-cuts");
    }
  }

  const Vertex c1 = 0, c2 = 1;
  std::vector<Edge> edges(m);
  std::vector<Vertex> child(m);
  edges[0] = {c1, c2};
  Vertex next = 2;
  auto place = [&](std::uint32_t i, Vertex at) {
    edges[i] = {at, next};
    child[i] = next++;
  };
  place(1, c1);
  for (std::uint32_t i = 2; i < m; ++i) {
    std::optional<std::uint32_t> deepest;
    for (std::uint32_t j = 1; j < i; ++j) {
      const auto rel = pair_relation(one[j], one[i], input.two_cuts.at(bit(j).with(EdgeId{i})), n);
      if (rel != PairRelation::Nested) continue;
      if (!deepest || one[j][1] < one[*deepest][1]) deepest = j;
    }
    if (deepest) {
      place(i, child[*deepest]);
      continue;
    }
    auto slice = input.slices.find(i);
    if (slice == input.slices.end()) {
      throw IncompleteTableError("missing theta({e1,e2,e" + std::to_string(i + 1) + "})");
    }
    place(i, side_of_central_edge(slice->second, n) == Side::Same ? c1 : c2);
  }

  Tree result(static_cast<std::size_t>(n), std::move(edges));
  if (!(labeled_k_cuts(result, 2) == input.two_cuts)) {
    throw InconsistentDataError("rebuilt tree does not reproduce the 2-cut table");
  }
  for (const auto& [j, p] : input.slices) {
    if (j >= m || theta(result, EdgeSet{0b11 | (std::uint64_t{1} << j)}) != p) {
      throw InconsistentDataError("rebuilt tree does not reproduce theta({e1,e2,e" + std::to_string(j + 1) + "})");
    }
  }
  return result;
}

Tree reconstruct_from_labeled_cuts(const LabeledCuts& lc, int n) {
  if (lc.k() < 3 || lc.k() > n - 3) throw RangeError("reconstruction needs 3 <= k <= n-3");
  std::optional<LabeledCuts> three, two;
  LabeledCuts cur = lc;
  while (cur.k() > 1) {
    if (cur.k() == 3) three = cur;
    if (cur.k() == 2) two = cur;
    cur = derive_lower_cuts(cur, n);
  }
  const auto m = static_cast<std::uint32_t>(n - 1);
  std::vector<Partition> one;
  for (std::uint32_t e = 0; e < m; ++e) one.push_back(cur.at(bit(e)));
  const auto order = reverse_lex_order(one);
  if (one[order[0]] != Partition({n / 2, n / 2})) throw NotDoubleCentroidError("no central edge");
  std::vector<std::uint32_t> position(m);
  for (std::uint32_t i = 0; i < m; ++i) position[order[i]] = i;

  std::vector<std::pair<EdgeSet, Partition>> entries;
  for (const auto& [s, p] : two->entries()) {
    EdgeSet moved;
    for (auto e : s.indices()) moved = moved.with(EdgeId{position[e]});
    entries.emplace_back(moved, p);
  }
  ReconstructionInput input{n, LabeledCuts(n, 2, std::move(entries)), {}};
  for (std::uint32_t j = 2; j < m; ++j) {
    const EdgeSet s = bit(order[0]).with(EdgeId{order[1]}).with(EdgeId{order[j]});
    input.slices.emplace(j, three->at(s));
  }
  return reconstruct_double_centroid(input);
}

bool labeled_2cuts_equivalent(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  const auto m = a.edge_count();
  if (m < 2) return true;
  const auto& table = PartitionTable::of(static_cast<int>(a.size()));
  auto matrix = [&](const Tree& t) {
    const CutEngine engine(t);
    std::vector<std::vector<PartitionId>> out(m, std::vector<PartitionId>(m, 0));
    for (std::uint32_t x = 0; x < m; ++x) {
      for (std::uint32_t y = x + 1; y < m; ++y) {
        out[x][y] = out[y][x] = table.rank(engine.theta(bit(x).with(EdgeId{y})));
      }
    }
    return out;
  };
  const auto ma = matrix(a), mb = matrix(b);
  auto row_sig = [&](const std::vector<PartitionId>& row, std::size_t self) {
    std::vector<PartitionId> r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != self) r.push_back(row[i]);
    }
    std::sort(r.begin(), r.end());
    return r;
  };
  std::vector<std::vector<PartitionId>> sa(m), sb(m);
  for (std::size_t i = 0; i < m; ++i) {
    sa[i] = row_sig(ma[i], i);
    sb[i] = row_sig(mb[i], i);
  }
  std::vector<std::uint32_t> sigma(m);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t x) {
    if (x == m) return true;
    for (std::uint32_t y = 0; y < m; ++y) {
      if (used[y] || sa[x] != sb[y]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < x && ok; ++p) ok = ma[x][p] == mb[y][sigma[p]];
      if (!ok) continue;
      used[y] = true;
      sigma[x] = y;
      if (assign(x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  return assign(0);
}

InsufficiencyReport verify_labeled_2cut_insufficiency() {
  InsufficiencyReport r;
  const auto f1 = fixtures::figure1_pair();
  const auto f2 = fixtures::figure2_pair();
  const auto e123 = EdgeSet{0b111};
  r.fig2_same_labeled_2cuts = labeled_k_cuts(f2.left, 2) == labeled_k_cuts(f2.right, 2);
  r.fig1_same_labeled_2cuts = labeled_k_cuts(f1.left, 2) == labeled_k_cuts(f1.right, 2);
  r.pairs_non_isomorphic = canonical_form(f1.left) != canonical_form(f1.right) &&
                           canonical_form(f2.left) != canonical_form(f2.right);
  r.fig2_left_e123 = theta(f2.left, e123);
  r.fig2_right_e123 = theta(f2.right, e123);
  r.fig1_left_e123 = theta(f1.left, e123);
  r.fig1_right_e123 = theta(f1.right, e123);

  // At n = 4 every 2-cut is (2,1,1), so the star and the path match
  // trivially; the search starts above that.
  r.no_smaller_pair = true;
  for (std::size_t n = 5; n < 10; ++n) {
    std::map<std::string, std::vector<Tree>> groups;
    for (auto& t : all_free_trees(n)) {
      std::string key;
      k_cuts(t, 2).append_key_bytes(key);
      groups[key].push_back(std::move(t));
    }
    for (const auto& [key, members] : groups) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if (labeled_2cuts_equivalent(members[i], members[j])) r.no_smaller_pair = false;
        }
      }
    }
  }
  r.smallest_n_checked = 10;

  std::string failures;
  if (!r.fig2_same_labeled_2cuts) failures += " figure-2 2-cuts differ;";
  if (!r.fig1_same_labeled_2cuts) failures += " figure-1 2-cuts differ;";
  if (!r.pairs_non_isomorphic) failures += " a pair is isomorphic;";
  if (r.fig2_left_e123 == r.fig2_right_e123 || r.fig1_left_e123 == r.fig1_right_e123) {
    failures += " theta({e1,e2,e3}) does not separate a pair;";
  }
  if (!r.no_smaller_pair) failures += " a pair exists below n=10;";
  if (!failures.empty()) throw FixtureError(failures);
  return r;
}

std::string labeled_cuts_to_json(const LabeledCuts& lc) {
  nlohmann::ordered_json doc;
  doc["n"] = lc.n();
  doc["k"] = lc.k();
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [s, p] : lc.entries()) {
    doc["entries"].push_back({s.indices(), std::vector<int>(p.parts().begin(), p.parts().end())});
  }
  return doc.dump() + "\n";
}

namespace {

LabeledCuts table_from(const nlohmann::json& doc) {
  const int n = doc.at("n").get<int>();
  const int k = doc.at("k").get<int>();
  if (n < 2 || k < 0 || k > n - 1) throw InconsistentDataError("bad n/k in table");
  std::vector<std::pair<EdgeSet, Partition>> entries;
  for (const auto& item : doc.at("entries")) {
    const auto idx = item.at(0).get<std::vector<std::uint32_t>>();
    Partition p = parse_parts(item.at(1));
    EdgeSet s;
    for (auto e : idx) {
      if (e >= static_cast<std::uint32_t>(n - 1)) throw InconsistentDataError("edge index out of range");
      if (s.contains(EdgeId{e})) throw InconsistentDataError("edge repeated in a cut");
      s = s.with(EdgeId{e});
    }
    if (static_cast<int>(idx.size()) != k) throw InconsistentDataError("cut has the wrong size");
    if (p.total() != n || static_cast<int>(p.length()) != k + 1) {
      throw InconsistentDataError("partition " + p.to_string() + " is not a k-cut value");
    }
    entries.emplace_back(s, std::move(p));
  }
  return LabeledCuts(n, k, std::move(entries));
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

LabeledCuts labeled_cuts_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  return guarded([&] { return table_from(doc); });
}

std::string reconstruction_input_to_json(const ReconstructionInput& input) {
  nlohmann::ordered_json doc;
  doc["n"] = input.n;
  doc["two_cuts"] = nlohmann::ordered_json::parse(labeled_cuts_to_json(input.two_cuts));
  doc["slices"] = nlohmann::ordered_json::array();
  for (const auto& [j, p] : input.slices) {
    doc["slices"].push_back({j, std::vector<int>(p.parts().begin(), p.parts().end())});
  }
  return doc.dump() + "\n";
}

ReconstructionInput reconstruction_input_from_json(std::string_view text) {
  const auto doc = parse_json(text);
  return guarded([&] {
    ReconstructionInput input;
    input.n = doc.at("n").get<int>();
    input.two_cuts = table_from(doc.at("two_cuts"));
    for (const auto& item : doc.at("slices")) {
      input.slices.emplace(item.at(0).get<std::uint32_t>(), parse_parts(item.at(1)));
    }
    return input;
  });
}

}  // namespace chromacut
