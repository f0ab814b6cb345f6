#include "chromacut/distinguish.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "chromacut/errors.hpp"
#include "chromacut/graph_format.hpp"
#include "chromacut/treegen.hpp"

namespace chromacut {

namespace fs = std::filesystem;

namespace {

std::uint64_t fmix(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

unsigned resolve_threads(unsigned threads) {
  if (threads) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) on `threads` workers, strided.
template <typename F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += threads) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string key_bytes(const Tree& t, int k) {
  std::string out;
  k_cuts(t, static_cast<std::size_t>(k)).append_key_bytes(out);
  return out;
}

std::string to_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string from_hex(std::string_view hex) {
  if (hex.size() % 2) throw ParseError("odd-length hex key");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw ParseError("bad hex digit");
  };
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return out;
}

struct Group {
  SignatureKey key;
  std::vector<std::uint32_t> members;  // indices into the pool
};

// Splits every group by its members' k-cut multisets. Singleton groups are
// dropped; survivors come back sorted by key.
std::vector<Group> refine(const std::vector<Tree>& pool, const std::vector<Group>& groups, int k,
                          unsigned threads) {
  std::vector<std::pair<std::size_t, std::uint32_t>> work;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (auto m : groups[g].members) work.emplace_back(g, m);
  }
  std::vector<std::string> bytes(work.size());
  parallel_for(work.size(), threads, [&](std::size_t i) { bytes[i] = key_bytes(pool[work[i].second], k); });

  std::vector<Group> out;
  std::size_t w = 0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    struct Bucket {
      std::string bytes;
      std::vector<std::uint32_t> members;
    };
    std::vector<Bucket> buckets;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
    for (; w < work.size() && work[w].first == g; ++w) {
      const auto h = hash128(bytes[w]);
      auto& slots = by_hash[h.hi ^ fmix(h.lo)];
      std::size_t hit = buckets.size();
      for (auto s : slots) {
        if (buckets[s].bytes == bytes[w]) {
          hit = s;
          break;
        }
      }
      if (hit == buckets.size()) {
        slots.push_back(hit);
        buckets.push_back({std::move(bytes[w]), {}});
      }
      buckets[hit].members.push_back(work[w].second);
    }
    for (auto& b : buckets) {
      if (b.members.size() < 2) continue;
      Group next{groups[g].key, std::move(b.members)};
      next.key.k = k;
      next.key.bytes += b.bytes;
      out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(), [](const Group& a, const Group& b) { return a.key < b.key; });
  return out;
}

TableRow row_for(int n, int k, std::uint64_t total, const std::vector<Group>& groups) {
  TableRow row{n, k, 0, total, groups.size()};
  for (const auto& g : groups) row.colliding += g.members.size();
  return row;
}

std::vector<Tree> generate_pool(int n, unsigned threads) {
  const std::size_t shards = threads;
  std::vector<std::vector<std::pair<std::uint64_t, Tree>>> parts(shards);
  parallel_for(shards, threads, [&](std::size_t s) {
    auto stream = shard_stream(static_cast<std::size_t>(n), s, shards);
    while (auto t = stream.next()) parts[s].emplace_back(stream.position(), std::move(*t));
  });
  std::vector<std::pair<std::uint64_t, Tree>> merged;
  for (auto& p : parts) {
    for (auto& item : p) merged.push_back(std::move(item));
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Tree> pool;
  pool.reserve(merged.size());
  for (auto& item : merged) pool.push_back(std::move(item.second));
  return pool;
}

fs::path depth_dir(const fs::path& run_dir, int n, int k) {
  return run_dir / "shards" / std::to_string(n) / std::to_string(k);
}

void save_depth(const fs::path& run_dir, int n, const TableRow& row, const std::vector<Tree>& pool,
                const std::vector<Group>& groups) {
  const auto dir = depth_dir(run_dir, n, row.k);
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& g : groups) {
    std::ofstream out(dir / (g.key.hash().hex() + ".s6"));
    out << "#key=" << to_hex(g.key.bytes) << "\n";
    for (auto m : g.members) out << encode_sparse6(pool[m]) << "\n";
  }
  // Written last: its presence marks the depth as finished.
  std::ofstream marker(dir / "complete");
  marker << row.total << ' ' << row.colliding << ' ' << row.families << "\n";
}

std::optional<TableRow> load_marker(const fs::path& run_dir, int n, int k) {
  std::ifstream in(depth_dir(run_dir, n, k) / "complete");
  if (!in) return std::nullopt;
  TableRow row{n, k, 0, 0, 0};
  if (!(in >> row.total >> row.colliding >> row.families)) return std::nullopt;
  return row;
}

std::vector<Group> load_groups(const fs::path& run_dir, int n, int k, std::vector<Tree>& pool) {
  std::vector<Group> groups;
  for (const auto& entry : fs::directory_iterator(depth_dir(run_dir, n, k))) {
    if (entry.path().extension() != ".s6") continue;
    std::ifstream in(entry.path());
    std::string line;
    Group g;
    g.key.k = k;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.starts_with("#key=")) {
        g.key.bytes = from_hex(line.substr(5));
        continue;
      }
      g.members.push_back(static_cast<std::uint32_t>(pool.size()));
      pool.push_back(decode_sparse6(line));
    }
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.key < b.key; });
  return groups;
}

std::vector<std::uint32_t> expand(const CutMultiset& m) {
  std::vector<std::uint32_t> out;
  for (const auto& [id, c] : m.entries()) out.insert(out.end(), c, id);
  return out;
}

// Rooted codes of the branches hanging off centroid c, away from the other.
std::vector<std::string> branch_codes(const Tree& t, Vertex c, Vertex other) {
  std::vector<std::string> out;
  for (auto [w, e] : t.neighbors(c)) {
    if (w != other) out.push_back(detail::rooted_code(t, w, c));
  }
  return out;
}

}  // namespace

std::string Hash128::hex() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

Hash128 hash128(std::string_view bytes) {
  std::uint64_t h1 = 0x9e3779b97f4a7c15ULL ^ bytes.size();
  std::uint64_t h2 = 0xc2b2ae3d27d4eb4fULL + bytes.size();
  std::size_t i = 0;
  for (; i + 8 <= bytes.size(); i += 8) {
    std::uint64_t block = 0;
    std::memcpy(&block, bytes.data() + i, 8);
    h1 = rotl(h1 ^ fmix(block), 27) * 5 + 0x52dce729;
    h2 = rotl(h2 + fmix(block ^ 0x87c37b91114253d5ULL), 31) * 5 + 0x38495ab5;
  }
  std::uint64_t tail = 0;
  std::memcpy(&tail, bytes.data() + i, bytes.size() - i);
  h1 = fmix(h1 ^ fmix(tail));
  h2 = fmix(h2 ^ fmix(tail + 1));
  return {h1 + h2, h2 + h1 * 3};
}

void SignatureKey::extend(const CutMultiset& cuts) {
  k = cuts.k();
  cuts.append_key_bytes(bytes);
}

std::string TableRow::density_text() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", density());
  return buf;
}

bool density_matches_printed(std::uint64_t colliding, std::uint64_t total, std::string_view printed) {
  const auto dot = printed.find('.');
  const int places = dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  const double scale = std::pow(10.0, places);
  const double ours = std::round(static_cast<double>(colliding) / static_cast<double>(total) * scale);
  const double theirs = std::round(std::stod(std::string(printed)) * scale);
  return ours == theirs;
}

FiltrationResult filtration(int n, const FiltrationOptions& options) {
  if (n < 1) throw RangeError("n must be positive");
  if (static_cast<std::size_t>(n) > options.guard_n) {
    throw SizeLimitError("n=" + std::to_string(n) + " exceeds the guard " + std::to_string(options.guard_n));
  }
  if (options.max_k < 1) throw RangeError("max_k must be at least 1");
  const int max_k = std::min(options.max_k, n - 1);
  const unsigned threads = resolve_threads(options.threads);

  FiltrationResult result;
  result.n = n;
  std::vector<Tree> pool;
  std::vector<Group> groups;
  int depth = 0;

  if (options.run_dir) {
    for (int k = 1; k <= max_k; ++k) {
      auto row = load_marker(*options.run_dir, n, k);
      if (!row) break;
      result.rows.push_back(*row);
      depth = k;
      if (row->families == 0) break;
    }
    if (depth > 0) {
      result.total = result.rows.front().total;
      groups = load_groups(*options.run_dir, n, depth, pool);
      result.resumed_from = depth;
    }
  }

  if (depth == 0) {
    pool = generate_pool(n, threads);
    result.total = pool.size();
    Group all;
    all.members.resize(pool.size());
    for (std::uint32_t i = 0; i < pool.size(); ++i) all.members[i] = i;
    groups.push_back(std::move(all));
    if (max_k < 1) groups.clear();
  }

  const bool finished_early = depth > 0 && result.rows.back().families == 0;
  for (int k = depth + 1; k <= max_k && !finished_early; ++k) {
    groups = refine(pool, groups, k, threads);
    result.rows.push_back(row_for(n, k, result.total, groups));
    if (options.run_dir) save_depth(*options.run_dir, n, result.rows.back(), pool, groups);
    if (groups.empty()) break;
  }

  const int last = result.rows.empty() ? 0 : result.rows.back().k;
  for (const auto& g : groups) {
    Family f{n, last, {}};
    for (auto m : g.members) f.members.push_back(pool[m]);
    result.families.push_back(std::move(f));
  }
  result.distinguished = result.families.empty();
  return result;
}

PreorderResult preorder_compare(const Tree& a, const Tree& b, std::size_t guard) {
  if (a.size() != b.size()) throw SizeMismatchError("trees have different vertex counts");
  if (a.size() > guard) throw SizeLimitError("preorder_compare needs n <= " + std::to_string(guard));
  const CutEngine ea(a), eb(b);
  for (std::size_t k = 1; k < a.size(); ++k) {
    const auto ca = k_cuts(ea, k), cb = k_cuts(eb, k);
    if (ca == cb) continue;
    const auto la = expand(ca), lb = expand(cb);
    const bool less = std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
    return {less ? Ordering::Less : Ordering::Greater, static_cast<int>(k)};
  }
  return {};
}

MinimalPair minimal_pair(int k, int max_n, unsigned threads) {
  if (k < 1) throw RangeError("k must be at least 1");
  for (int n = k + 1; n <= max_n; ++n) {
    FiltrationOptions options;
    options.max_k = k;
    options.threads = threads;
    options.guard_n = static_cast<std::size_t>(max_n);
    auto result = filtration(n, options);
    if (result.rows.size() == static_cast<std::size_t>(k) && !result.families.empty()) {
      auto& members = result.families.front().members;
      return {n, members[0], members[1]};
    }
  }
  throw NotFoundWithinBound("no pair sharing " + std::to_string(k) + "-cuts with n <= " +
                            std::to_string(max_n));
}

bool is_branch_transposition(const Tree& a, const Tree& b) {
  if (a.size() != b.size()) return false;
  const auto ia = centroid_info(a), ib = centroid_info(b);
  if (!ia.double_centroid() || !ib.double_centroid()) return false;
  if (canonical_form(a) == canonical_form(b)) return false;
  auto pool_of = [](const Tree& t, const CentroidInfo& info) {
    auto x = branch_codes(t, info.centroids[0], info.centroids[1]);
    auto y = branch_codes(t, info.centroids[1], info.centroids[0]);
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end());
    return x;
  };
  return pool_of(a, ia) == pool_of(b, ib);
}

bool SplitReport::passed() const {
  return std::none_of(records.begin(), records.end(),
                      [](const SplitRecord& r) { return r.status == SplitStatus::Fail; });
}

std::string status_name(SplitStatus s) {
  switch (s) {
    case SplitStatus::Pass: return "PASS";
    case SplitStatus::Fail: return "FAIL";
    case SplitStatus::Skip: return "SKIP";
  }
  return "?";
}

SplitReport split_conjecture_check(int n, int k, unsigned threads) {
  if (n % 2) throw RangeError("split check needs even n");
  FiltrationOptions options;
  options.max_k = k;
  options.threads = threads;
  options.guard_n = 24;
  auto result = filtration(n, options);
  SplitReport report{n, k, {}};
  if (result.rows.size() < static_cast<std::size_t>(k)) return report;
  for (auto& family : result.families) {
    SplitRecord record;
    record.family = family;
    const bool all_double = std::all_of(family.members.begin(), family.members.end(),
                                        [](const Tree& t) { return centroid_info(t).double_centroid(); });
    if (!all_double) {
      record.status = SplitStatus::Skip;
      record.note = "a member has a single centroid";
      report.records.push_back(std::move(record));
      continue;
    }
    for (const auto& t : family.members) record.images.push_back(split_central_edge(t));
    bool same = true;
    for (int j = 1; j <= k && same; ++j) {
      const auto first = k_cuts(record.images.front(), static_cast<std::size_t>(j));
      for (std::size_t i = 1; i < record.images.size() && same; ++i) {
        if (!(k_cuts(record.images[i], static_cast<std::size_t>(j)) == first)) {
          same = false;
          record.note = "images differ at j=" + std::to_string(j);
        }
      }
    }
    record.status = same ? SplitStatus::Pass : SplitStatus::Fail;
    report.records.push_back(std::move(record));
  }
  return report;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string checksum_text(std::string_view body) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  return buf;
}

}  // namespace

std::string csv_report(const std::vector<FiltrationResult>& results, std::string_view config) {
  std::ostringstream body;
  body << "n,k,colliding,density,families\n";
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      body << row.n << ',' << row.k << ',' << row.colliding << ',' << row.density_text() << ','
           << row.families << '\n';
    }
  }
  const auto text = body.str();
  return "# config: " + std::string(config) + "\n# checksum: " + checksum_text(text) + "\n" + text;
}

std::string json_report(const std::vector<FiltrationResult>& results, std::string_view config) {
  using nlohmann::ordered_json;
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    ordered_json item;
    item["n"] = r.n;
    item["total"] = r.total;
    item["distinguished"] = r.distinguished;
    item["rows"] = ordered_json::array();
    for (const auto& row : r.rows) {
      item["rows"].push_back({{"k", row.k},
                              {"colliding", row.colliding},
                              {"density", row.density_text()},
                              {"families", row.families}});
    }
    item["families"] = ordered_json::array();
    for (const auto& f : r.families) {
      ordered_json members = ordered_json::array();
      for (const auto& t : f.members) members.push_back(encode_sparse6(t));
      item["families"].push_back({{"k", f.k}, {"members", std::move(members)}});
    }
    list.push_back(std::move(item));
  }
  const auto body = list.dump();
  ordered_json doc;
  doc["config"] = std::string(config);
  doc["checksum"] = checksum_text(body);
  doc["results"] = std::move(list);
  return doc.dump(2) + "\n";
}

}  // namespace chromacut
