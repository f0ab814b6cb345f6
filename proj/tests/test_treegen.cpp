#include <doctest.h>

#include <set>

#include "chromacut/errors.hpp"
#include "chromacut/treegen.hpp"
#include "oracles.hpp"

using namespace chromacut;

namespace {

std::multiset<std::string> forms_of(TreeStream stream) {
  std::multiset<std::string> out;
  while (auto t = stream.next()) out.insert(canonical_form(*t).bytes);
  return out;
}

}  // namespace

TEST_CASE("free-tree counts") {
  const std::uint64_t expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320};
  for (std::size_t n = 1; n <= 16; ++n) CHECK(count_free_trees(n) == expected[n - 1]);
}

TEST_CASE("stream matches the Pruefer oracle up to 10 vertices") {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto ours = forms_of(enumerate_free_trees(n));
    std::set<std::string> brute;
    oracle::for_each_prufer_tree(n, n <= 7, [&](const Tree& t) { brute.insert(canonical_form(t).bytes); });
    CHECK(ours.size() == brute.size());
    CHECK(std::set<std::string>(ours.begin(), ours.end()) == brute);
  }
}

TEST_CASE("shards partition the stream") {
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < 4; ++s) {
    auto stream = shard_stream(10, s, 4);
    while (stream.next()) ++total;
  }
  CHECK(total == 106);

  std::set<std::string> seen;
  std::size_t yielded = 0;
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& f : forms_of(shard_stream(9, s, 3))) {
      seen.insert(f);
      ++yielded;
    }
  }
  CHECK(yielded == 47);
  CHECK(seen.size() == 47);

  auto one = shard_stream(8, 0, 1);
  auto full = enumerate_free_trees(8);
  while (auto t = full.next()) {
    auto u = one.next();
    REQUIRE(u);
    CHECK(*u == *t);
  }
  CHECK(!one.next());
}

TEST_CASE("positions follow the round-robin stride") {
  auto stream = shard_stream(9, 2, 5);
  std::uint64_t expect = 2;
  while (stream.next()) {
    CHECK(stream.position() == expect);
    expect += 5;
  }
}

TEST_CASE("stream is deterministic") {
  CHECK(all_free_trees(11) == all_free_trees(11));
}

TEST_CASE("bad stream arguments") {
  CHECK_THROWS_AS(enumerate_free_trees(0), RangeError);
  CHECK_THROWS_AS(shard_stream(5, 3, 3), RangeError);
  CHECK_THROWS_AS(shard_stream(5, 0, 0), RangeError);
}

TEST_CASE("tree_from_level_sequence") {
  const Tree t = tree_from_level_sequence({0, 1, 2, 1});
  CHECK(t.size() == 4);
  CHECK(canonical_form(t) == canonical_form(path_tree(4)));
}
