#include <doctest.h>

#include <atomic>
#include <random>
#include <set>
#include <sstream>

#include "../support/oracles.hpp"
#include "spartan/codec.hpp"
#include "spartan/cracker.hpp"
#include "spartan/credential.hpp"
#include "spartan/error.hpp"

using namespace spartan;

namespace {

AttackStrategy make(StrategyKind kind, const GridSpec& g, int turns = 0) {
  return {{kind, turns}, g};
}

std::set<std::string> generated_set(const AttackStrategy& s, const std::string& word,
                                    std::uint64_t* raw = nullptr) {
  std::set<std::string> out;
  std::uint64_t distinct = 0;
  auto tally = for_each_candidate(s, word, [&](std::string_view c) {
    out.insert(std::string(c));
    ++distinct;
  });
  CHECK(distinct == out.size());  // nothing emitted twice
  CHECK(tally.distinct == distinct);
  if (raw) *raw = tally.raw;
  return out;
}

std::vector<std::string> words_up_to(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out, frontier{""};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (char c : alphabet) next.push_back(w + c);
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Placement typed(const GridSpec& g, const std::string& word, Coord start, int dir) {
  std::vector<int> dirs(word.size() - 1, dir);
  return from_canonical(g, testing::type_word(g.rows(), g.cols(), start.row, start.col, word, dirs));
}

}  // namespace

TEST_CASE("strategy names round trip") {
  for (auto text : {"fixed-top-left", "horizontal-lr", "horizontal-both", "straight-any",
                    "snake:0", "snake:3", "points"}) {
    CHECK(StrategyRule::parse(text).name() == text);
  }
  CHECK_THROWS_AS(StrategyRule::parse("spiral"), Error);
  CHECK_THROWS_AS(StrategyRule::parse("snake:-1"), Error);
  CHECK_THROWS_AS(StrategyRule::parse("snake:x"), Error);
}

TEST_CASE("expansion factors") {
  GridSpec g = GridSpec::standard();
  CHECK(expansion_factor(make(StrategyKind::FixedTopLeftHorizontal, g), 10) == 1);
  CHECK(expansion_factor(make(StrategyKind::HorizontalAnyStartLR, g), 10) == 144);
  CHECK(expansion_factor(make(StrategyKind::HorizontalAnyStartBothDir, g), 10) == 288);
  CHECK(expansion_factor(make(StrategyKind::StraightAnyDirection, g), 10) == 8 * 144);
  CHECK(expansion_factor(make(StrategyKind::PointsCountOnly, g), 10).str() ==
        testing::decimal_falling_product(144, 10));
  CHECK_THROWS_AS(expansion_factor(make(StrategyKind::HorizontalAnyStartLR, g), 145), Error);
  // Straight snake with zero turns is a straight line in any direction.
  CHECK(expansion_factor(make(StrategyKind::SnakeBounded, g, 0), 5) == 8 * 144);
  CHECK_THROWS_AS(expansion_factor(make(StrategyKind::SnakeBounded, g, 4), 12, 1000), Error);
}

TEST_CASE("spot examples") {
  GridSpec g12 = GridSpec::standard();
  auto fixed = generate_candidates(make(StrategyKind::FixedTopLeftHorizontal, g12), "ab");
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0] == Placement(g12, {{{0, 0}, 'a'}, {{0, 1}, 'b'}}));

  GridSpec g3 = testing::small_grid(3, 3);
  CHECK(generate_candidates(make(StrategyKind::HorizontalAnyStartLR, g3), "ab").size() == 9);
  CHECK(generate_candidates(make(StrategyKind::HorizontalAnyStartBothDir, g3), "aa").size() == 9);
  CHECK(generate_candidates(make(StrategyKind::HorizontalAnyStartBothDir, g3), "ab").size() == 18);
  CHECK_THROWS_AS(generate_candidates(make(StrategyKind::PointsCountOnly, g3), "ab"), Error);
  CHECK_THROWS_AS(generate_candidates(make(StrategyKind::HorizontalAnyStartLR, g3), "az"), Error);
}

TEST_CASE("straight strategies match the brute-force enumerator") {
  const std::vector<int> east{2}, both{2, 6}, all{0, 1, 2, 3, 4, 5, 6, 7};
  for (int rows = 2; rows <= 4; ++rows) {
    for (int cols = 2; cols <= 4; ++cols) {
      GridSpec g = testing::small_grid(rows, cols, "ab");
      for (const auto& w : words_up_to("ab", 4)) {
        if (int(w.size()) > rows * cols) continue;
        INFO(rows << "x" << cols << " " << w);
        CHECK(generated_set(make(StrategyKind::FixedTopLeftHorizontal, g), w) ==
              testing::brute_straight(rows, cols, w, east, true));
        CHECK(generated_set(make(StrategyKind::HorizontalAnyStartLR, g), w) ==
              testing::brute_straight(rows, cols, w, east, false));
        CHECK(generated_set(make(StrategyKind::HorizontalAnyStartBothDir, g), w) ==
              testing::brute_straight(rows, cols, w, both, false));
        CHECK(generated_set(make(StrategyKind::StraightAnyDirection, g), w) ==
              testing::brute_straight(rows, cols, w, all, false));
      }
    }
  }
}

TEST_CASE("snake strategies match the brute-force enumerator") {
  for (int rows = 2; rows <= 4; ++rows) {
    for (int cols = 2; cols <= 4; ++cols) {
      GridSpec g = testing::small_grid(rows, cols, "ab");
      for (const auto& w : words_up_to("ab", 4)) {
        if (int(w.size()) > rows * cols) continue;
        for (int turns = 0; turns <= 2; ++turns) {
          INFO(rows << "x" << cols << " " << w << " turns=" << turns);
          auto [expected, expected_raw] = testing::brute_snake(rows, cols, w, turns);
          std::uint64_t raw = 0;
          auto s = make(StrategyKind::SnakeBounded, g, turns);
          CHECK(generated_set(s, w, &raw) == expected);
          CHECK(raw == expected_raw);
          CHECK(expansion_factor(s, int(w.size())) == expected_raw);
        }
      }
    }
  }
}

TEST_CASE("counting consistency for words without repeated letters") {
  GridSpec g = testing::small_grid(4, 4, "abcd");
  for (auto kind : {StrategyKind::HorizontalAnyStartLR, StrategyKind::HorizontalAnyStartBothDir,
                    StrategyKind::StraightAnyDirection}) {
    auto s = make(kind, g);
    CHECK(BigInt(generate_candidates(s, "abc").size()) == expansion_factor(s, 3));
    CHECK(BigInt(generate_candidates(s, "aba").size()) <= expansion_factor(s, 3));
  }
}

TEST_CASE("start-cell partitions are disjoint and cover everything") {
  GridSpec g = testing::small_grid(4, 3, "ab");
  for (auto rule : {StrategyRule{StrategyKind::StraightAnyDirection, 0},
                    StrategyRule{StrategyKind::SnakeBounded, 2}}) {
    AttackStrategy s{rule, g};
    std::multiset<std::string> parts;
    for (int start = 0; start < g.cell_count(); ++start) {
      for_each_candidate_from(s, "abab", start, [&](std::string_view c) { parts.emplace(c); });
    }
    std::set<std::string> whole = generated_set(s, "abab");
    CHECK(parts.size() == whole.size());
    CHECK(std::set<std::string>(parts.begin(), parts.end()) == whole);
  }
}

TEST_CASE("generates agrees with enumeration") {
  GridSpec g = testing::small_grid(3, 4, "abc");
  std::mt19937_64 rng(1);
  for (auto rule : {StrategyRule{StrategyKind::FixedTopLeftHorizontal, 0},
                    StrategyRule{StrategyKind::HorizontalAnyStartBothDir, 0},
                    StrategyRule{StrategyKind::StraightAnyDirection, 0},
                    StrategyRule{StrategyKind::SnakeBounded, 1}}) {
    AttackStrategy s{rule, g};
    auto all = generated_set(s, "abca");
    for (const auto& c : all) CHECK(generates(s, "abca", from_canonical(g, c)));
    for (int i = 0; i < 200; ++i) {
      Placement p = testing::random_placement(rng, g, 4, 4);
      CHECK(generates(s, "abca", p) == (all.count(to_canonical(p)) == 1));
    }
  }
  AttackStrategy points{{StrategyKind::PointsCountOnly, 0}, g};
  CHECK(generates(points, "abca", Placement(g, {{{0, 0}, 'a'}, {{2, 3}, 'a'}, {{1, 1}, 'c'}, {{0, 2}, 'b'}})));
  CHECK_FALSE(generates(points, "abca", Placement(g, {{{0, 0}, 'a'}, {{2, 3}, 'b'}, {{1, 1}, 'c'}, {{0, 2}, 'b'}})));
  CHECK_FALSE(generates(points, "abca", Placement(g, {{{0, 0}, 'a'}, {{1, 1}, 'c'}, {{0, 2}, 'b'}})));
}

TEST_CASE("checkpoint text") {
  Checkpoint c{3, 14, 1, 59};
  CHECK(c.to_string() == "3:14:1:59");
  CHECK(Checkpoint::parse("3:14:1:59") == c);
  CHECK_THROWS_AS(Checkpoint::parse("3:14:1"), Error);
}

namespace {

struct PlantedFixture {
  GridSpec grid = testing::small_grid(4, 4, "abcd");
  std::vector<std::string> dictionary{"abcd", "dcba", "bad", "cab", "acdc",
                                      "dab", "cdab", "bbca", "adda", "dcc"};
  std::vector<CredentialRecord> records;
  std::vector<Coord> starts;

  PlantedFixture() {
    // Five passwords typed eastward; the first two start at the top-left.
    const std::vector<std::pair<std::string, Coord>> planted{
        {"abcd", {0, 0}}, {"cab", {0, 0}}, {"acdc", {2, 1}}, {"dab", {3, 3}}, {"bbca", {1, 2}}};
    int i = 0;
    for (const auto& [word, start] : planted) {
      records.push_back(register_credential("user" + std::to_string(i++),
                                            typed(grid, word, start, 2),
                                            KdfParams::test_profile()));
      records.back().grid = GridSummary::of(grid);
    }
    // A password typed westward (it reads "bac" eastward) and one not in the
    // dictionary.
    records.push_back(register_credential("west", typed(grid, "cab", {3, 2}, 6),
                                          KdfParams::test_profile()));
    records.push_back(register_credential("stranger", typed(grid, "ddd", {0, 0}, 2),
                                          KdfParams::test_profile()));
  }

  CrackOptions options(int workers = 1) const {
    CrackOptions o;
    o.alphabet = "abcd";
    o.workers = workers;
    return o;
  }
};

std::set<std::string> usernames(const CrackReport& r) {
  std::set<std::string> out;
  for (const auto& rec : r.recovered) out.insert(rec.username);
  return out;
}

}  // namespace

TEST_CASE("crack recovers planted passwords") {
  PlantedFixture f;
  const StrategyRule lr{StrategyKind::HorizontalAnyStartLR, 0};
  const StrategyRule fixed{StrategyKind::FixedTopLeftHorizontal, 0};
  const StrategyRule both{StrategyKind::HorizontalAnyStartBothDir, 0};

  CrackReport r = crack(f.records, f.dictionary, {lr}, f.options());
  CHECK(usernames(r) == std::set<std::string>{"user0", "user1", "user2", "user3", "user4"});
  CHECK(r.records == 7);
  CHECK(r.recovery_fraction == doctest::Approx(5.0 / 7));
  for (const auto& rec : r.recovered) {
    auto it = std::find_if(f.records.begin(), f.records.end(),
                           [&](const auto& c) { return c.username == rec.username; });
    CHECK(verify(rec.placement, *it));
    CHECK(rec.strategy == "horizontal-lr");
  }
  // Every word fits on 16 cells, none repeats a rotation of itself.
  std::uint64_t expected_hashes = 0;
  for (const auto& w : f.dictionary) {
    expected_hashes += generate_candidates({lr, f.grid}, w).size();
  }
  CHECK(r.hashes_computed == expected_hashes * f.records.size());
  CHECK(r.candidates_generated == 16 * f.dictionary.size() * f.records.size());

  CrackReport top_left = crack(f.records, f.dictionary, {fixed}, f.options());
  CHECK(usernames(top_left) == std::set<std::string>{"user0", "user1"});
  CHECK(top_left.hashes_computed == f.dictionary.size() * f.records.size());

  CrackReport with_west = crack(f.records, f.dictionary, {both}, f.options(3));
  CHECK(usernames(with_west).count("west") == 1);
  CHECK(usernames(with_west).count("stranger") == 0);
}

TEST_CASE("crack with several workers matches a single worker") {
  PlantedFixture f;
  std::vector<StrategyRule> rules{{StrategyKind::StraightAnyDirection, 0}};
  CrackReport one = crack(f.records, f.dictionary, rules, f.options(1));
  CrackReport four = crack(f.records, f.dictionary, rules, f.options(4));
  CHECK(usernames(one) == usernames(four));
  CHECK(one.hashes_computed == four.hashes_computed);
  CHECK(one.candidates_generated == four.candidates_generated);
}

TEST_CASE("crack checkpoints and resume") {
  PlantedFixture f;
  std::vector<StrategyRule> rules{{StrategyKind::HorizontalAnyStartLR, 0}};
  std::vector<Checkpoint> seen;
  CrackOptions o = f.options();
  o.on_checkpoint = [&](const Checkpoint& c) { seen.push_back(c); };
  CrackReport full = crack(f.records, f.dictionary, rules, o);
  REQUIRE(seen.size() == f.records.size() * f.dictionary.size());

  // Resume from the middle: the second half plus the first half add up.
  Checkpoint mid = seen[seen.size() / 2 - 1];
  CrackOptions resumed = f.options();
  resumed.resume_from = mid;
  CrackReport tail = crack(f.records, f.dictionary, rules, resumed);
  CHECK(tail.hashes_computed < full.hashes_computed);
  for (const auto& rec : tail.recovered) CHECK(usernames(full).count(rec.username) == 1);
}

TEST_CASE("crack input errors") {
  PlantedFixture f;
  std::vector<StrategyRule> lr{{StrategyKind::HorizontalAnyStartLR, 0}};
  CHECK_THROWS_AS(crack(f.records, {}, lr, f.options()), Error);
  CHECK_THROWS_AS(crack(f.records, f.dictionary, {{StrategyKind::PointsCountOnly, 0}}, f.options()),
                  Error);
  auto broken = f.records;
  broken[0].grid.rows = 0;
  CHECK_THROWS_AS(crack(broken, f.dictionary, lr, f.options()), Error);
}

TEST_CASE("tradeoff curve with planted membership") {
  GridSpec g = testing::small_grid(4, 4, "abcd");
  std::vector<std::string> dictionary{"abcd", "dcba", "cab"};
  std::vector<Placement> corpus;
  // 2 fixed top-left, 3 more horizontal elsewhere, 1 vertical, 2 snakes with
  // one turn, 2 not from the dictionary: 10 total.
  corpus.push_back(typed(g, "abcd", {0, 0}, 2));
  corpus.push_back(typed(g, "cab", {0, 0}, 2));
  corpus.push_back(typed(g, "dcba", {1, 1}, 2));
  corpus.push_back(typed(g, "abcd", {3, 2}, 2));
  corpus.push_back(typed(g, "cab", {2, 3}, 2));
  corpus.push_back(typed(g, "abcd", {0, 1}, 4));
  corpus.push_back(from_canonical(g, testing::type_word(4, 4, 0, 0, "abcd", {2, 2, 4})));
  corpus.push_back(from_canonical(g, testing::type_word(4, 4, 1, 1, "dcba", {4, 2, 2})));
  corpus.push_back(typed(g, "ddd", {0, 0}, 2));
  corpus.push_back(Placement(g, {{{0, 0}, 'a'}, {{2, 2}, 'b'}}));

  std::vector<StrategyRule> rules{{StrategyKind::FixedTopLeftHorizontal, 0},
                                  {StrategyKind::HorizontalAnyStartLR, 0},
                                  {StrategyKind::StraightAnyDirection, 0},
                                  {StrategyKind::SnakeBounded, 1}};
  auto points = tradeoff_curve(corpus, dictionary, rules);
  REQUIRE(points.size() == 4);
  CHECK(points[0].rule.kind == StrategyKind::FixedTopLeftHorizontal);
  CHECK(points[0].dictionary_size == 3);
  CHECK(points[0].recovery_fraction == 0.2);
  CHECK(points[1].rule.kind == StrategyKind::HorizontalAnyStartLR);
  CHECK(points[1].dictionary_size == 48);
  CHECK(points[1].recovery_fraction == 0.5);
  CHECK(points[2].rule.kind == StrategyKind::StraightAnyDirection);
  CHECK(points[2].dictionary_size == 384);
  CHECK(points[2].recovery_fraction == 0.6);
  CHECK(points[3].rule.kind == StrategyKind::SnakeBounded);
  CHECK(points[3].recovery_fraction == 0.8);
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].dictionary_size >= points[i - 1].dictionary_size);
    CHECK(points[i].recovery_fraction >= points[i - 1].recovery_fraction);
  }

  std::istringstream csv(tradeoff_csv(points));
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "strategy,dictionary_size,recovery_fraction");
  CHECK(first == "fixed-top-left,3,0.200000");

  std::vector<std::string> unrelated{"bbb"};
  for (const auto& p : tradeoff_curve(corpus, unrelated, rules)) CHECK(p.recovery_fraction == 0.0);
  CHECK_THROWS_AS(tradeoff_curve({}, dictionary, rules), Error);
}
