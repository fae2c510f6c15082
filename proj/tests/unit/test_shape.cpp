#include <doctest.h>

#include <random>
#include <sstream>

#include "../support/shape_fixtures.hpp"
#include "spartan/codec.hpp"
#include "spartan/corpus.hpp"
#include "spartan/error.hpp"
#include "spartan/shape.hpp"

using namespace spartan;
using testing::place;

namespace {

const GridSpec kGrid = GridSpec::standard();

std::vector<Coord> shifted(const std::vector<Coord>& cells, int dr, int dc) {
  std::vector<Coord> out;
  for (auto c : cells) out.push_back({c.row + dr, c.col + dc});
  return out;
}

}  // namespace

TEST_CASE("classification fixtures") {
  auto fixtures = testing::shape_fixtures();
  REQUIRE(fixtures.size() == 25);
  for (const auto& f : fixtures) {
    INFO(f.name);
    ShapeClass cls = classify(place(kGrid, f.cells));
    CHECK(cls.kind == f.kind);
    CHECK(cls.orientation == f.orientation);
    CHECK(cls.direction_changes == f.direction_changes);
    CHECK(cls.segment_count == f.segment_count);
  }
}

TEST_CASE("snake turn counts agree with the permutation oracle") {
  for (const auto& f : testing::shape_fixtures()) {
    if (f.kind != ShapeKind::Snake) continue;
    INFO(f.name);
    CHECK(testing::min_turns_by_permutation(f.cells) == f.direction_changes);
  }
  // The snake ordered the way it is typed.
  std::vector<Coord> typed{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {4, 6}};
  CHECK(testing::count_turns(typed) == 2);
}

TEST_CASE("classify is independent of entry order") {
  std::mt19937_64 rng(3);
  for (const auto& f : testing::shape_fixtures()) {
    auto cells = f.cells;
    std::shuffle(cells.begin(), cells.end(), rng);
    CHECK(classify(place(kGrid, cells)) == classify(place(kGrid, f.cells)));
  }
}

TEST_CASE("classify edge cases") {
  CHECK_THROWS_AS(classify(place(kGrid, {{0, 0}})), Error);
  CHECK(classify(place(kGrid, {{0, 0}, {0, 1}})).kind == ShapeKind::StraightLine);
  CHECK(classify(place(kGrid, {{0, 0}, {1, 1}})).orientation == Orientation::Diagonal);
  // Two cells touching only across the wrap.
  CHECK(classify(place(kGrid, {{0, 0}, {11, 0}})).kind == ShapeKind::StraightLine);
  // A whole row is a line.
  CHECK(classify(place(kGrid, testing::run({4, 0}, 0, 1, 12))).kind == ShapeKind::StraightLine);
  // A full 2-row band around the torus is still a block.
  CHECK(classify(place(kGrid, testing::rect({3, 0}, 2, 12))).kind == ShapeKind::Block);
  // Rectangle with a hole is not a block.
  auto ring = testing::rect({0, 0}, 3, 3);
  ring.erase(ring.begin() + 4);
  CHECK(classify(place(kGrid, ring)).kind == ShapeKind::Snake);
}

TEST_CASE("translation invariance on non-wrapping placements") {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 500) {
    // Random cells inside a 5x5 box so no translation can bring opposite
    // edges together.
    int n = 2 + int(rng() % 6);
    std::set<Coord> chosen;
    while (int(chosen.size()) < n) chosen.insert({int(rng() % 5), int(rng() % 5)});
    std::vector<Coord> cells(chosen.begin(), chosen.end());
    int dr = int(rng() % 8), dc = int(rng() % 8);
    ShapeClass a = classify(place(kGrid, cells));
    ShapeClass b = classify(place(kGrid, shifted(cells, dr, dc)));
    CHECK(a.kind == b.kind);
    CHECK(a.orientation == b.orientation);
    CHECK(a.direction_changes == b.direction_changes);
    CHECK(a.segment_count == b.segment_count);
    if (a.endpoints && b.endpoints) {
      CHECK(infer_start(place(kGrid, shifted(cells, dr, dc)), b) ==
            Coord{infer_start(place(kGrid, cells), a).row + dr,
                  infer_start(place(kGrid, cells), a).col + dc});
    }
    ++checked;
  }
}

TEST_CASE("infer_start") {
  auto line = place(kGrid, testing::run({3, 2}, 0, 1, 8));
  CHECK(infer_start(line, classify(line)) == Coord{3, 2});
  auto vertical = place(kGrid, testing::run({1, 0}, 1, 0, 5));
  CHECK(infer_start(vertical, classify(vertical)) == Coord{1, 0});
  auto snake = place(kGrid, testing::shape_fixtures()[10].cells);
  CHECK(infer_start(snake, classify(snake)) == Coord{1, 2});
  auto block = place(kGrid, testing::rect({0, 0}, 2, 2));
  CHECK_THROWS_AS(infer_start(block, classify(block)), Error);
}

TEST_CASE("quadrants and edges") {
  CHECK(quadrant_of(kGrid, {0, 0}) == 0);
  CHECK(quadrant_of(kGrid, {5, 6}) == 1);
  CHECK(quadrant_of(kGrid, {6, 5}) == 2);
  CHECK(quadrant_of(kGrid, {11, 11}) == 3);
  CHECK(on_edge(kGrid, {0, 5}));
  CHECK(on_edge(kGrid, {5, 11}));
  CHECK_FALSE(on_edge(kGrid, {1, 1}));
}

TEST_CASE("corpus statistics") {
  SUBCASE("single horizontal run in the first quadrant") {
    std::vector<Placement> corpus{place(kGrid, testing::run({1, 1}, 0, 1, 4))};
    CorpusStats s = corpus_stats(corpus);
    REQUIRE(s.start_quadrant_fractions);
    CHECK(*s.start_quadrant_fractions == std::array<double, 4>{1, 0, 0, 0});
    CHECK(*s.edge_vs_center_fractions == std::array<double, 2>{0, 1});
    CHECK_FALSE(s.mean_direction_changes);
    CHECK(s.class_histogram[0] == 1);
  }
  SUBCASE("mean of 2.7 direction changes") {
    auto fixtures = testing::shape_fixtures();
    auto two = fixtures[10].cells;    // 2 changes
    auto three = fixtures[12].cells;  // 3 changes
    std::vector<Placement> corpus;
    for (int i = 0; i < 3; ++i) corpus.push_back(place(kGrid, shifted(two, i, i)));
    for (int i = 0; i < 7; ++i) corpus.push_back(place(kGrid, shifted(three, i, i)));
    corpus.push_back(place(kGrid, testing::rect({0, 0}, 2, 2)));
    CorpusStats s = corpus_stats(corpus);
    REQUIRE(s.mean_direction_changes);
    CHECK(std::abs(*s.mean_direction_changes - 2.7) < 1e-9);
    CHECK(s.class_histogram[2] == 10);
    CHECK(s.class_histogram[1] == 1);
    CHECK(s.path_starts == 10);
    double sum = 0;
    for (double f : *s.start_quadrant_fractions) sum += f;
    CHECK(std::abs(sum - 1.0) < 1e-9);
    CHECK(std::abs((*s.edge_vs_center_fractions)[0] + (*s.edge_vs_center_fractions)[1] - 1.0) <
          1e-9);
  }
  SUBCASE("heatmap conservation on random corpora") {
    std::mt19937_64 rng(8);
    std::vector<Placement> corpus;
    long total = 0;
    for (int i = 0; i < 200; ++i) {
      corpus.push_back(testing::random_placement(rng, kGrid, 1, 12));
      total += long(corpus.back().size());
    }
    CorpusStats s = corpus_stats(corpus);
    long sum = 0;
    for (long v : s.heatmap) sum += v;
    CHECK(sum == total);
    long classified = 0;
    for (long v : s.class_histogram) classified += v;
    CHECK(classified + long(s.too_short) == 200);
  }
  SUBCASE("mean segment count") {
    auto fixtures = testing::shape_fixtures();
    std::vector<Placement> corpus{place(kGrid, fixtures[15].cells),
                                  place(kGrid, fixtures[17].cells)};
    CHECK(*corpus_stats(corpus).mean_segment_count == 2.5);
  }
  SUBCASE("errors") {
    std::vector<Placement> none;
    CHECK_THROWS_AS(corpus_stats(none), Error);
    GridSpec other(9, 9, default_alphabet(), 6, 0);
    std::vector<Placement> mixed{place(kGrid, {{0, 0}, {0, 1}}), place(other, {{0, 0}, {0, 1}})};
    CHECK_THROWS_AS(corpus_stats(mixed), Error);
  }
}

TEST_CASE("corpus JSON lines") {
  auto p = place(kGrid, testing::shape_fixtures()[10].cells);
  std::string line = format_corpus_line(p);
  auto j = nlohmann::json::parse(line);
  CHECK(j["grid"]["rows"] == 12);
  CHECK(j["grid"]["cols"] == 12);
  CHECK(j["tagged"] == to_tagged(p));
  CHECK(parse_corpus_line(line, default_alphabet()) == p);

  std::istringstream in(line + "\n\n" + R"({"grid":{"rows":9,"cols":9},"tagged":"23P24a"})" +
                        "\n");
  auto corpus = read_corpus(in, default_alphabet());
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[1].grid().rows() == 9);
  CHECK(corpus[1].at({1, 2}) == 'P');

  std::istringstream bad(line + "\n{\"grid\":{\"rows\":9}}\n");
  try {
    read_corpus(bad, default_alphabet());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_corpus_line("not json", default_alphabet()), ParseError);
}

TEST_CASE("classification JSON") {
  auto fixtures = testing::shape_fixtures();
  CHECK(to_json(classify(place(kGrid, fixtures[10].cells))).dump() ==
        R"({"class":"Snake","direction_changes":2})");
  CHECK(to_json(classify(place(kGrid, fixtures[0].cells))).dump() ==
        R"({"class":"StraightLine","orientation":"horizontal"})");
  CHECK(to_json(classify(place(kGrid, fixtures[15].cells))).dump() ==
        R"({"class":"Segments","segment_count":2})");
  CHECK(to_json(classify(place(kGrid, fixtures[5].cells))).dump() == R"({"class":"Block"})");
  CHECK(to_json(classify(place(kGrid, fixtures[20].cells))).dump() == R"({"class":"Points"})");
}

TEST_CASE("stats JSON and heatmap CSV") {
  std::vector<Placement> corpus{place(kGrid, testing::run({0, 0}, 0, 1, 3))};
  CorpusStats s = corpus_stats(corpus);
  auto j = to_json(s);
  CHECK(j["placements"] == 1);
  CHECK(j["class_histogram"]["StraightLine"] == 1);
  CHECK(j["start_quadrant_fractions"].size() == 4);
  CHECK(j["mean_direction_changes"].is_null());
  std::string csv = heatmap_csv(s);
  std::istringstream in(csv);
  std::string first;
  std::getline(in, first);
  CHECK(first == "1,1,1,0,0,0,0,0,0,0,0,0");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
}

TEST_CASE("word lists") {
  std::istringstream in("alpha\r\n\nbeta\ngamma");
  CHECK(read_word_list(in) == std::vector<std::string>{"alpha", "beta", "gamma"});
}
