#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spartan/grid.hpp"
#include "spartan/shape.hpp"

namespace spartan {

/// One corpus line: {"grid":{"rows":R,"cols":C},"tagged":"<tagged form>"}.
/// Placements are built on an R x C grid with `alphabet`.
Placement parse_corpus_line(std::string_view line, const std::string& alphabet);
std::string format_corpus_line(const Placement& p);

/// Blank lines are skipped. Throws ParseError naming the line number.
std::vector<Placement> read_corpus(std::istream& in, const std::string& alphabet);
std::vector<Placement> read_corpus_file(const std::filesystem::path& path,
                                        const std::string& alphabet);

/// {"class":"Snake","direction_changes":2} and friends; only the metric
/// that belongs to the class is present.
nlohmann::ordered_json to_json(const ShapeClass& cls);
nlohmann::ordered_json to_json(const CorpusStats& stats);

/// rows lines of cols comma-separated counts.
std::string heatmap_csv(const CorpusStats& stats);

/// Newline-delimited words; trailing CR and blank lines dropped.
std::vector<std::string> read_word_list(std::istream& in);
std::vector<std::string> read_word_list_file(const std::filesystem::path& path);

}  // namespace spartan
