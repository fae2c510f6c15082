#include "spartan/corpus.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "spartan/codec.hpp"
#include "spartan/error.hpp"

namespace spartan {

Placement parse_corpus_line(std::string_view line, const std::string& alphabet) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "corpus line is not valid JSON");
  }
  try {
    const auto& grid = doc.at("grid");
    int rows = grid.at("rows").get<int>();
    int cols = grid.at("cols").get<int>();
    std::string tagged = doc.at("tagged").get<std::string>();
    return from_tagged(GridSpec(rows, cols, alphabet, 1, 0), tagged);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("corpus line missing grid/tagged: ") + e.what());
  }
}

std::string format_corpus_line(const Placement& p) {
  nlohmann::ordered_json doc;
  doc["grid"] = {{"rows", p.grid().rows()}, {"cols", p.grid().cols()}};
  doc["tagged"] = to_tagged(p);
  return doc.dump();
}

std::vector<Placement> read_corpus(std::istream& in, const std::string& alphabet) {
  std::vector<Placement> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_corpus_line(line, alphabet));
    } catch (const ParseError& e) {
      throw ParseError(e.offset(), "corpus line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw ParseError(0, "corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Placement> read_corpus_file(const std::filesystem::path& path,
                                        const std::string& alphabet) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus file " + path.string());
  return read_corpus(in, alphabet);
}

nlohmann::ordered_json to_json(const ShapeClass& cls) {
  nlohmann::ordered_json out;
  out["class"] = std::string(to_string(cls.kind));
  if (cls.orientation) out["orientation"] = std::string(to_string(*cls.orientation));
  if (cls.direction_changes) out["direction_changes"] = *cls.direction_changes;
  if (cls.segment_count) out["segment_count"] = *cls.segment_count;
  return out;
}

nlohmann::ordered_json to_json(const CorpusStats& stats) {
  nlohmann::ordered_json out;
  out["rows"] = stats.rows;
  out["cols"] = stats.cols;
  out["placements"] = stats.placements;
  out["too_short"] = stats.too_short;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kAllShapeKinds.size(); ++i) {
    hist[std::string(to_string(kAllShapeKinds[i]))] = stats.class_histogram[i];
  }
  out["class_histogram"] = hist;
  out["path_starts"] = stats.path_starts;
  out["start_quadrant_fractions"] =
      stats.start_quadrant_fractions ? nlohmann::ordered_json(*stats.start_quadrant_fractions)
                                     : nlohmann::ordered_json(nullptr);
  out["edge_vs_center_fractions"] =
      stats.edge_vs_center_fractions ? nlohmann::ordered_json(*stats.edge_vs_center_fractions)
                                     : nlohmann::ordered_json(nullptr);
  out["mean_direction_changes"] = stats.mean_direction_changes
                                      ? nlohmann::ordered_json(*stats.mean_direction_changes)
                                      : nlohmann::ordered_json(nullptr);
  out["mean_segment_count"] = stats.mean_segment_count
                                  ? nlohmann::ordered_json(*stats.mean_segment_count)
                                  : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json heat = nlohmann::ordered_json::array();
  for (int r = 0; r < stats.rows; ++r) {
    auto first = stats.heatmap.begin() + static_cast<std::ptrdiff_t>(r) * stats.cols;
    heat.push_back(std::vector<long>(first, first + stats.cols));
  }
  out["heatmap"] = heat;
  return out;
}

std::string heatmap_csv(const CorpusStats& stats) {
  std::ostringstream out;
  for (int r = 0; r < stats.rows; ++r) {
    for (int c = 0; c < stats.cols; ++c) {
      if (c) out << ',';
      out << stats.heatmap[static_cast<std::size_t>(r * stats.cols + c)];
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> read_word_list(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::vector<std::string> read_word_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open word list " + path.string());
  return read_word_list(in);
}

}  // namespace spartan
