#include "spartan/cracker.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "spartan/codec.hpp"
#include "spartan/error.hpp"
#include "spartan/kdf.hpp"

namespace spartan {

std::string StrategyRule::name() const {
  switch (kind) {
    case StrategyKind::FixedTopLeftHorizontal: return "fixed-top-left";
    case StrategyKind::HorizontalAnyStartLR: return "horizontal-lr";
    case StrategyKind::HorizontalAnyStartBothDir: return "horizontal-both";
    case StrategyKind::StraightAnyDirection: return "straight-any";
    case StrategyKind::SnakeBounded: return "snake:" + std::to_string(max_turns);
    case StrategyKind::PointsCountOnly: return "points";
  }
  return "unknown";
}

StrategyRule StrategyRule::parse(std::string_view text) {
  if (text == "fixed-top-left") return {StrategyKind::FixedTopLeftHorizontal, 0};
  if (text == "horizontal-lr") return {StrategyKind::HorizontalAnyStartLR, 0};
  if (text == "horizontal-both") return {StrategyKind::HorizontalAnyStartBothDir, 0};
  if (text == "straight-any") return {StrategyKind::StraightAnyDirection, 0};
  if (text == "points") return {StrategyKind::PointsCountOnly, 0};
  if (text.starts_with("snake:")) {
    std::string_view digits = text.substr(6);
    int turns = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), turns);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && turns >= 0) {
      return {StrategyKind::SnakeBounded, turns};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(text) + "'");
}

std::string Checkpoint::to_string() const {
  return std::to_string(record) + ':' + std::to_string(word) + ':' +
         std::to_string(strategy) + ':' + std::to_string(start);
}

Checkpoint Checkpoint::parse(std::string_view text) {
  Checkpoint cp;
  std::size_t fields[4] = {};
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    std::size_t end = i < 3 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) {
      throw Error(ErrorCode::InvalidArgument, "checkpoint must be record:word:strategy:start");
    }
    auto part = text.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), fields[i]);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty()) {
      throw Error(ErrorCode::InvalidArgument, "checkpoint field is not a number");
    }
    pos = end + 1;
  }
  cp.record = fields[0];
  cp.word = fields[1];
  cp.strategy = fields[2];
  cp.start = static_cast<int>(fields[3]);
  return cp;
}

namespace {

// Row-major cell buffer holding the canonical form being built.
class Canvas {
 public:
  explicit Canvas(int cells) : buf_(static_cast<std::size_t>(cells), ' ') {}

  void clear() {
    for (int i : touched_) buf_[static_cast<std::size_t>(i)] = ' ';
    touched_.clear();
  }
  void put(int index, char ch) {
    auto& slot = buf_[static_cast<std::size_t>(index)];
    if (slot == ' ') touched_.push_back(index);
    slot = ch;
  }
  void erase(int index) {
    buf_[static_cast<std::size_t>(index)] = ' ';
    touched_.erase(std::find(touched_.begin(), touched_.end(), index));
  }
  char at(int index) const { return buf_[static_cast<std::size_t>(index)]; }
  const std::string& str() const { return buf_; }
  std::vector<int> sorted_cells() const {
    std::vector<int> out = touched_;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::string buf_;
  std::vector<int> touched_;
};

std::vector<Direction> straight_directions(StrategyKind k) {
  switch (k) {
    case StrategyKind::FixedTopLeftHorizontal:
    case StrategyKind::HorizontalAnyStartLR: return {Direction::E};
    case StrategyKind::HorizontalAnyStartBothDir: return {Direction::E, Direction::W};
    case StrategyKind::StraightAnyDirection:
      return {kAllDirections.begin(), kAllDirections.end()};
    default: return {};
  }
}

void check_word(const GridSpec& g, std::string_view word) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "empty word");
  if (word.size() > static_cast<std::size_t>(g.cell_count())) {
    throw Error(ErrorCode::TooLong, "word longer than the grid has cells");
  }
  for (char ch : word) {
    if (!g.allows(ch)) {
      throw Error(ErrorCode::BadChar, std::string("character '") + ch + "' not in alphabet");
    }
  }
}

bool word_fits(const GridSpec& g, std::string_view word) {
  if (word.empty() || word.size() > static_cast<std::size_t>(g.cell_count())) return false;
  return std::all_of(word.begin(), word.end(), [&](char ch) { return g.allows(ch); });
}

// Typing with overwrite, exactly as an entry session would.
void type_straight(const GridSpec& g, int start, Direction d, std::string_view word,
                   Canvas& canvas) {
  canvas.clear();
  Coord cur = g.coord_at(start);
  for (char ch : word) {
    canvas.put(g.index_of(cur), ch);
    cur = advance(g, cur, d);
  }
}

// First (start, direction) in enumeration order whose typing reproduces
// `target`. Starts are limited to occupied cells, since the first typed
// cell always stays occupied.
std::optional<std::pair<int, std::size_t>> first_straight(const GridSpec& g, StrategyKind kind,
                                                          std::string_view word,
                                                          const Canvas& target,
                                                          Canvas& scratch) {
  const auto dirs = straight_directions(kind);
  for (int s : target.sorted_cells()) {
    if (kind == StrategyKind::FixedTopLeftHorizontal && s != 0) break;
    if (target.at(s) == ' ') continue;
    for (std::size_t di = 0; di < dirs.size(); ++di) {
      type_straight(g, s, dirs[di], word, scratch);
      if (scratch.str() == target.str()) return std::pair{s, di};
    }
  }
  return std::nullopt;
}

struct SnakeDescriptor {
  int start = 0;
  std::vector<int> dirs;  // direction indices, one per step

  bool operator==(const SnakeDescriptor&) const = default;
};

// Lexicographically first typing path for `word` that lands exactly on the
// characters of `target` with at most `max_turns` direction changes.
class SnakeMatcher {
 public:
  SnakeMatcher(const GridSpec& g, std::string_view word, int max_turns, const Canvas& target)
      : g_(g), word_(word), max_turns_(max_turns), target_(target),
        used_(static_cast<std::size_t>(g.cell_count()), false) {}

  std::optional<SnakeDescriptor> first() {
    for (int s : target_.sorted_cells()) {
      if (target_.at(s) != word_[0]) continue;
      found_ = SnakeDescriptor{s, {}};
      used_[static_cast<std::size_t>(s)] = true;
      bool ok = search(g_.coord_at(s), 1, -1, 0);
      used_[static_cast<std::size_t>(s)] = false;
      if (ok) return found_;
    }
    return std::nullopt;
  }

 private:
  bool search(Coord cur, std::size_t depth, int last_dir, int turns) {
    if (depth == word_.size()) return true;
    for (int di = 0; di < 8; ++di) {
      int t = turns + ((last_dir >= 0 && di != last_dir) ? 1 : 0);
      if (t > max_turns_) continue;
      Coord next = advance(g_, cur, kAllDirections[static_cast<std::size_t>(di)]);
      int idx = g_.index_of(next);
      if (used_[static_cast<std::size_t>(idx)] || target_.at(idx) != word_[depth]) continue;
      used_[static_cast<std::size_t>(idx)] = true;
      found_.dirs.push_back(di);
      bool ok = search(next, depth + 1, di, t);
      used_[static_cast<std::size_t>(idx)] = false;
      if (ok) return true;
      found_.dirs.pop_back();
    }
    return false;
  }

  const GridSpec& g_;
  std::string_view word_;
  int max_turns_;
  const Canvas& target_;
  std::vector<bool> used_;
  SnakeDescriptor found_;
};

// Enumerates typing paths without revisits from one start cell.
class SnakeWalker {
 public:
  SnakeWalker(const GridSpec& g, std::string_view word, int max_turns, std::uint64_t budget,
              const CandidateVisitor& visit)
      : g_(g), word_(word), max_turns_(max_turns), budget_(budget), visit_(visit),
        canvas_(g.cell_count()) {}

  GenerationTally run(int start) {
    current_ = SnakeDescriptor{start, {}};
    canvas_.clear();
    canvas_.put(start, word_[0]);
    walk(g_.coord_at(start), 1, -1, 0);
    return tally_;
  }

 private:
  void walk(Coord cur, std::size_t depth, int last_dir, int turns) {
    if (depth == word_.size()) {
      if (++tally_.raw > budget_) {
        throw Error(ErrorCode::BudgetExceeded, "snake enumeration exceeded its candidate budget");
      }
      SnakeMatcher matcher(g_, word_, max_turns_, canvas_);
      if (matcher.first() == current_) {
        ++tally_.distinct;
        if (visit_) visit_(canvas_.str());
      }
      return;
    }
    for (int di = 0; di < 8; ++di) {
      int t = turns + ((last_dir >= 0 && di != last_dir) ? 1 : 0);
      if (t > max_turns_) continue;
      Coord next = advance(g_, cur, kAllDirections[static_cast<std::size_t>(di)]);
      int idx = g_.index_of(next);
      if (canvas_.at(idx) != ' ') continue;
      canvas_.put(idx, word_[depth]);
      current_.dirs.push_back(di);
      walk(next, depth + 1, di, t);
      current_.dirs.pop_back();
      canvas_.erase(idx);
    }
  }

  const GridSpec& g_;
  std::string_view word_;
  int max_turns_;
  std::uint64_t budget_;
  const CandidateVisitor& visit_;
  Canvas canvas_;
  SnakeDescriptor current_;
  GenerationTally tally_;
};

// Typing paths of `length` cells from one start, no revisits.
class SnakeCounter {
 public:
  SnakeCounter(const GridSpec& g, int length, int max_turns, std::uint64_t limit)
      : g_(g), length_(length), max_turns_(max_turns), limit_(limit),
        used_(static_cast<std::size_t>(g.cell_count()), false) {}

  std::uint64_t count_from(int start) {
    used_[static_cast<std::size_t>(start)] = true;
    walk(g_.coord_at(start), 1, -1, 0);
    used_[static_cast<std::size_t>(start)] = false;
    return count_;
  }

 private:
  void walk(Coord cur, int depth, int last_dir, int turns) {
    if (depth == length_) {
      if (++count_ > limit_) {
        throw Error(ErrorCode::BudgetExceeded, "snake enumeration exceeded its candidate budget");
      }
      return;
    }
    for (int di = 0; di < 8; ++di) {
      int t = turns + ((last_dir >= 0 && di != last_dir) ? 1 : 0);
      if (t > max_turns_) continue;
      Coord next = advance(g_, cur, kAllDirections[static_cast<std::size_t>(di)]);
      auto idx = static_cast<std::size_t>(g_.index_of(next));
      if (used_[idx]) continue;
      used_[idx] = true;
      walk(next, depth + 1, di, t);
      used_[idx] = false;
    }
  }

  const GridSpec& g_;
  int length_;
  int max_turns_;
  std::uint64_t limit_;
  std::vector<bool> used_;
  std::uint64_t count_ = 0;
};

}  // namespace

BigInt expansion_factor(const AttackStrategy& strategy, int word_length,
                        std::uint64_t snake_budget) {
  const GridSpec& g = strategy.grid;
  const int cells = g.cell_count();
  if (word_length < 1) throw Error(ErrorCode::InvalidArgument, "word length must be positive");
  if (word_length > cells) throw Error(ErrorCode::TooLong, "word longer than the grid has cells");

  switch (strategy.rule.kind) {
    case StrategyKind::FixedTopLeftHorizontal: return 1;
    case StrategyKind::HorizontalAnyStartLR: return cells;
    case StrategyKind::HorizontalAnyStartBothDir: return BigInt(2) * cells;
    case StrategyKind::StraightAnyDirection: return BigInt(8) * cells;
    case StrategyKind::PointsCountOnly: return perm_count(cells, word_length);
    case StrategyKind::SnakeBounded: {
      // Wrapping makes every start cell equivalent, so one start suffices.
      SnakeCounter counter(g, word_length, strategy.rule.max_turns,
                           snake_budget / static_cast<std::uint64_t>(cells));
      return BigInt(counter.count_from(0)) * cells;
    }
  }
  return 0;
}

GenerationTally for_each_candidate_from(const AttackStrategy& strategy, std::string_view word,
                                        int start_index, const CandidateVisitor& visit,
                                        std::uint64_t snake_budget) {
  const GridSpec& g = strategy.grid;
  const StrategyKind kind = strategy.rule.kind;
  if (kind == StrategyKind::PointsCountOnly) {
    throw Error(ErrorCode::NonEnumerableStrategy, "points strategy is counted, not enumerated");
  }
  check_word(g, word);
  if (start_index < 0 || start_index >= g.cell_count()) {
    throw Error(ErrorCode::OutOfBounds, "start cell outside the grid");
  }

  if (kind == StrategyKind::SnakeBounded) {
    return SnakeWalker(g, word, strategy.rule.max_turns, snake_budget, visit).run(start_index);
  }

  GenerationTally tally;
  if (kind == StrategyKind::FixedTopLeftHorizontal && start_index != 0) return tally;
  const auto dirs = straight_directions(kind);
  Canvas candidate(g.cell_count());
  Canvas scratch(g.cell_count());
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    type_straight(g, start_index, dirs[di], word, candidate);
    ++tally.raw;
    auto owner = first_straight(g, kind, word, candidate, scratch);
    if (owner && owner->first == start_index && owner->second == di) {
      ++tally.distinct;
      if (visit) visit(candidate.str());
    }
  }
  return tally;
}

GenerationTally for_each_candidate(const AttackStrategy& strategy, std::string_view word,
                                   const CandidateVisitor& visit, std::uint64_t snake_budget) {
  GenerationTally total;
  for (int s = 0; s < strategy.grid.cell_count(); ++s) {
    std::uint64_t remaining = snake_budget - total.raw;
    GenerationTally t = for_each_candidate_from(strategy, word, s, visit, remaining);
    total.raw += t.raw;
    total.distinct += t.distinct;
  }
  return total;
}

std::vector<Placement> generate_candidates(const AttackStrategy& strategy,
                                           std::string_view word, std::uint64_t snake_budget) {
  std::vector<Placement> out;
  for_each_candidate(
      strategy, word,
      [&](std::string_view canonical) { out.push_back(from_canonical(strategy.grid, canonical)); },
      snake_budget);
  return out;
}

bool generates(const AttackStrategy& strategy, std::string_view word, const Placement& p) {
  const GridSpec& g = strategy.grid;
  if (p.grid().rows() != g.rows() || p.grid().cols() != g.cols()) return false;
  if (!word_fits(g, word) || p.empty()) return false;

  const StrategyKind kind = strategy.rule.kind;
  if (kind == StrategyKind::PointsCountOnly) {
    if (p.size() != word.size()) return false;
    std::string placed;
    for (const Entry& e : p.entries()) placed.push_back(e.ch);
    std::string wanted(word);
    std::sort(placed.begin(), placed.end());
    std::sort(wanted.begin(), wanted.end());
    return placed == wanted;
  }

  Canvas target(g.cell_count());
  for (const Entry& e : p.entries()) target.put(g.index_of(e.cell), e.ch);

  if (kind == StrategyKind::SnakeBounded) {
    if (p.size() != word.size()) return false;
    return SnakeMatcher(g, word, strategy.rule.max_turns, target).first().has_value();
  }
  if (p.size() > word.size()) return false;
  Canvas scratch(g.cell_count());
  return first_straight(g, kind, word, target, scratch).has_value();
}

namespace {

struct WorkerTally {
  std::uint64_t raw = 0;
  std::uint64_t hashes = 0;
  std::vector<std::string> matches;
};

WorkerTally attack_starts(const AttackStrategy& strategy, std::string_view word,
                          const CredentialRecord& rec, std::atomic<int>& next_start,
                          std::uint64_t snake_budget) {
  WorkerTally tally;
  const int cells = strategy.grid.cell_count();
  for (int s = next_start.fetch_add(1); s < cells; s = next_start.fetch_add(1)) {
    GenerationTally t = for_each_candidate_from(
        strategy, word, s,
        [&](std::string_view canonical) {
          ++tally.hashes;
          HashBytes h = hash_bytes(canonical, rec.salt, rec.kdf);
          if (constant_time_equal(h, rec.hash)) tally.matches.emplace_back(canonical);
        },
        snake_budget);
    tally.raw += t.raw;
  }
  return tally;
}

}  // namespace

CrackReport crack(const std::vector<CredentialRecord>& records,
                  const std::vector<std::string>& dictionary,
                  const std::vector<StrategyRule>& rules, const CrackOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (dictionary.empty()) throw Error(ErrorCode::EmptyDictionary, "dictionary is empty");
  for (const StrategyRule& rule : rules) {
    if (rule.kind == StrategyKind::PointsCountOnly) {
      throw Error(ErrorCode::NonEnumerableStrategy, "points strategy cannot drive a crack");
    }
  }

  std::vector<GridSpec> grids;
  grids.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    try {
      grids.push_back(records[i].grid.to_grid(options.alphabet));
      validate(records[i].kdf);
    } catch (const Error& e) {
      throw Error(ErrorCode::BadCredFile,
                  "record " + std::to_string(i) + " (" + records[i].username + "): " + e.what());
    }
  }

  CrackReport report;
  report.records = records.size();
  std::vector<bool> recovered(records.size(), false);
  const int workers = std::max(1, options.workers);
  std::map<std::tuple<int, int, std::size_t, int>, bool> snake_checked;

  for (std::size_t r = 0; r < records.size(); ++r) {
    const CredentialRecord& rec = records[r];
    const GridSpec& grid = grids[r];
    for (std::size_t w = 0; w < dictionary.size(); ++w) {
      const std::string& word = dictionary[w];
      const bool fits = word_fits(grid, word);
      if (!fits) ++report.words_skipped;
      for (std::size_t k = 0; k < rules.size(); ++k) {
        Checkpoint here{r, w, k, 0};
        if (options.resume_from &&
            std::tie(here.record, here.word, here.strategy) <
                std::tie(options.resume_from->record, options.resume_from->word,
                         options.resume_from->strategy)) {
          continue;
        }
        int first_start = 0;
        if (options.resume_from && here.record == options.resume_from->record &&
            here.word == options.resume_from->word &&
            here.strategy == options.resume_from->strategy) {
          first_start = options.resume_from->start;
        }

        const bool skip = !fits || (options.stop_on_recovery && recovered[r]);
        if (!skip) {
          AttackStrategy strategy{rules[k], grid};
          if (rules[k].kind == StrategyKind::SnakeBounded) {
            auto key = std::tuple{grid.rows(), grid.cols(), word.size(), rules[k].max_turns};
            if (!snake_checked.contains(key)) {
              expansion_factor(strategy, static_cast<int>(word.size()), options.snake_budget);
              snake_checked[key] = true;
            }
          }

          std::atomic<int> next_start{first_start};
          std::vector<WorkerTally> tallies(static_cast<std::size_t>(workers));
          if (workers == 1) {
            tallies[0] = attack_starts(strategy, word, rec, next_start, options.snake_budget);
          } else {
            std::vector<std::jthread> pool;
            std::mutex error_mutex;
            std::exception_ptr error;
            for (int i = 0; i < workers; ++i) {
              pool.emplace_back([&, i] {
                try {
                  tallies[static_cast<std::size_t>(i)] =
                      attack_starts(strategy, word, rec, next_start, options.snake_budget);
                } catch (...) {
                  std::lock_guard lock(error_mutex);
                  if (!error) error = std::current_exception();
                  next_start.store(grid.cell_count());
                }
              });
            }
            pool.clear();
            if (error) std::rethrow_exception(error);
          }

          for (const WorkerTally& t : tallies) {
            report.candidates_generated += t.raw;
            report.hashes_computed += t.hashes;
            for (const std::string& canonical : t.matches) {
              if (recovered[r]) break;
              Placement p = from_canonical(grid, canonical);
              if (!verify(p, rec)) continue;
              recovered[r] = true;
              report.recovered.push_back({rec.username, word, rules[k].name(), std::move(p)});
            }
          }
        }

        if (options.on_checkpoint) {
          Checkpoint next = here;
          if (++next.strategy == rules.size()) {
            next.strategy = 0;
            if (++next.word == dictionary.size()) {
              next.word = 0;
              ++next.record;
            }
          }
          options.on_checkpoint(next);
        }
      }
    }
  }

  report.recovery_fraction =
      records.empty() ? 0.0
                      : static_cast<double>(report.recovered.size()) /
                            static_cast<double>(records.size());
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<Placement>& corpus,
                                          const std::vector<std::string>& dictionary,
                                          const std::vector<StrategyRule>& rules,
                                          std::uint64_t snake_budget) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus is empty");
  if (dictionary.empty()) throw Error(ErrorCode::EmptyDictionary, "dictionary is empty");
  const GridSpec& grid = corpus.front().grid();
  for (const Placement& p : corpus) {
    if (p.grid().rows() != grid.rows() || p.grid().cols() != grid.cols()) {
      throw Error(ErrorCode::GridMismatch, "corpus mixes grid dimensions");
    }
  }

  std::vector<std::string> usable;
  for (const std::string& w : dictionary) {
    if (word_fits(grid, w)) usable.push_back(w);
  }

  std::vector<TradeoffPoint> points;
  for (const StrategyRule& rule : rules) {
    AttackStrategy strategy{rule, grid};
    TradeoffPoint point{rule, 0, 0, 0.0};
    std::map<std::size_t, BigInt> factor_by_length;
    for (const std::string& w : usable) {
      auto it = factor_by_length.find(w.size());
      if (it == factor_by_length.end()) {
        it = factor_by_length
                 .emplace(w.size(), expansion_factor(strategy, static_cast<int>(w.size()),
                                                     snake_budget))
                 .first;
      }
      point.dictionary_size += it->second;
    }
    for (const Placement& p : corpus) {
      bool hit = std::any_of(usable.begin(), usable.end(),
                             [&](const std::string& w) { return generates(strategy, w, p); });
      if (hit) ++point.recovered;
    }
    point.recovery_fraction =
        static_cast<double>(point.recovered) / static_cast<double>(corpus.size());
    points.push_back(std::move(point));
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const TradeoffPoint& a, const TradeoffPoint& b) {
                     return a.dictionary_size < b.dictionary_size;
                   });
  return points;
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
  std::ostringstream out;
  out << "strategy,dictionary_size,recovery_fraction\n";
  for (const TradeoffPoint& p : points) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.6f", p.recovery_fraction);
    out << p.rule.name() << ',' << p.dictionary_size.str() << ',' << frac << '\n';
  }
  return out.str();
}

}  // namespace spartan
