#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spartan/credential.hpp"
#include "spartan/entropy.hpp"
#include "spartan/grid.hpp"

namespace spartan {

enum class StrategyKind {
  FixedTopLeftHorizontal,     // typed eastward from the top-left cell
  HorizontalAnyStartLR,       // eastward from any cell
  HorizontalAnyStartBothDir,  // eastward or westward from any cell
  StraightAnyDirection,       // any of the eight directions from any cell
  SnakeBounded,               // any cell, direction changes <= max_turns, no revisits
  PointsCountOnly,            // arbitrary distinct cells; counted, never enumerated
};

/// Placement-expansion rule, independent of the grid it is applied to.
struct StrategyRule {
  StrategyKind kind = StrategyKind::HorizontalAnyStartLR;
  int max_turns = 0;  // SnakeBounded only

  /// "fixed-top-left", "horizontal-lr", "horizontal-both", "straight-any",
  /// "snake:K", "points".
  std::string name() const;
  /// Inverse of name(). Throws InvalidArgument.
  static StrategyRule parse(std::string_view text);

  bool operator==(const StrategyRule&) const = default;
};

struct AttackStrategy {
  StrategyRule rule;
  GridSpec grid;
};

inline constexpr std::uint64_t kDefaultSnakeBudget = 10'000'000;

/// Placements the rule tries per word before deduplication.
///
/// Horizontal and straight rules wrap, so their factor is independent of the
/// word length: 1, rows*cols, 2*rows*cols, 8*rows*cols. SnakeBounded counts
/// typing paths exactly (throws BudgetExceeded beyond `snake_budget`).
/// PointsCountOnly is perm(rows*cols, length). Throws TooLong when
/// word_length exceeds the cell count.
BigInt expansion_factor(const AttackStrategy& strategy, int word_length,
                        std::uint64_t snake_budget = kDefaultSnakeBudget);

/// Receives the canonical form of each distinct candidate.
using CandidateVisitor = std::function<void(std::string_view canonical)>;

struct GenerationTally {
  std::uint64_t raw = 0;       // typing paths simulated
  std::uint64_t distinct = 0;  // candidates emitted
};

/// Candidates whose first typed cell is `start_index` (row-major). Every
/// distinct placement is emitted by exactly one start cell, so disjoint
/// start ranges can run on different threads without sharing state.
/// Throws NonEnumerableStrategy for PointsCountOnly, BadChar for words
/// outside the alphabet, TooLong, BudgetExceeded.
GenerationTally for_each_candidate_from(const AttackStrategy& strategy, std::string_view word,
                                        int start_index, const CandidateVisitor& visit,
                                        std::uint64_t snake_budget = kDefaultSnakeBudget);

/// All start cells in order.
GenerationTally for_each_candidate(const AttackStrategy& strategy, std::string_view word,
                                   const CandidateVisitor& visit,
                                   std::uint64_t snake_budget = kDefaultSnakeBudget);

std::vector<Placement> generate_candidates(const AttackStrategy& strategy,
                                           std::string_view word,
                                           std::uint64_t snake_budget = kDefaultSnakeBudget);

/// Whether typing `word` under the strategy can produce `p`. Defined for
/// every strategy, PointsCountOnly included.
bool generates(const AttackStrategy& strategy, std::string_view word, const Placement& p);

/// Where a crack run stands: the next (record, word, strategy) unit and the
/// first start cell of it still to process.
struct Checkpoint {
  std::size_t record = 0;
  std::size_t word = 0;
  std::size_t strategy = 0;
  int start = 0;

  std::string to_string() const;  // "record:word:strategy:start"
  static Checkpoint parse(std::string_view text);

  bool operator==(const Checkpoint&) const = default;
};

struct Recovery {
  std::string username;
  std::string word;
  std::string strategy;
  Placement placement;
};

struct CrackReport {
  std::uint64_t candidates_generated = 0;  // before deduplication
  std::uint64_t hashes_computed = 0;
  std::vector<Recovery> recovered;
  double elapsed_seconds = 0;
  std::size_t records = 0;
  std::size_t words_skipped = 0;  // (record, word) pairs the grid cannot hold
  double recovery_fraction = 0;
};

struct CrackOptions {
  int workers = 1;
  std::string alphabet = default_alphabet();
  std::uint64_t snake_budget = kDefaultSnakeBudget;
  /// Skip a record's remaining work once it is recovered.
  bool stop_on_recovery = false;
  std::optional<Checkpoint> resume_from;
  /// Called after each finished (record, word, strategy) unit with the
  /// position to resume from.
  std::function<void(const Checkpoint&)> on_checkpoint;
};

/// Offline attack on a stolen credential store. Every record is attacked
/// with every dictionary word under every rule; matches are re-verified
/// before being reported. Throws EmptyDictionary, BadCredFile (a record
/// whose grid is invalid), NonEnumerableStrategy.
CrackReport crack(const std::vector<CredentialRecord>& records,
                  const std::vector<std::string>& dictionary,
                  const std::vector<StrategyRule>& rules, const CrackOptions& options = {});

struct TradeoffPoint {
  StrategyRule rule;
  BigInt dictionary_size;
  std::size_t recovered = 0;
  double recovery_fraction = 0;
};

/// Research mode over plaintext placements: for each rule, the expanded
/// dictionary size (sum of per-word expansion factors) and the fraction of
/// the corpus some expanded candidate matches. Sorted by dictionary size.
/// Throws EmptyCorpus, EmptyDictionary, GridMismatch.
std::vector<TradeoffPoint> tradeoff_curve(const std::vector<Placement>& corpus,
                                          const std::vector<std::string>& dictionary,
                                          const std::vector<StrategyRule>& rules,
                                          std::uint64_t snake_budget = kDefaultSnakeBudget);

/// `strategy,dictionary_size,recovery_fraction`
std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);

}  // namespace spartan
