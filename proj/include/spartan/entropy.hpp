#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace spartan {

using BigInt = boost::multiprecision::cpp_int;

/// n! / (n - k)!, exact. Throws KExceedsN when k > n.
BigInt perm_count(int n, int k);

/// log2 of a positive big integer, accurate to double precision at any size.
double log2_big(const BigInt& value);

/// length * log2(alphabet_size): the space of random linear passwords.
double linear_space_bits(int alphabet_size, int length);

/// Random linear space plus log2(perm(cells, length)) for the choice of
/// distinct ordered cells. Throws LengthExceedsCells.
double spartan_space_bits(int alphabet_size, int length, int cells);

/// Bits credited to the character at 1-based `position`: 4 for the first,
/// 2 for the 2nd..8th, 1.5 for the 9th..20th, 1 afterwards.
double char_entropy_at(int position);
/// Bits credited to the cell at 1-based `position`: 5, then 2.5, then 1 for
/// cells 3..12, nothing past the 12th.
double cell_entropy_at(int position);

/// Cumulative character schedule for a human-chosen linear password.
double user_linear_entropy(int length);
/// Character schedule plus cell schedule over the same count.
double user_spartan_entropy(int length);

/// Random password entropy; with `cells` set, the location choice is added.
double random_entropy(int alphabet_size, int length, std::optional<int> cells = std::nullopt);

/// Dictionary of `space` candidates that holds the password with probability
/// `likelihood`.
struct AttackModel {
  BigInt space = 1;
  double likelihood = 1.0;
};

/// log2(S / 2L).
double eq1_entropy(const AttackModel& model);

struct CurveConfig {
  int alphabet_size = 95;  // random-password alphabet
  int cells = 144;
};

struct CurveRow {
  int length = 0;
  double user_linear = 0;
  double user_spartan = 0;
  double random_linear = 0;
  double random_spartan = 0;
};

/// Rows for lengths 1..max_length. Throws LengthExceedsCells if
/// max_length > config.cells.
std::vector<CurveRow> entropy_curve(int max_length, const CurveConfig& config = {});

/// `length,user_linear,user_spartan,random_linear,random_spartan` with
/// values at two decimals.
std::string curve_csv(const std::vector<CurveRow>& rows);

/// Round half up to an integer.
long round_half_up(double bits);
/// Two decimals.
std::string format_bits(double bits);
/// Mantissa truncated (not rounded) to `significant` digits, e.g. "2.78E+21".
std::string to_scientific(const BigInt& value, int significant = 3);

}  // namespace spartan
