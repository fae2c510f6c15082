#include "spartan/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "spartan/error.hpp"

namespace spartan {

BigInt perm_count(int n, int k) {
  if (n < 0 || k < 0) {
    throw Error(ErrorCode::InvalidArgument, "perm_count needs non-negative n and k");
  }
  if (k > n) {
    throw Error(ErrorCode::KExceedsN, "perm_count: k exceeds n");
  }
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= (n - i);
  return out;
}

double log2_big(const BigInt& value) {
  if (value <= 0) {
    throw Error(ErrorCode::InvalidArgument, "log2 of a non-positive value");
  }
  const auto msb = static_cast<long>(boost::multiprecision::msb(value));
  const long shift = msb > 62 ? msb - 62 : 0;
  const BigInt top = value >> shift;
  return static_cast<double>(shift) + std::log2(top.convert_to<double>());
}

namespace {

void check_alphabet(int alphabet_size) {
  if (alphabet_size < 2) {
    throw Error(ErrorCode::InvalidArgument, "alphabet size must be at least 2");
  }
}

void check_length(int length) {
  if (length < 0) throw Error(ErrorCode::InvalidArgument, "length must be non-negative");
}

}  // namespace

double linear_space_bits(int alphabet_size, int length) {
  check_alphabet(alphabet_size);
  check_length(length);
  return length * std::log2(static_cast<double>(alphabet_size));
}

double spartan_space_bits(int alphabet_size, int length, int cells) {
  check_alphabet(alphabet_size);
  check_length(length);
  if (length > cells) {
    throw Error(ErrorCode::LengthExceedsCells, "password longer than the grid");
  }
  return linear_space_bits(alphabet_size, length) + log2_big(perm_count(cells, length));
}

double char_entropy_at(int position) {
  if (position < 1) return 0.0;
  if (position == 1) return 4.0;
  if (position <= 8) return 2.0;
  if (position <= 20) return 1.5;
  return 1.0;
}

double cell_entropy_at(int position) {
  if (position < 1) return 0.0;
  if (position == 1) return 5.0;
  if (position == 2) return 2.5;
  if (position <= 12) return 1.0;
  return 0.0;
}

double user_linear_entropy(int length) {
  check_length(length);
  double bits = 0;
  for (int i = 1; i <= length; ++i) bits += char_entropy_at(i);
  return bits;
}

double user_spartan_entropy(int length) {
  check_length(length);
  double bits = user_linear_entropy(length);
  for (int i = 1; i <= length; ++i) bits += cell_entropy_at(i);
  return bits;
}

double random_entropy(int alphabet_size, int length, std::optional<int> cells) {
  if (cells) return spartan_space_bits(alphabet_size, length, *cells);
  return linear_space_bits(alphabet_size, length);
}

double eq1_entropy(const AttackModel& model) {
  if (model.space < 1) {
    throw Error(ErrorCode::InvalidArgument, "dictionary size must be at least 1");
  }
  if (!(model.likelihood > 0.0 && model.likelihood <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "likelihood must be in (0, 1]");
  }
  return log2_big(model.space) - 1.0 - std::log2(model.likelihood);
}

std::vector<CurveRow> entropy_curve(int max_length, const CurveConfig& config) {
  if (max_length < 1) {
    throw Error(ErrorCode::InvalidArgument, "max_length must be at least 1");
  }
  if (max_length > config.cells) {
    throw Error(ErrorCode::LengthExceedsCells, "max_length exceeds the cell count");
  }
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(max_length));
  for (int n = 1; n <= max_length; ++n) {
    rows.push_back({n, user_linear_entropy(n), user_spartan_entropy(n),
                    random_entropy(config.alphabet_size, n),
                    random_entropy(config.alphabet_size, n, config.cells)});
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream out;
  out << "length,user_linear,user_spartan,random_linear,random_spartan\n";
  for (const CurveRow& r : rows) {
    out << r.length << ',' << format_bits(r.user_linear) << ','
        << format_bits(r.user_spartan) << ',' << format_bits(r.random_linear) << ','
        << format_bits(r.random_spartan) << '\n';
  }
  return out.str();
}

long round_half_up(double bits) { return static_cast<long>(std::floor(bits + 0.5)); }

std::string format_bits(double bits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", bits);
  return buf;
}

std::string to_scientific(const BigInt& value, int significant) {
  if (significant < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one significant digit");
  }
  std::string digits = (value < 0 ? BigInt(-value) : value).str();
  const auto exponent = static_cast<long>(digits.size()) - 1;
  std::string out = value < 0 ? "-" : "";
  out += digits[0];
  if (significant > 1) {
    out += '.';
    for (int i = 1; i < significant; ++i) {
      out += static_cast<std::size_t>(i) < digits.size() ? digits[static_cast<std::size_t>(i)] : '0';
    }
  }
  out += exponent < 10 ? "E+0" : "E+";
  out += std::to_string(exponent);
  return out;
}

}  // namespace spartan
