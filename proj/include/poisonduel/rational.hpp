#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poisonduel {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown for malformed user input: bad references, shape mismatches,
/// unparsable files. Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a request is well formed but exceeds a configured capability
/// (e.g. an oversized game). Maps to CLI exit code 3.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long long num, long long den = 1) {
  if (den == 0) throw InputError("zero denominator");
  return Rational(Integer(num), Integer(den));
}

/// Canonical "p/q" form. Integers are written with an explicit "/1".
inline std::string to_pq(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  return numerator(r).str() + "/" + denominator(r).str();
}

/// Accepts "p/q", "p" and "-p/q". Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw InputError("bad rational: '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw InputError("bad rational: '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InputError("bad rational: '" + std::string(text) + "'");
    }
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw InputError("bad rational: '" + std::string(text) + "'");
  }
  Integer den = parse_int(den_text);
  if (den == 0) throw InputError("bad rational: zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols, const Rational& fill = Rational(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
    RationalMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace poisonduel
