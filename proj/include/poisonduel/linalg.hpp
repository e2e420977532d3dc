#pragma once

// Exact linear solves for the small systems that arise in support
// enumeration and security-level vertex enumeration.
//
// Rows are first scaled to integers, then reduced to row-echelon form with
// Bareiss' fraction-free elimination: every intermediate entry is a minor of
// the scaled system, so each division below is exact and numbers stay as
// small as determinants allow. Only the final back substitution leaves the
// integers.

#include <poisonduel/rational.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace poisonduel::linalg {

enum class SolutionKind { Unique, Family, Inconsistent };

struct LinearSolution {
  SolutionKind kind = SolutionKind::Inconsistent;
  RationalVector x;          // populated iff kind == Unique
  std::size_t rank = 0;
  std::size_t nullity = 0;   // unknowns - rank, meaningful unless Inconsistent
};

namespace detail {

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return boost::multiprecision::lcm(a, b);
}

using IntegerMatrix = std::vector<std::vector<Integer>>;

// Scales each row of [a | b] by the lcm of its denominators.
inline IntegerMatrix integer_augmented(const RationalMatrix& a, const RationalVector& b) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  IntegerMatrix m(a.rows(), std::vector<Integer>(a.cols() + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Integer scale = denominator(b[i]);
    for (std::size_t j = 0; j < a.cols(); ++j) scale = lcm(scale, denominator(a(i, j)));
    for (std::size_t j = 0; j < a.cols(); ++j) {
      m[i][j] = numerator(a(i, j)) * (scale / denominator(a(i, j)));
    }
    m[i][a.cols()] = numerator(b[i]) * (scale / denominator(b[i]));
  }
  return m;
}

}  // namespace detail

/// Solves a x = b exactly. Works for any shape; over- and under-determined
/// systems are classified rather than rejected.
inline LinearSolution solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw InputError("solve: rhs length does not match matrix rows");
  const std::size_t rows = a.rows();
  const std::size_t unknowns = a.cols();
  auto m = detail::integer_augmented(a, b);

  Integer prev_pivot = 1;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < unknowns && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) std::swap(m[p], m[r]);
    const Integer& pivot = m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j <= unknowns; ++j) {
        m[i][j] = (pivot * m[i][j] - m[i][c] * m[r][j]) / prev_pivot;
      }
      m[i][c] = 0;
    }
    prev_pivot = pivot;
    pivot_cols.push_back(c);
    ++r;
  }

  LinearSolution out;
  out.rank = r;
  for (std::size_t i = r; i < rows; ++i) {
    if (m[i][unknowns] != 0) {
      out.kind = SolutionKind::Inconsistent;
      return out;
    }
  }
  out.nullity = unknowns - r;
  if (out.nullity > 0) {
    out.kind = SolutionKind::Family;
    return out;
  }

  out.kind = SolutionKind::Unique;
  out.x.assign(unknowns, Rational(0));
  for (std::size_t k = r; k-- > 0;) {
    const std::size_t c = pivot_cols[k];
    Rational acc(m[k][unknowns]);
    for (std::size_t j = c + 1; j < unknowns; ++j) acc -= Rational(m[k][j]) * out.x[j];
    out.x[c] = acc / Rational(m[k][c]);
  }
  return out;
}

/// Rank of a rational matrix.
inline std::size_t rank(const RationalMatrix& a) {
  return solve(a, RationalVector(a.rows(), Rational(0))).rank;
}

}  // namespace poisonduel::linalg
