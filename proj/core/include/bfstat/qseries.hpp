#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "bfstat/exact.hpp"

namespace bfstat {

// Formal polynomial or truncated power series in q with exact rational
// coefficients. Without a cutoff the value is an exact polynomial; with
// cutoff K only the coefficients of q^0 .. q^{K-1} are represented, and
// every operation propagates the smallest cutoff involved.
class QSeries {
 public:
  QSeries() = default;  // zero
  explicit QSeries(const ExactRatio& constant);
  static QSeries one() { return QSeries(ExactRatio(1)); }
  static QSeries monomial(const ExactRatio& coeff, std::int64_t exponent);

  // (q)_n = (1 - q)(1 - q^2)...(1 - q^n), optionally truncated.
  static QSeries pochhammer(std::int64_t n,
                            std::optional<std::int64_t> cutoff = {});

  const std::map<std::int64_t, ExactRatio>& coefficients() const {
    return coeff_;
  }
  std::optional<std::int64_t> cutoff() const { return cutoff_; }
  bool is_polynomial() const { return !cutoff_.has_value(); }
  bool is_zero() const { return coeff_.empty(); }
  ExactRatio coefficient(std::int64_t exponent) const;
  std::int64_t degree() const;  // -1 for the zero polynomial
  std::int64_t lowest_exponent() const;  // -1 for the zero polynomial
  ExactRatio sum_of_coefficients() const;

  QSeries truncated(std::int64_t cutoff) const;
  QSeries substituted_power(std::int64_t n) const;  // q -> q^n, n >= 1
  QSeries derivative() const;                       // d/dq, termwise
  QSeries shifted(std::int64_t e) const;            // multiply by q^e
  QSeries pow(std::int64_t k) const;                // k >= 0
  // Power-series inverse to the given cutoff; needs a nonzero constant term.
  QSeries reciprocal(std::int64_t cutoff) const;

  // Horner evaluation; requires 0 <= q0 < 1.
  double evaluate(double q0) const;

  // Exact division of polynomials; throws ConsistencyError if the quotient
  // is not a polynomial (nonzero remainder).
  static QSeries divide_exact(const QSeries& numerator,
                              const QSeries& denominator);

  // "1 + 3/2 q + 2 q^3", plus " + O(q^K)" when truncated; "0" when zero.
  std::string to_text() const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const ExactRatio& c, const QSeries& a);
  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const QSeries& o);

  // Equal coefficients and equal cutoff state.
  friend bool operator==(const QSeries& a, const QSeries& b);

 private:
  void prune();

  std::map<std::int64_t, ExactRatio> coeff_;
  std::optional<std::int64_t> cutoff_;
};

// Coefficientwise equality, ignoring cutoff bookkeeping.
bool same_coefficients(const QSeries& a, const QSeries& b);

// A ratio of two series, kept unreduced. Used where occupancies are exact
// rational functions of q.
struct QSeriesRatio {
  QSeries numerator;
  QSeries denominator;
};

// Cross-multiplied equality: a.num * b.den == b.num * a.den.
bool ratios_equal(const QSeriesRatio& a, const QSeriesRatio& b);

}  // namespace bfstat
