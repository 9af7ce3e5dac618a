#include "bfstat/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bfstat/errors.hpp"

namespace bfstat {

namespace {

std::optional<std::int64_t> min_cutoff(std::optional<std::int64_t> a,
                                       std::optional<std::int64_t> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

}  // namespace

QSeries::QSeries(const ExactRatio& constant) {
  if (constant != 0) coeff_[0] = constant;
}

QSeries QSeries::monomial(const ExactRatio& coeff, std::int64_t exponent) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  QSeries s;
  if (coeff != 0) s.coeff_[exponent] = coeff;
  return s;
}

ExactRatio QSeries::coefficient(std::int64_t exponent) const {
  auto it = coeff_.find(exponent);
  return it == coeff_.end() ? ExactRatio(0) : it->second;
}

std::int64_t QSeries::degree() const {
  return coeff_.empty() ? -1 : coeff_.rbegin()->first;
}

std::int64_t QSeries::lowest_exponent() const {
  return coeff_.empty() ? -1 : coeff_.begin()->first;
}

ExactRatio QSeries::sum_of_coefficients() const {
  ExactRatio total(0);
  for (const auto& [e, c] : coeff_) total += c;
  return total;
}

void QSeries::prune() {
  for (auto it = coeff_.begin(); it != coeff_.end();) {
    if (it->second == 0 || (cutoff_ && it->first >= *cutoff_))
      it = coeff_.erase(it);
    else
      ++it;
  }
}

QSeries QSeries::truncated(std::int64_t cutoff) const {
  if (cutoff < 0) throw std::invalid_argument("negative cutoff");
  QSeries out = *this;
  out.cutoff_ = cutoff_ ? std::min(*cutoff_, cutoff) : cutoff;
  out.prune();
  return out;
}

QSeries QSeries::substituted_power(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("substituted_power needs n >= 1");
  QSeries out;
  for (const auto& [e, c] : coeff_) out.coeff_[e * n] = c;
  // Exponents that are not multiples of n are exactly zero below n * cutoff.
  if (cutoff_) out.cutoff_ = *cutoff_ * n;
  return out;
}

QSeries QSeries::derivative() const {
  QSeries out;
  for (const auto& [e, c] : coeff_) {
    if (e == 0) continue;
    out.coeff_[e - 1] = ExactRatio(e) * c;
  }
  if (cutoff_) {
    out.cutoff_ = std::max<std::int64_t>(*cutoff_ - 1, 0);
    out.prune();
  }
  return out;
}

QSeries QSeries::shifted(std::int64_t e) const {
  if (e < 0) throw std::invalid_argument("negative shift");
  QSeries out;
  for (const auto& [k, c] : coeff_) out.coeff_[k + e] = c;
  if (cutoff_) out.cutoff_ = *cutoff_ + e;
  return out;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  QSeries out = a;
  out.cutoff_ = min_cutoff(a.cutoff_, b.cutoff_);
  for (const auto& [e, c] : b.coeff_) {
    auto [it, inserted] = out.coeff_.emplace(e, c);
    if (!inserted) it->second += c;
  }
  out.prune();
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries QSeries::operator-() const {
  QSeries out = *this;
  for (auto& [e, c] : out.coeff_) c = -c;
  return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  QSeries out;
  out.cutoff_ = min_cutoff(a.cutoff_, b.cutoff_);
  for (const auto& [ea, ca] : a.coeff_) {
    if (out.cutoff_ && ea >= *out.cutoff_) break;
    for (const auto& [eb, cb] : b.coeff_) {
      std::int64_t e = ea + eb;
      if (out.cutoff_ && e >= *out.cutoff_) break;
      auto [it, inserted] = out.coeff_.emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  out.prune();
  return out;
}

QSeries operator*(const ExactRatio& c, const QSeries& a) {
  QSeries out = a;
  if (c == 0) {
    out.coeff_.clear();
    return out;
  }
  for (auto& [e, v] : out.coeff_) v *= c;
  return out;
}

QSeries& QSeries::operator+=(const QSeries& o) { return *this = *this + o; }
QSeries& QSeries::operator-=(const QSeries& o) { return *this = *this - o; }
QSeries& QSeries::operator*=(const QSeries& o) { return *this = *this * o; }

bool operator==(const QSeries& a, const QSeries& b) {
  return a.cutoff_ == b.cutoff_ && a.coeff_ == b.coeff_;
}

bool same_coefficients(const QSeries& a, const QSeries& b) {
  return a.coefficients() == b.coefficients();
}

QSeries QSeries::pow(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("negative power");
  QSeries result = one();
  if (cutoff_) result.cutoff_ = cutoff_;
  QSeries base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

QSeries QSeries::pochhammer(std::int64_t n,
                            std::optional<std::int64_t> cutoff) {
  if (n < 0) throw std::invalid_argument("pochhammer needs n >= 0");
  QSeries acc = one();
  acc.cutoff_ = cutoff;
  for (std::int64_t k = 1; k <= n; ++k) {
    if (cutoff && k >= *cutoff) break;  // higher factors are 1 mod q^cutoff
    // multiply by (1 - q^k) in place
    QSeries shifted_acc;
    for (const auto& [e, c] : acc.coeff_) shifted_acc.coeff_[e + k] = c;
    shifted_acc.cutoff_ = cutoff;
    shifted_acc.prune();
    acc -= shifted_acc;
  }
  return acc;
}

QSeries QSeries::reciprocal(std::int64_t cutoff) const {
  if (cutoff < 1) throw std::invalid_argument("reciprocal needs cutoff >= 1");
  ExactRatio a0 = coefficient(0);
  if (a0 == 0)
    throw std::invalid_argument("reciprocal needs a nonzero constant term");
  std::int64_t K = cutoff;
  if (cutoff_) K = std::min(K, *cutoff_);
  // b_0 = 1/a_0, then b_m = -(sum_{k>=1} a_k b_{m-k}) / a_0.
  std::vector<ExactRatio> b(static_cast<std::size_t>(K));
  b[0] = ExactRatio(1) / a0;
  for (std::int64_t m = 1; m < K; ++m) {
    ExactRatio acc(0);
    for (const auto& [k, ak] : coeff_) {
      if (k == 0) continue;
      if (k > m) break;
      acc += ak * b[static_cast<std::size_t>(m - k)];
    }
    b[static_cast<std::size_t>(m)] = -acc / a0;
  }
  QSeries out;
  out.cutoff_ = K;
  for (std::int64_t m = 0; m < K; ++m)
    if (b[static_cast<std::size_t>(m)] != 0)
      out.coeff_[m] = b[static_cast<std::size_t>(m)];
  return out;
}

double QSeries::evaluate(double q0) const {
  if (!(q0 >= 0.0 && q0 < 1.0))
    throw std::domain_error("evaluate needs 0 <= q0 < 1");
  if (coeff_.empty()) return 0.0;
  // Horner over the exponent gaps, highest term first.
  double acc = 0.0;
  std::int64_t prev = -1;
  for (auto it = coeff_.rbegin(); it != coeff_.rend(); ++it) {
    if (prev >= 0)
      acc *= std::pow(q0, static_cast<double>(prev - it->first));
    acc += it->second.get_d();
    prev = it->first;
  }
  return acc * std::pow(q0, static_cast<double>(prev));
}

QSeries QSeries::divide_exact(const QSeries& numerator,
                              const QSeries& denominator) {
  if (!numerator.is_polynomial() || !denominator.is_polynomial())
    throw std::invalid_argument("divide_exact works on exact polynomials");
  if (denominator.is_zero()) throw std::invalid_argument("division by zero");
  if (numerator.is_zero()) return QSeries();

  std::int64_t vn = numerator.lowest_exponent();
  std::int64_t vd = denominator.lowest_exponent();
  if (vn < vd)
    throw ConsistencyError("polynomial division left a remainder");

  // Strip the common power of q so the divisor has a nonzero constant term,
  // then run the division from the bottom up.
  std::int64_t dn = numerator.degree() - vd;
  std::int64_t dd = denominator.degree() - vd;
  std::vector<ExactRatio> num(static_cast<std::size_t>(dn) + 1),
      den(static_cast<std::size_t>(dd) + 1);
  for (const auto& [e, c] : numerator.coeff_)
    num[static_cast<std::size_t>(e - vd)] = c;
  for (const auto& [e, c] : denominator.coeff_)
    den[static_cast<std::size_t>(e - vd)] = c;

  std::int64_t dq = dn - dd;
  if (dq < 0) throw ConsistencyError("polynomial division left a remainder");
  std::vector<ExactRatio> quo(static_cast<std::size_t>(dq) + 1);
  for (std::int64_t j = 0; j <= dq; ++j) {
    ExactRatio acc = num[static_cast<std::size_t>(j)];
    for (std::int64_t i = 1; i <= std::min(j, dd); ++i)
      acc -= den[static_cast<std::size_t>(i)] *
             quo[static_cast<std::size_t>(j - i)];
    quo[static_cast<std::size_t>(j)] = acc / den[0];
  }

  QSeries out;
  for (std::int64_t j = 0; j <= dq; ++j)
    if (quo[static_cast<std::size_t>(j)] != 0)
      out.coeff_[j] = quo[static_cast<std::size_t>(j)];
  if (!same_coefficients(out * denominator, numerator))
    throw ConsistencyError("polynomial division left a remainder");
  return out;
}

std::string QSeries::to_text() const {
  std::ostringstream os;
  if (coeff_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& [e, c] : coeff_) {
      ExactRatio abs_c = c < 0 ? ExactRatio(-c) : c;
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      bool unit_coeff = (abs_c == 1) && e != 0;
      if (!unit_coeff) os << abs_c.get_str();
      if (e != 0) {
        if (!unit_coeff) os << " ";
        os << "q";
        if (e != 1) os << "^" << e;
      }
    }
  }
  if (cutoff_) os << " + O(q^" << *cutoff_ << ")";
  return os.str();
}

bool ratios_equal(const QSeriesRatio& a, const QSeriesRatio& b) {
  return same_coefficients(a.numerator * b.denominator,
                           b.numerator * a.denominator);
}

}  // namespace bfstat
