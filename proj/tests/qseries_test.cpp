#include <doctest.h>

#include <stdexcept>

#include "bfstat/errors.hpp"
#include "bfstat/qseries.hpp"

using namespace bfstat;

namespace {
QSeries poly(std::initializer_list<std::pair<std::int64_t, ExactRatio>> cs) {
  QSeries s;
  for (const auto& [e, c] : cs) s += QSeries::monomial(c, e);
  return s;
}
}  // namespace

TEST_CASE("arithmetic keeps exact coefficients") {
  QSeries a = poly({{0, 1}, {1, ExactRatio(3, 2)}});
  QSeries b = poly({{1, ExactRatio(-3, 2)}, {2, 2}});
  QSeries sum = a + b;
  CHECK(sum.coefficient(0) == 1);
  CHECK(sum.coefficient(1) == 0);  // cancelled exactly
  CHECK(sum.coefficient(2) == 2);
  CHECK(sum.degree() == 2);

  QSeries prod = a * b;
  // (1 + 3/2 q)(-3/2 q + 2 q^2) = -3/2 q - 1/4 q^2 + 3 q^3
  CHECK(prod.coefficient(1) == ExactRatio(-3, 2));
  CHECK(prod.coefficient(2) == ExactRatio(-1, 4));
  CHECK(prod.coefficient(3) == 3);
  CHECK(prod.lowest_exponent() == 1);
}

TEST_CASE("zero prunes itself") {
  QSeries a = poly({{2, 5}});
  QSeries z = a - a;
  CHECK(z.is_zero());
  CHECK(z.degree() == -1);
  CHECK(z.to_text() == "0");
}

TEST_CASE("cutoff propagates as the minimum") {
  QSeries a = poly({{0, 1}, {5, 1}}).truncated(4);
  CHECK(a.coefficient(5) == 0);
  CHECK(a.cutoff() == 4);
  QSeries b = poly({{0, 1}, {1, 1}});
  QSeries p = a * b;
  REQUIRE(p.cutoff().has_value());
  CHECK(*p.cutoff() == 4);
  QSeries s = a + b.truncated(3);
  REQUIRE(s.cutoff().has_value());
  CHECK(*s.cutoff() == 3);
  CHECK(s.coefficient(3) == 0);
}

TEST_CASE("substitution, derivative, shift, pow") {
  QSeries a = poly({{0, 2}, {3, ExactRatio(1, 3)}});
  QSeries sub = a.substituted_power(2);
  CHECK(sub.coefficient(0) == 2);
  CHECK(sub.coefficient(6) == ExactRatio(1, 3));
  QSeries d = a.derivative();
  CHECK(d.coefficient(2) == 1);
  CHECK(d.degree() == 2);
  QSeries sh = a.shifted(2);
  CHECK(sh.coefficient(2) == 2);
  CHECK(sh.coefficient(5) == ExactRatio(1, 3));
  QSeries p = poly({{0, 1}, {1, 1}}).pow(3);
  CHECK(p.coefficient(1) == 3);
  CHECK(p.coefficient(2) == 3);
  CHECK(p.coefficient(3) == 1);
}

TEST_CASE("pochhammer products") {
  QSeries p2 = QSeries::pochhammer(2);
  // (1 - q)(1 - q^2) = 1 - q - q^2 + q^3
  CHECK(p2.coefficient(0) == 1);
  CHECK(p2.coefficient(1) == -1);
  CHECK(p2.coefficient(2) == -1);
  CHECK(p2.coefficient(3) == 1);
  CHECK(QSeries::pochhammer(0) == QSeries::one());
  QSeries trunc = QSeries::pochhammer(10, 4);
  REQUIRE(trunc.cutoff().has_value());
  CHECK(*trunc.cutoff() == 4);
}

TEST_CASE("reciprocal inverts to the requested cutoff") {
  QSeries a = poly({{0, 1}, {1, -1}});  // 1 - q
  QSeries inv = a.reciprocal(6);
  for (int e = 0; e < 6; ++e) CHECK(inv.coefficient(e) == 1);
  QSeries prod = (a * inv).truncated(6);
  CHECK(prod.coefficient(0) == 1);
  for (int e = 1; e < 6; ++e) CHECK(prod.coefficient(e) == 0);
  CHECK_THROWS_AS(poly({{1, 1}}).reciprocal(4), std::invalid_argument);
}

TEST_CASE("exact division recovers a factor") {
  QSeries num = QSeries::pochhammer(3);
  QSeries den = poly({{0, 1}, {1, -1}});  // 1 - q
  QSeries quot = QSeries::divide_exact(num, den);
  CHECK(same_coefficients(quot * den, num));
  CHECK_THROWS_AS(QSeries::divide_exact(poly({{0, 1}, {1, 1}}), den),
                  ConsistencyError);
}

TEST_CASE("evaluation is plain Horner over the gaps") {
  QSeries a = poly({{0, 1}, {2, 3}, {5, ExactRatio(1, 2)}});
  const double q0 = 0.37;
  const double expect =
      1.0 + 3.0 * q0 * q0 + 0.5 * q0 * q0 * q0 * q0 * q0;
  CHECK(a.evaluate(q0) == doctest::Approx(expect).epsilon(1e-14));
  CHECK_THROWS_AS(a.evaluate(1.0), std::domain_error);
  CHECK_THROWS_AS(a.evaluate(-0.1), std::domain_error);
}

TEST_CASE("text rendering") {
  QSeries a = poly({{0, 1}, {1, ExactRatio(3, 2)}, {3, -2}});
  CHECK(a.to_text() == "1 + 3/2 q - 2 q^3");
  CHECK(poly({{0, 1}}).truncated(5).to_text() == "1 + O(q^5)");
}

TEST_CASE("coefficientwise equality ignores cutoff bookkeeping") {
  QSeries a = poly({{0, 1}, {1, 2}});
  QSeries b = a.truncated(10);
  CHECK(same_coefficients(a, b));
  CHECK(a != b);  // operator== also compares the cutoff state
  CHECK(ratios_equal({a, QSeries::one()}, {a + a, poly({{0, 2}})}));
}
