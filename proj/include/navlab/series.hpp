#pragma once

#include <stdexcept>
#include <vector>

#include "navlab/exact_poly.hpp"
#include "navlab/rational.hpp"

namespace navlab {

// Rotation-coefficient power series in w = sigma^2. Index k holds the w^k
// coefficient, so "order n" covers sigma^0 .. sigma^(2n).

namespace detail {
inline Rational inv_factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return Rational(BigInt(1), f);
}
}  // namespace detail

/// sin(s)/s  =  1 - w/3! + w^2/5! - ...
inline ScalarPoly sinc_series(int order) {
  std::vector<Rational> c(order + 1);
  for (int k = 0; k <= order; ++k)
    c[k] = (k % 2 ? -detail::inv_factorial(2 * k + 1) : detail::inv_factorial(2 * k + 1));
  return ScalarPoly(std::move(c));
}

/// (1 - cos s)/s^2  =  1/2 - w/4! + w^2/6! - ...
inline ScalarPoly versine_series(int order) {
  std::vector<Rational> c(order + 1);
  for (int k = 0; k <= order; ++k)
    c[k] = (k % 2 ? -detail::inv_factorial(2 * k + 2) : detail::inv_factorial(2 * k + 2));
  return ScalarPoly(std::move(c));
}

/// (1 - sin(s)/s)/s^2  =  1/6 - w/5! + w^2/7! - ...
inline ScalarPoly one_minus_sinc_series(int order) {
  std::vector<Rational> c(order + 1);
  for (int k = 0; k <= order; ++k)
    c[k] = (k % 2 ? -detail::inv_factorial(2 * k + 3) : detail::inv_factorial(2 * k + 3));
  return ScalarPoly(std::move(c));
}

/// Power-series quotient num/den through w^order; den must have a nonzero
/// constant term.
inline ScalarPoly series_divide(const ScalarPoly& num, const ScalarPoly& den, int order) {
  if (den.coeff(0).is_zero())
    throw std::domain_error("series_divide: denominator has zero constant term");
  std::vector<Rational> q(order + 1);
  std::vector<Rational> rem(order + 1);
  for (int k = 0; k <= order; ++k) rem[k] = num.coeff(k);
  for (int k = 0; k <= order; ++k) {
    q[k] = rem[k] / den.coeff(0);
    for (int j = 0; k + j <= order; ++j) rem[k + j] -= q[k] * den.coeff(j);
  }
  return ScalarPoly(std::move(q));
}

/// Bracket coefficient of the rotation-vector rate equation,
///   (1/s^2) * [1 - s*sin(s) / (2(1-cos(s)))],
/// as a series in w: 1/12 + w/720 + w^2/30240 + ...
/// Derived exactly as ((2B - A)/w) / (2B) with A = sinc, B = versine series.
inline ScalarPoly bortz_bracket_series(int order) {
  const ScalarPoly a = sinc_series(order + 1);
  const ScalarPoly b = versine_series(order + 1);
  std::vector<Rational> num(order + 1);
  for (int k = 0; k <= order; ++k)
    num[k] = Rational(2) * b.coeff(k + 1) - a.coeff(k + 1);  // (2B - A) has no w^0 term
  return series_divide(ScalarPoly(std::move(num)), Rational(2) * b, order);
}

/// Substitutes w = |P(t)|^2 into an even series, truncated at degree dmax in t.
inline ScalarPoly apply_even_series(const ScalarPoly& series, const VecPoly& p, int dmax) {
  const ScalarPoly w = p.dot(p).truncate(dmax);
  ScalarPoly result = ScalarPoly::constant(series.coeff(0));
  ScalarPoly wk = ScalarPoly::constant(Rational(1));
  for (std::size_t k = 1; k < series.size(); ++k) {
    wk = (wk * w).truncate(dmax);
    if (wk.is_zero()) break;
    result = result + series[k] * wk;
  }
  return result.truncate(dmax);
}

}  // namespace navlab
