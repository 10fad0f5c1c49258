#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "navlab/exact_poly.hpp"
#include "navlab/series.hpp"

namespace navlab {

/// Body angular velocity and specific force as exact polynomials of time.
/// The linear form omega = a_w + b_w*t, f = a_f + b_f*t is the documented
/// default; higher-degree coefficient lists are accepted everywhere.
struct MotionCoefficients {
  VecPoly omega;  // rad/s, rad/s^2, ...
  VecPoly force;  // m/s^2, m/s^3, ...

  static MotionCoefficients linear(const RVec3& a_w, const RVec3& b_w, const RVec3& a_f,
                                   const RVec3& b_f) {
    return {VecPoly({a_w, b_w}), VecPoly({a_f, b_f})};
  }
};

inline constexpr int kDefaultDegreeCap = 8;
inline constexpr int kTrigSeriesOrder = 4;  // series through sigma^8

/// Angular increment alpha(t) = integral of omega.
inline VecPoly angular_increment(const VecPoly& omega, int cap = kDefaultDegreeCap) {
  return omega.integrate().truncate(cap);
}

/// Velocity increment v(t) = integral of f.
inline VecPoly velocity_increment(const VecPoly& force, int cap = kDefaultDegreeCap) {
  return force.integrate().truncate(cap);
}

/// Single-pass integration of the simplified rotation-vector rate
/// sigma_dot = omega + (1/2) alpha x omega. For linear omega this is exactly
/// the three-term polynomial a_w t + b_w t^2/2 + (a_w x b_w) t^3/12.
inline VecPoly sigma_traditional(const VecPoly& omega, int cap = kDefaultDegreeCap) {
  const VecPoly alpha = angular_increment(omega, cap);
  const VecPoly half_cross = Rational(1, 2) * cross(alpha, omega);
  return (alpha + half_cross.integrate()).truncate(cap);
}

inline VecPoly sigma_traditional(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  return sigma_traditional(mc.omega, cap);
}

/// Closed-form compensation term for linear motion (degrees 5..8); every term
/// carries a factor a_w x b_w, so it vanishes for collinear coefficients.
inline VecPoly delta_sigma_linear(const RVec3& a_w, const RVec3& b_w) {
  const RVec3 ab = cross(a_w, b_w);
  const RVec3 t5 =
      Rational(1, 240) * (cross(ab, b_w) + Rational(1, 3) * cross(a_w, cross(ab, a_w)));
  const RVec3 t6 = Rational(1, 864) * (cross(a_w, cross(ab, b_w)) +
                                       Rational(1, 2) * cross(b_w, cross(ab, a_w)));
  const RVec3 t7 = Rational(1, 2016) * (cross(b_w, cross(ab, b_w)) +
                                        Rational(1, 6) * cross(ab, cross(ab, a_w)));
  const RVec3 t8 = Rational(1, 13824) * cross(ab, cross(ab, b_w));
  return VecPoly({RVec3::zero(), RVec3::zero(), RVec3::zero(), RVec3::zero(), RVec3::zero(),
                  t5, t6, t7, t8});
}

/// Refined rotation vector: the traditional polynomial plus the compensation
/// obtained by substituting it back into the rate equation with the bracket
/// coefficient fixed at 1/12. Reduces to sigma_traditional + delta_sigma_linear
/// for linear motion.
inline VecPoly sigma_enhanced(const VecPoly& omega, int cap = kDefaultDegreeCap) {
  const VecPoly st = sigma_traditional(omega, cap);
  const VecPoly alpha = angular_increment(omega, cap);
  const VecPoly d1 = Rational(1, 2) * cross(st - alpha, omega);
  const VecPoly d2 = Rational(1, 12) * cross(st, cross(st, omega).truncate(cap));
  return (st + (d1 + d2).integrate()).truncate(cap);
}

inline VecPoly sigma_enhanced(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  return sigma_enhanced(mc.omega, cap);
}

/// Picard iterates of the full rotation-vector rate equation with the bracket
/// coefficient expanded to the eighth-order series; each iterate is truncated
/// at the degree cap. Element l-1 of the result is iterate l (starting from
/// sigma^(0) = 0, so iterate 1 is the plain angular increment).
inline std::vector<VecPoly> sigma_fiter_iterates(const VecPoly& omega, int iterations,
                                                 int cap = kDefaultDegreeCap) {
  const ScalarPoly bracket = bortz_bracket_series(kTrigSeriesOrder);
  std::vector<VecPoly> out;
  out.reserve(iterations);
  VecPoly sigma;
  for (int l = 0; l < iterations; ++l) {
    const ScalarPoly c = apply_even_series(bracket, sigma, cap);
    const VecPoly sxw = cross(sigma, omega).truncate(cap);
    const VecPoly integrand =
        omega + Rational(1, 2) * sxw + (c * cross(sigma, sxw).truncate(cap)).truncate(cap);
    sigma = integrand.integrate().truncate(cap);
    out.push_back(sigma);
  }
  return out;
}

inline VecPoly sigma_fiter(const VecPoly& omega, int iterations, int cap = kDefaultDegreeCap) {
  return sigma_fiter_iterates(omega, iterations, cap).back();
}

inline VecPoly sigma_fiter(const MotionCoefficients& mc, int iterations,
                           int cap = kDefaultDegreeCap) {
  return sigma_fiter(mc.omega, iterations, cap);
}

/// Iterates until the truncated polynomial stops changing (the fixed point at
/// the degree cap is reached in at most cap+1 steps for polynomial motion).
inline VecPoly sigma_fiter_converged(const VecPoly& omega, int cap = kDefaultDegreeCap) {
  const ScalarPoly bracket = bortz_bracket_series(kTrigSeriesOrder);
  VecPoly sigma;
  for (int l = 0; l < cap + 4; ++l) {
    const ScalarPoly c = apply_even_series(bracket, sigma, cap);
    const VecPoly sxw = cross(sigma, omega).truncate(cap);
    const VecPoly next =
        (omega + Rational(1, 2) * sxw + (c * cross(sigma, sxw).truncate(cap)).truncate(cap))
            .integrate()
            .truncate(cap);
    if (next == sigma) break;
    sigma = next;
  }
  return sigma;
}

/// integral (I + alpha x) f dt — the first-order transformed specific-force
/// integral.
inline VecPoly u_first_order(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  const VecPoly alpha = angular_increment(mc.omega, cap);
  return ((mc.force + cross(alpha, mc.force)).integrate()).truncate(cap);
}

/// First-order integral plus the lumped second-order correction
/// alpha x (alpha x v)/6 with alpha, v kept as full polynomials.
inline VecPoly u_second_order(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  const VecPoly alpha = angular_increment(mc.omega, cap);
  const VecPoly v = velocity_increment(mc.force, cap);
  const VecPoly second = Rational(1, 6) * cross(alpha, cross(alpha, v).truncate(cap));
  return (u_first_order(mc, cap) + second).truncate(cap);
}

/// Theoretical error of the first-order correction:
/// integral (sigma_trad - alpha) x f dt.
inline VecPoly delta_v1(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  const VecPoly st = sigma_traditional(mc.omega, cap);
  const VecPoly alpha = angular_increment(mc.omega, cap);
  return cross(st - alpha, mc.force).integrate().truncate(cap);
}

/// Theoretical error of the second-order correction:
/// (1/2) integral sigma x (sigma x f) dt  -  alpha x (alpha x v)/6.
inline VecPoly delta_v2(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  const VecPoly st = sigma_traditional(mc.omega, cap);
  const VecPoly alpha = angular_increment(mc.omega, cap);
  const VecPoly v = velocity_increment(mc.force, cap);
  const VecPoly lhs =
      Rational(1, 2) * cross(st, cross(st, mc.force).truncate(cap)).integrate().truncate(cap);
  const VecPoly rhs = Rational(1, 6) * cross(alpha, cross(alpha, v).truncate(cap));
  return (lhs - rhs).truncate(cap);
}

/// Second-order integral with both theoretical-error compensations applied.
inline VecPoly u_enhanced(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  return (u_second_order(mc, cap) + delta_v1(mc, cap) + delta_v2(mc, cap)).truncate(cap);
}

/// Velocity translation vector eta = v + (1/2) integral (alpha x f - omega x v) dt.
inline VecPoly velocity_translation_vector(const MotionCoefficients& mc,
                                           int cap = kDefaultDegreeCap) {
  const VecPoly alpha = angular_increment(mc.omega, cap);
  const VecPoly v = velocity_increment(mc.force, cap);
  const VecPoly corr = (cross(alpha, mc.force) - cross(mc.omega, v)).integrate();
  return (v + Rational(1, 2) * corr).truncate(cap);
}

/// General velocity integration via the translation vector:
///   u = eta + B(s^2) sigma x eta + D(s^2) sigma x (sigma x eta)
/// with sigma from sigma_traditional. trig_order 1 freezes the coefficients at
/// 1/2 and 1/6; trig_order 8 uses the eighth-order series.
inline VecPoly u_viagen(const MotionCoefficients& mc, int trig_order,
                        int cap = kDefaultDegreeCap) {
  const VecPoly st = sigma_traditional(mc.omega, cap);
  const VecPoly eta = velocity_translation_vector(mc, cap);
  ScalarPoly b_series, d_series;
  if (trig_order <= 1) {
    b_series = ScalarPoly::constant(Rational(1, 2));
    d_series = ScalarPoly::constant(Rational(1, 6));
  } else {
    b_series = versine_series(kTrigSeriesOrder);
    d_series = one_minus_sinc_series(kTrigSeriesOrder);
  }
  const ScalarPoly b = apply_even_series(b_series, st, cap);
  const ScalarPoly d = apply_even_series(d_series, st, cap);
  const VecPoly sxe = cross(st, eta).truncate(cap);
  return (eta + (b * sxe).truncate(cap) + (d * cross(st, sxe).truncate(cap)).truncate(cap))
      .truncate(cap);
}

/// Reference velocity integral with the converged rotation vector:
///   u = integral [ f + A(s^2) sigma x f + B(s^2) sigma x (sigma x f) ] dt.
inline VecPoly u_fiter(const MotionCoefficients& mc, int cap = kDefaultDegreeCap) {
  const VecPoly sigma = sigma_fiter_converged(mc.omega, cap);
  const ScalarPoly a = apply_even_series(sinc_series(kTrigSeriesOrder), sigma, cap);
  const ScalarPoly b = apply_even_series(versine_series(kTrigSeriesOrder), sigma, cap);
  const VecPoly sxf = cross(sigma, mc.force).truncate(cap);
  const VecPoly integrand =
      mc.force + (a * sxf).truncate(cap) + (b * cross(sigma, sxf).truncate(cap)).truncate(cap);
  return integrand.integrate().truncate(cap);
}

/// Lowest power of t at which two polynomials differ.
struct ErrorOrderReport {
  std::string candidate;
  std::string reference;
  std::optional<int> order;  // empty: identical up to the degree cap
  RVec3 delta;               // differing-coefficient difference at that order

  bool identical() const { return !order.has_value(); }
};

inline ErrorOrderReport error_order(const VecPoly& candidate, const VecPoly& reference,
                                    int cap = kDefaultDegreeCap, std::string candidate_label = {},
                                    std::string reference_label = {}) {
  ErrorOrderReport r{std::move(candidate_label), std::move(reference_label), std::nullopt,
                     RVec3::zero()};
  for (int k = 0; k <= cap; ++k) {
    const RVec3 d = candidate.coeff(k) - reference.coeff(k);
    if (!d.is_zero()) {
      r.order = k;
      r.delta = d;
      return r;
    }
  }
  return r;
}

}  // namespace navlab
