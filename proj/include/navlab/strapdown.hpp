#pragma once

#include <Eigen/Dense>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "navlab/earth.hpp"
#include "navlab/poly3.hpp"
#include "navlab/quaternion.hpp"
#include "navlab/series.hpp"

namespace navlab {

/// One computation interval of inertial measurements: N angular and velocity
/// increments over equal subintervals of [0, T].
struct ImuBatch {
  double duration = 0.0;  // T, seconds
  std::vector<Eigen::Vector3d> angle_increments;     // rad
  std::vector<Eigen::Vector3d> velocity_increments;  // m/s

  int samples() const { return static_cast<int>(angle_increments.size()); }

  Eigen::Vector3d total_angle() const {
    return std::accumulate(angle_increments.begin(), angle_increments.end(),
                           Eigen::Vector3d{Eigen::Vector3d::Zero()});
  }
  Eigen::Vector3d total_velocity() const {
    return std::accumulate(velocity_increments.begin(), velocity_increments.end(),
                           Eigen::Vector3d{Eigen::Vector3d::Zero()});
  }
};

enum class AttitudeScheme { Traditional, Enhanced, Fiter };
enum class VelocityScheme {
  FirstOrder,
  SecondOrder,
  EnhancedFirst,
  EnhancedSecond,
  ViaGen,
  Fiter,
  VpifRigorous
};

struct AlgoVariant {
  std::string label;
  AttitudeScheme attitude = AttitudeScheme::Traditional;
  VelocityScheme velocity = VelocityScheme::SecondOrder;
  int viagen_trig_order = 8;
  int degree_cap = 8;  // truncation of the closed-form polynomial terms

  bool valid() const {
    const bool att_fiter = attitude == AttitudeScheme::Fiter;
    const bool vel_fiter = velocity == VelocityScheme::Fiter;
    return att_fiter == vel_fiter;  // functional iteration is all-or-nothing
  }

  static AlgoVariant typical() {
    return {"Typical", AttitudeScheme::Traditional, VelocityScheme::SecondOrder};
  }
  static AlgoVariant enhanced() {
    return {"Enhanced", AttitudeScheme::Enhanced, VelocityScheme::EnhancedSecond};
  }
  static AlgoVariant viagen(int trig_order) {
    AlgoVariant v{"ViaGen-" + std::to_string(trig_order), AttitudeScheme::Traditional,
                  VelocityScheme::ViaGen};
    v.viagen_trig_order = trig_order;
    return v;
  }
  static AlgoVariant vpifnav() {
    return {"VPifNav", AttitudeScheme::Traditional, VelocityScheme::VpifRigorous};
  }
  static AlgoVariant inavfiter() {
    return {"iNavFIter", AttitudeScheme::Fiter, VelocityScheme::Fiter};
  }
};

// --- numeric twins of the closed-form polynomial algorithms ---------------

inline Poly1 series_to_poly(const ScalarPoly& s) {
  std::vector<double> c(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) c[k] = s[k].to_double();
  return Poly1(std::move(c));
}

inline const Poly1& sinc_series_d() {
  static const Poly1 p = series_to_poly(sinc_series(kTrigSeriesOrder));
  return p;
}
inline const Poly1& versine_series_d() {
  static const Poly1 p = series_to_poly(versine_series(kTrigSeriesOrder));
  return p;
}
inline const Poly1& one_minus_sinc_series_d() {
  static const Poly1 p = series_to_poly(one_minus_sinc_series(kTrigSeriesOrder));
  return p;
}

inline Poly3 sigma_traditional_poly(const Poly3& omega, int cap) {
  const Poly3 alpha = omega.integrate().truncate(cap);
  return (alpha + (0.5 * cross(alpha, omega)).integrate()).truncate(cap);
}

inline Poly3 sigma_enhanced_poly(const Poly3& omega, int cap) {
  const Poly3 st = sigma_traditional_poly(omega, cap);
  const Poly3 alpha = omega.integrate().truncate(cap);
  const Poly3 d1 = 0.5 * cross(st - alpha, omega);
  const Poly3 d2 = (1.0 / 12.0) * cross(st, cross(st, omega).truncate(cap));
  return (st + (d1 + d2).integrate()).truncate(cap);
}

inline Poly3 u_first_order_poly(const Poly3& omega, const Poly3& f, int cap) {
  const Poly3 alpha = omega.integrate().truncate(cap);
  return (f + cross(alpha, f)).integrate().truncate(cap);
}

inline Poly3 u_second_order_poly(const Poly3& omega, const Poly3& f, int cap) {
  const Poly3 alpha = omega.integrate().truncate(cap);
  const Poly3 v = f.integrate().truncate(cap);
  return (u_first_order_poly(omega, f, cap) +
          (1.0 / 6.0) * cross(alpha, cross(alpha, v).truncate(cap)))
      .truncate(cap);
}

inline Poly3 delta_v1_poly(const Poly3& omega, const Poly3& f, int cap) {
  const Poly3 st = sigma_traditional_poly(omega, cap);
  const Poly3 alpha = omega.integrate().truncate(cap);
  return cross(st - alpha, f).integrate().truncate(cap);
}

inline Poly3 delta_v2_poly(const Poly3& omega, const Poly3& f, int cap) {
  const Poly3 st = sigma_traditional_poly(omega, cap);
  const Poly3 alpha = omega.integrate().truncate(cap);
  const Poly3 v = f.integrate().truncate(cap);
  const Poly3 lhs = (0.5 * cross(st, cross(st, f).truncate(cap))).integrate().truncate(cap);
  const Poly3 rhs = (1.0 / 6.0) * cross(alpha, cross(alpha, v).truncate(cap));
  return (lhs - rhs).truncate(cap);
}

inline Poly3 u_viagen_poly(const Poly3& omega, const Poly3& f, int trig_order, int cap) {
  const Poly3 st = sigma_traditional_poly(omega, cap);
  const Poly3 v = f.integrate().truncate(cap);
  const Poly3 alpha = omega.integrate().truncate(cap);
  const Poly3 eta =
      (v + 0.5 * (cross(alpha, f) - cross(omega, v)).integrate()).truncate(cap);
  Poly1 b_series = trig_order <= 1 ? Poly1::constant(0.5) : versine_series_d();
  Poly1 d_series = trig_order <= 1 ? Poly1::constant(1.0 / 6.0) : one_minus_sinc_series_d();
  const Poly1 b = apply_even_series(b_series, st, cap);
  const Poly1 d = apply_even_series(d_series, st, cap);
  const Poly3 sxe = cross(st, eta).truncate(cap);
  return (eta + (b * sxe).truncate(cap) + (d * cross(st, sxe).truncate(cap)).truncate(cap))
      .truncate(cap);
}

// --- interval updates -------------------------------------------------------

struct AttitudeUpdate {
  Quaternion attitude;        // q_b^n at the end of the interval
  Poly3 omega_poly;           // fitted body angular velocity over [0, T]
  Poly3 sigma_poly;           // body rotation-vector polynomial per scheme
  Eigen::Vector3d sigma_n;    // navigation-frame rotation vector (T * omega_in)
  double fit_condition = 1.0;
};

/// Body rotation from the fitted angular-velocity polynomial, navigation
/// rotation from sigma_n = T*omega_in at the interval start, composed per the
/// attitude chain rule.
inline AttitudeUpdate attitude_update(const NavState& state, const ImuBatch& batch,
                                      const EarthModel& model, AttitudeScheme scheme,
                                      int degree_cap = 8) {
  if (scheme == AttitudeScheme::Fiter)
    throw std::invalid_argument("attitude_update: functional iteration uses fiter_step");
  AttitudeUpdate out;
  const IncrementFit fit = fit_polynomial_from_increments(batch.angle_increments, batch.duration);
  out.omega_poly = fit.poly;
  out.fit_condition = fit.condition;
  out.sigma_poly = scheme == AttitudeScheme::Enhanced
                       ? sigma_enhanced_poly(fit.poly, degree_cap)
                       : sigma_traditional_poly(fit.poly, degree_cap);
  out.sigma_n = batch.duration * earth_rates(model, state).omega_in();
  const Quaternion q_body = quat_from_rotvec(out.sigma_poly.eval(batch.duration));
  out.attitude = quat_from_rotvec(out.sigma_n).conjugate() * state.attitude * q_body;
  return out;
}

struct VelocityUpdateTerms {
  Eigen::Vector3d u = Eigen::Vector3d::Zero();            // transformed specific-force integral
  Eigen::Vector3d dv_gravity = Eigen::Vector3d::Zero();   // gravity/Coriolis term
  Eigen::Vector3d dv_rotation = Eigen::Vector3d::Zero();  // navigation-rotation compensation
};

namespace detail {
// Nodes/weights of n-point Gauss-Legendre quadrature on [0, 1] via the
// symmetric Jacobi matrix.
struct GaussRule {
  std::vector<double> nodes, weights;
};
inline GaussRule gauss_legendre(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    r.nodes[k] = 0.5 * (es.eigenvalues()(k) + 1.0);
    const double v = es.eigenvectors()(0, k);
    r.weights[k] = v * v;  // weights on [0,1] sum to 1
  }
  return r;
}
}  // namespace detail

/// Velocity update over one interval. The closed-form variants evaluate their
/// polynomial terms at t = T; the rigorous variant integrates the fully
/// rotated specific force by quadrature and treats the gravity/Coriolis
/// integral with a trapezoidal corrector pass.
inline std::pair<Eigen::Vector3d, VelocityUpdateTerms> velocity_update(
    const NavState& state, const ImuBatch& batch, const EarthModel& model,
    const AlgoVariant& variant, const AttitudeUpdate& att) {
  if (variant.velocity == VelocityScheme::Fiter)
    throw std::invalid_argument("velocity_update: functional iteration uses fiter_step");
  const double T = batch.duration;
  const int cap = variant.degree_cap;
  const IncrementFit ffit =
      fit_polynomial_from_increments(batch.velocity_increments, batch.duration);
  const Poly3& f = ffit.poly;
  const Eigen::Matrix3d c0 = state.attitude.dcm();
  const EarthRates rates = earth_rates(model, state);

  VelocityUpdateTerms terms;
  if (variant.velocity == VelocityScheme::VpifRigorous) {
    // u = int R(sigma_n(t))^T C0 R(sigma_b(t)) f(t) dt with 5-point quadrature
    const Poly3 sigma = att.sigma_poly;
    const auto rule = detail::gauss_legendre(5);
    Eigen::Vector3d u = Eigen::Vector3d::Zero();
    for (int k = 0; k < 5; ++k) {
      const double t = rule.nodes[k] * T;
      const Eigen::Vector3d body = quat_from_rotvec(sigma.eval(t)).rotate(f.eval(t));
      const Eigen::Vector3d nav0 = c0 * body;
      const Eigen::Vector3d sn = (t / T) * att.sigma_n;
      u += rule.weights[k] * T * (nav0 - sn.cross(nav0) + 0.5 * sn.cross(sn.cross(nav0)));
    }
    terms.u = u;
    // gravity/Coriolis with one trapezoidal corrector pass
    const Eigen::Vector3d acc0 =
        rates.gravity - (2.0 * rates.omega_ie + rates.omega_en).cross(state.velocity);
    Eigen::Vector3d v_pred = state.velocity + terms.u + T * acc0;
    NavState pred = state;
    pred.velocity = v_pred;
    const EarthRates rates1 = earth_rates(model, pred);
    const Eigen::Vector3d acc1 =
        rates1.gravity - (2.0 * rates1.omega_ie + rates1.omega_en).cross(v_pred);
    terms.dv_gravity = 0.5 * T * (acc0 + acc1);
    terms.dv_rotation.setZero();  // absorbed by the rotated quadrature
    return {state.velocity + terms.u + terms.dv_gravity, terms};
  }

  Poly3 u_poly;
  switch (variant.velocity) {
    case VelocityScheme::FirstOrder:
      u_poly = u_first_order_poly(att.omega_poly, f, cap);
      break;
    case VelocityScheme::SecondOrder:
      u_poly = u_second_order_poly(att.omega_poly, f, cap);
      break;
    case VelocityScheme::EnhancedFirst:
      u_poly = u_first_order_poly(att.omega_poly, f, cap) + delta_v1_poly(att.omega_poly, f, cap);
      break;
    case VelocityScheme::EnhancedSecond:
      u_poly = u_second_order_poly(att.omega_poly, f, cap) +
               delta_v1_poly(att.omega_poly, f, cap) + delta_v2_poly(att.omega_poly, f, cap);
      break;
    case VelocityScheme::ViaGen:
      u_poly = u_viagen_poly(att.omega_poly, f, variant.viagen_trig_order, cap);
      break;
    default:
      throw std::invalid_argument("velocity_update: unhandled scheme");
  }
  terms.u = c0 * u_poly.eval(T);
  terms.dv_gravity =
      T * (rates.gravity - (2.0 * rates.omega_ie + rates.omega_en).cross(state.velocity));
  terms.dv_rotation = -0.5 * T * rates.omega_in().cross(c0 * batch.total_velocity());
  return {state.velocity + terms.u + terms.dv_gravity + terms.dv_rotation, terms};
}

/// Trapezoidal position advance through the curvature mapping.
inline void position_update(NavState& state, const EarthModel& model,
                            const Eigen::Vector3d& v_old, const Eigen::Vector3d& v_new,
                            double T) {
  const double lat0 = state.latitude, h0 = state.height;
  const double h1 = h0 + 0.5 * T * (v_old[1] + v_new[1]);
  const double lat1 =
      lat0 + 0.5 * T * (v_old[0] / (model.radius + h0) + v_new[0] / (model.radius + h1));
  const double lon_rate0 = v_old[2] / ((model.radius + h0) * std::cos(lat0));
  const double lon_rate1 = v_new[2] / ((model.radius + h1) * std::cos(lat1));
  state.longitude += 0.5 * T * (lon_rate0 + lon_rate1);
  state.latitude = lat1;
  state.height = h1;
}

struct StepDiagnostics {
  VelocityUpdateTerms terms;
  double fit_condition = 1.0;
};

/// One full navigation step for the closed-form algorithm variants.
inline NavState strapdown_step(const NavState& state, const ImuBatch& batch,
                               const EarthModel& model, const AlgoVariant& variant,
                               StepDiagnostics* diag = nullptr) {
  const AttitudeUpdate att =
      attitude_update(state, batch, model, variant.attitude, variant.degree_cap);
  const auto [v_new, terms] = velocity_update(state, batch, model, variant, att);
  NavState next = state;
  next.attitude = att.attitude;
  next.velocity = v_new;
  position_update(next, model, state.velocity, v_new, batch.duration);
  if (diag != nullptr) {
    diag->terms = terms;
    diag->fit_condition = att.fit_condition;
  }
  return next;
}

}  // namespace navlab
