#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <utility>
#include <vector>

#include "navlab/cheb.hpp"
#include "navlab/earth.hpp"
#include "navlab/strapdown.hpp"

namespace navlab {

struct FiterConfig {
  double tolerance = 1e-16;
  int max_attitude_iterations = 0;  // 0: samples + 1
  int max_velocity_iterations = 0;  // 0: samples + 1
  int gravity_fit_degree = 2;       // also used for the earth-rate polynomials
  int attitude_truncation = 0;      // 0: 2 * samples
  int velocity_truncation = 0;      // 0: 2 * samples
  int position_truncation = 0;      // 0: 2 * samples + 1

  int attitude_iters(int samples) const {
    return max_attitude_iterations > 0 ? max_attitude_iterations : samples + 1;
  }
  int velocity_iters(int samples) const {
    return max_velocity_iterations > 0 ? max_velocity_iterations : samples + 1;
  }
  int att_trunc(int samples) const {
    return attitude_truncation > 0 ? attitude_truncation : 2 * samples;
  }
  int vel_trunc(int samples) const {
    return velocity_truncation > 0 ? velocity_truncation : 2 * samples;
  }
  int pos_trunc(int samples) const {
    return position_truncation > 0 ? position_truncation : 2 * samples + 1;
  }
};

/// Chebyshev polynomials of the interval solution. position holds
/// (latitude, height, longitude) matching the North-Up-East component order.
struct FiterSolution {
  Cheb3 sigma_body{0.0, 1.0};
  Cheb3 velocity{0.0, 1.0};
  Cheb3 position{0.0, 1.0};
  Cheb3 sigma_nav{0.0, 1.0};
  int attitude_iterations = 0;
  int velocity_iterations = 0;
  double attitude_residual = 0.0;
  double velocity_residual = 0.0;
  bool attitude_converged = false;
  bool velocity_converged = false;
  std::vector<double> attitude_residual_history;
  std::vector<double> velocity_residual_history;

  bool converged() const { return attitude_converged && velocity_converged; }
};

namespace detail {
inline double max_coeff_change(const Cheb3& a, const Cheb3& b) {
  double m = 0.0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k)
    m = std::max(m, (a.coeff(k) - b.coeff(k)).cwiseAbs().maxCoeff());
  return m;
}
}  // namespace detail

/// Picard solution of the rotation-vector rate equation over [0, T], bracket
/// coefficient as the eighth-order series, Chebyshev products truncated at the
/// attitude truncation degree.
inline FiterSolution attitude_fiter(const ImuBatch& batch, const FiterConfig& cfg) {
  const double T = batch.duration;
  const int n = batch.samples();
  const int trunc = cfg.att_trunc(n);
  const int max_iter = cfg.attitude_iters(n);
  const Cheb3 omega = cheb_fit_from_increments(batch.angle_increments, 0.0, T);
  const Poly1& bracket = [] {
    static const Poly1 p = series_to_poly(bortz_bracket_series(kTrigSeriesOrder));
    return p;
  }();

  FiterSolution sol;
  Cheb3 sigma(0.0, T);
  for (int l = 0; l < max_iter; ++l) {
    const Cheb1 c = cheb_apply_even_series(bracket, sigma, trunc);
    const Cheb3 sxw = cheb_cross(sigma, omega, trunc);
    const Cheb3 integrand =
        omega + 0.5 * sxw + cheb_mul(c, cheb_cross(sigma, sxw, trunc), trunc);
    Cheb3 next = integrand.integrate().truncate(trunc);
    const double res = detail::max_coeff_change(next, sigma);
    sigma = std::move(next);
    sol.attitude_residual_history.push_back(res);
    sol.attitude_iterations = l + 1;
    sol.attitude_residual = res;
    if (res <= cfg.tolerance) {
      sol.attitude_converged = true;
      break;
    }
  }
  sol.sigma_body = sigma;
  return sol;
}

namespace detail {
struct EarthChebs {
  Cheb3 omega_ie{0.0, 1.0}, omega_en{0.0, 1.0}, gravity{0.0, 1.0};
};

inline EarthChebs fit_earth_chebs(const EarthModel& model, const NavState& start,
                                  const Cheb3& velocity, const Cheb3& position, double T,
                                  int degree) {
  const auto nodes = cheb_nodes(degree + 1, 0.0, T);
  std::vector<std::pair<double, Eigen::Vector3d>> sie, sen, sg;
  for (const double t : nodes) {
    NavState s = start;
    s.velocity = velocity.eval(t);
    const Eigen::Vector3d p = position.eval(t);
    s.latitude = p[0];
    s.height = p[1];
    s.longitude = p[2];
    const EarthRates r = earth_rates(model, s);
    sie.emplace_back(t, r.omega_ie);
    sen.emplace_back(t, r.omega_en);
    sg.emplace_back(t, r.gravity);
  }
  EarthChebs e;
  e.omega_ie = cheb_fit(sie, degree, 0.0, T);
  e.omega_en = cheb_fit(sen, degree, 0.0, T);
  e.gravity = cheb_fit(sg, degree, 0.0, T);
  return e;
}
}  // namespace detail

/// Joint Picard iteration of the velocity and position polynomials with the
/// gravity/Coriolis integrals rebuilt from the current iterate each pass and
/// the navigation rotation applied through the sigma_n polynomial.
inline void velocity_position_fiter(const ImuBatch& batch, const NavState& state,
                                    const EarthModel& model, const FiterConfig& cfg,
                                    FiterSolution& sol) {
  const double T = batch.duration;
  const int n = batch.samples();
  const int vtr = cfg.vel_trunc(n);
  const int ptr = cfg.pos_trunc(n);
  const int max_iter = cfg.velocity_iters(n);
  const Cheb3 f = cheb_fit_from_increments(batch.velocity_increments, 0.0, T);
  const Cheb3& sigma = sol.sigma_body;

  // body-frame integrand f + A(s^2) sigma x f + B(s^2) sigma x (sigma x f),
  // rotated once into navigation axes of the interval start
  const Cheb1 a = cheb_apply_even_series(sinc_series_d(), sigma, vtr);
  const Cheb1 b = cheb_apply_even_series(versine_series_d(), sigma, vtr);
  const Cheb3 sxf = cheb_cross(sigma, f, vtr);
  Cheb3 integrand_body =
      f + cheb_mul(a, sxf, vtr) + cheb_mul(b, cheb_cross(sigma, sxf, vtr), vtr);
  const Eigen::Matrix3d c0 = state.attitude.dcm();
  std::vector<Eigen::Vector3d> rotated(integrand_body.size());
  for (std::size_t k = 0; k < integrand_body.size(); ++k)
    rotated[k] = c0 * integrand_body[k];
  const Cheb3 w(0.0, T, std::move(rotated));

  const Eigen::Vector3d p0(state.latitude, state.height, state.longitude);
  Cheb3 v_iter(0.0, T, {state.velocity});
  Cheb3 p_iter(0.0, T, {p0});
  Cheb3 sigma_n(0.0, T);

  for (int m = 0; m < max_iter; ++m) {
    const auto earth =
        detail::fit_earth_chebs(model, state, v_iter, p_iter, T, cfg.gravity_fit_degree);
    sigma_n = (earth.omega_ie + earth.omega_en).integrate().truncate(ptr);
    // u with the in-interval navigation rotation unwound
    const Cheb3 snw = cheb_cross(sigma_n, w, vtr);
    const Cheb3 u = (w - snw + 0.5 * cheb_cross(sigma_n, snw, vtr)).integrate().truncate(vtr);
    const Cheb3 coriolis =
        cheb_cross(2.0 * earth.omega_ie + earth.omega_en, v_iter, vtr);
    Cheb3 v_next = Cheb3(0.0, T, {state.velocity}) + u +
                   (earth.gravity - coriolis).integrate().truncate(vtr);

    // position rates through the curvature mapping, refit and integrated
    const auto nodes = cheb_nodes(ptr + 1, 0.0, T);
    std::vector<std::pair<double, Eigen::Vector3d>> rate_samples;
    rate_samples.reserve(nodes.size());
    for (const double t : nodes) {
      const Eigen::Vector3d p = p_iter.eval(t);
      rate_samples.emplace_back(t, position_rates(model, p[0], p[1], v_next.eval(t)));
    }
    const Cheb3 rates = cheb_fit(rate_samples, std::max(ptr - 1, 0), 0.0, T);
    Cheb3 p_next = Cheb3(0.0, T, {p0}) + rates.integrate().truncate(ptr);

    const double res = std::max(detail::max_coeff_change(v_next, v_iter),
                                detail::max_coeff_change(p_next, p_iter));
    v_iter = std::move(v_next);
    p_iter = std::move(p_next);
    sol.velocity_residual_history.push_back(res);
    sol.velocity_iterations = m + 1;
    sol.velocity_residual = res;
    if (res <= cfg.tolerance) {
      sol.velocity_converged = true;
      break;
    }
  }
  sol.velocity = v_iter;
  sol.position = p_iter;
  sol.sigma_nav = sigma_n;
}

/// One full navigation step by functional iteration.
inline NavState fiter_step(const NavState& state, const ImuBatch& batch,
                           const EarthModel& model, const FiterConfig& cfg,
                           FiterSolution* diagnostics = nullptr) {
  FiterSolution sol = attitude_fiter(batch, cfg);
  velocity_position_fiter(batch, state, model, cfg, sol);
  const double T = batch.duration;
  NavState next = state;
  next.attitude = quat_from_rotvec(sol.sigma_nav.eval(T)).conjugate() * state.attitude *
                  quat_from_rotvec(sol.sigma_body.eval(T));
  next.velocity = sol.velocity.eval(T);
  const Eigen::Vector3d p = sol.position.eval(T);
  next.latitude = p[0];
  next.height = p[1];
  next.longitude = p[2];
  if (diagnostics != nullptr) *diagnostics = std::move(sol);
  return next;
}

}  // namespace navlab
