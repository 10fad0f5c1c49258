#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "navlab/earth.hpp"
#include "navlab/fiter.hpp"
#include "navlab/strapdown.hpp"

namespace navlab {

/// Varying-speed coning flight: eastward acceleration a*sin(w t) on the
/// equator plus a classical coning attitude motion relative to the navigation
/// frame. Everything about the truth is closed-form.
struct ScenarioConfig {
  double coning_angle_deg = 10.0;
  double coning_freq_hz = 0.037;
  double sample_rate_hz = 100.0;
  int samples_per_update = 2;
  double initial_speed = 500.0;      // m/s eastward
  double accel_magnitude = 10.0;     // m/s^2
  double accel_freq = 0.02;          // rad/s
  double duration = 600.0;           // s
  int quadrature_points = 10;        // per subinterval, for the velocity increments
  EarthModel earth;

  double update_interval() const { return samples_per_update / sample_rate_hz; }
};

struct TruthSample {
  double t = 0.0;
  Quaternion attitude;  // q_b^n
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  double latitude = 0.0, longitude = 0.0, height = 0.0;
  Eigen::Vector3d omega_nb_b = Eigen::Vector3d::Zero();

  NavState state() const { return {attitude, velocity, latitude, longitude, height}; }
};

namespace detail {
/// q_n^b of the coning motion (the published parameterization).
inline Quaternion coning_quaternion(double half_angle, double phase) {
  Quaternion q;
  q.s = std::cos(half_angle);
  q.eta = std::sin(half_angle) * Eigen::Vector3d(0.0, std::cos(phase), std::sin(phase));
  return q;
}
}  // namespace detail

inline TruthSample truth_at(const ScenarioConfig& cfg, double t) {
  TruthSample s;
  s.t = t;
  const double zeta = cfg.coning_angle_deg * M_PI / 180.0;
  const double big_omega = 2.0 * M_PI * cfg.coning_freq_hz;
  const Quaternion q_nb = detail::coning_quaternion(0.5 * zeta, big_omega * t);
  s.attitude = q_nb.conjugate();
  // omega of b relative to n in body axes; constant magnitude 2*Omega*sin(zeta/2)
  const double sz = std::sin(0.5 * zeta);
  s.omega_nb_b = Eigen::Vector3d(-2.0 * big_omega * sz * sz,
                                 big_omega * std::sin(zeta) * std::sin(big_omega * t),
                                 -big_omega * std::sin(zeta) * std::cos(big_omega * t));
  const double w = cfg.accel_freq;
  double ve, lon;
  if (w > 0.0) {
    ve = cfg.initial_speed + cfg.accel_magnitude / w * (1.0 - std::cos(w * t));
    lon = (cfg.initial_speed * t + cfg.accel_magnitude / w * (t - std::sin(w * t) / w)) /
          cfg.earth.radius;
  } else {
    ve = cfg.initial_speed;
    lon = cfg.initial_speed * t / cfg.earth.radius;
  }
  s.velocity = Eigen::Vector3d(0.0, 0.0, ve);
  s.latitude = 0.0;
  s.longitude = lon;
  s.height = 0.0;
  return s;
}

namespace detail {

inline Quaternion ecef_to_inertial(const ScenarioConfig& cfg, double t) {
  const double half = 0.5 * cfg.earth.rate * t;
  Quaternion q;
  q.s = std::cos(half);
  q.eta = Eigen::Vector3d(0.0, 0.0, std::sin(half));
  return q;
}

inline Quaternion nav_to_ecef(double latitude, double longitude) {
  const double sl = std::sin(latitude), cl = std::cos(latitude);
  const double so = std::sin(longitude), co = std::cos(longitude);
  Eigen::Matrix3d c;
  c.col(0) = Eigen::Vector3d(-sl * co, -sl * so, cl);   // North
  c.col(1) = Eigen::Vector3d(cl * co, cl * so, sl);     // Up
  c.col(2) = Eigen::Vector3d(-so, co, 0.0);             // East
  return quat_from_dcm(c);
}

inline Quaternion body_to_inertial(const ScenarioConfig& cfg, double t) {
  const TruthSample s = truth_at(cfg, t);
  return ecef_to_inertial(cfg, t) * nav_to_ecef(s.latitude, s.longitude) * s.attitude;
}

/// Specific force in body axes from the closed-form truth.
inline Eigen::Vector3d specific_force_body(const ScenarioConfig& cfg, double t) {
  const TruthSample s = truth_at(cfg, t);
  const EarthRates rates = earth_rates(cfg.earth, s.state());
  const Eigen::Vector3d accel(0.0, 0.0, cfg.accel_magnitude * std::sin(cfg.accel_freq * t));
  const Eigen::Vector3d f_nav =
      accel + (2.0 * rates.omega_ie + rates.omega_en).cross(s.velocity) - rates.gravity;
  return s.attitude.conjugate().rotate(f_nav);
}

}  // namespace detail

/// Ideal IMU over [t0, t0+T]: exact body rotation-vector increments from the
/// relative attitude (inertial chain), and specific-force integrals by
/// Gauss-Legendre quadrature per subinterval.
inline ImuBatch synth_imu(const ScenarioConfig& cfg, double t0, double T, int samples) {
  ImuBatch batch;
  batch.duration = T;
  const double h = T / samples;
  const auto rule = detail::gauss_legendre(cfg.quadrature_points);
  for (int k = 0; k < samples; ++k) {
    const double a = t0 + k * h, b = a + h;
    const Quaternion rel =
        detail::body_to_inertial(cfg, a).conjugate() * detail::body_to_inertial(cfg, b);
    batch.angle_increments.push_back(rotvec_from_quat(rel));
    Eigen::Vector3d dv = Eigen::Vector3d::Zero();
    for (std::size_t j = 0; j < rule.nodes.size(); ++j)
      dv += rule.weights[j] * h * detail::specific_force_body(cfg, a + rule.nodes[j] * h);
    batch.velocity_increments.push_back(dv);
  }
  return batch;
}

struct ErrorRecord {
  double t = 0.0;
  std::string algorithm;
  double att_err_rad = 0.0;
  double vel_err_mps = 0.0;
  double pos_err_m = 0.0;
  double we_pos_err_m = 0.0;  // signed west-east component
  bool nonconverged = false;
};

namespace detail {
inline ErrorRecord make_record(const ScenarioConfig& cfg, double t, const std::string& label,
                               const NavState& est, bool nonconverged) {
  const TruthSample truth = truth_at(cfg, t);
  ErrorRecord r;
  r.t = t;
  r.algorithm = label;
  r.nonconverged = nonconverged;
  r.att_err_rad = principal_angle(est.attitude, truth.attitude);
  r.vel_err_mps = (est.velocity - truth.velocity).norm();
  const double rh = cfg.earth.radius + truth.height;
  const double dn = (est.latitude - truth.latitude) * rh;
  const double du = est.height - truth.height;
  const double de = (est.longitude - truth.longitude) * rh * std::cos(truth.latitude);
  r.pos_err_m = Eigen::Vector3d(dn, du, de).norm();
  r.we_pos_err_m = de;
  return r;
}
}  // namespace detail

/// Sequential fold of one variant from the truth-initialized state; one error
/// record per update epoch.
inline std::vector<ErrorRecord> run_variant(const ScenarioConfig& cfg,
                                            const AlgoVariant& variant) {
  if (!variant.valid())
    throw std::invalid_argument("run_variant: invalid attitude/velocity combination");
  const double T = cfg.update_interval();
  const long steps = std::lround(cfg.duration / T);
  std::vector<ErrorRecord> records;
  records.reserve(steps);
  NavState state = truth_at(cfg, 0.0).state();
  FiterConfig fcfg;
  const bool use_fiter = variant.attitude == AttitudeScheme::Fiter;
  for (long k = 0; k < steps; ++k) {
    const double t0 = k * T;
    const ImuBatch batch = synth_imu(cfg, t0, T, cfg.samples_per_update);
    bool flagged = false;
    if (use_fiter) {
      FiterSolution diag;
      state = fiter_step(state, batch, cfg.earth, fcfg, &diag);
      flagged = !diag.converged();
    } else {
      state = strapdown_step(state, batch, cfg.earth, variant);
    }
    records.push_back(detail::make_record(cfg, t0 + T, variant.label, state, flagged));
  }
  return records;
}

inline std::vector<ErrorRecord> run_scenario(const ScenarioConfig& cfg,
                                             const std::vector<AlgoVariant>& variants) {
  std::vector<ErrorRecord> all;
  for (const auto& v : variants) {
    auto r = run_variant(cfg, v);
    all.insert(all.end(), r.begin(), r.end());
  }
  return all;
}

struct SweepRow {
  double fc_hz = 0.0;
  double rel_freq = 0.0;
  std::string algorithm;
  double max_att_err_rad = 0.0;
  double max_vel_err_mps = 0.0;
  double max_pos_err_m = 0.0;
  double max_we_pos_err_m = 0.0;
  bool nonconverged = false;
};

inline SweepRow summarize(const ScenarioConfig& cfg, const std::vector<ErrorRecord>& records,
                          const std::string& label) {
  SweepRow row;
  row.fc_hz = cfg.coning_freq_hz;
  row.rel_freq = cfg.coning_freq_hz / cfg.sample_rate_hz;
  row.algorithm = label;
  for (const auto& r : records) {
    if (r.algorithm != label) continue;
    row.max_att_err_rad = std::max(row.max_att_err_rad, r.att_err_rad);
    row.max_vel_err_mps = std::max(row.max_vel_err_mps, r.vel_err_mps);
    row.max_pos_err_m = std::max(row.max_pos_err_m, r.pos_err_m);
    row.max_we_pos_err_m = std::max(row.max_we_pos_err_m, std::abs(r.we_pos_err_m));
    row.nonconverged = row.nonconverged || r.nonconverged;
  }
  return row;
}

/// One summary row per (coning frequency, variant). Frequency points run
/// concurrently; rows are sorted before emission so output is deterministic.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::vector<double>& fcs,
                                   const std::vector<AlgoVariant>& variants,
                                   unsigned max_threads = 0) {
  std::vector<std::vector<SweepRow>> slots(fcs.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      std::min<unsigned>(max_threads > 0 ? max_threads : hw, fcs.size());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < fcs.size(); i = next.fetch_add(1)) {
        ScenarioConfig cfg = base;
        cfg.coning_freq_hz = fcs[i];
        const auto records = run_scenario(cfg, variants);
        for (const auto& v : variants) slots[i].push_back(summarize(cfg, records, v.label));
      }
    });
  }
  for (auto& t : pool) t.join();
  std::vector<SweepRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.fc_hz != b.fc_hz ? a.fc_hz < b.fc_hz : a.algorithm < b.algorithm;
  });
  return rows;
}

// --- CSV emission (full round-trip decimal form) ----------------------------

namespace detail {
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

inline std::string records_csv(const std::vector<ErrorRecord>& records) {
  std::string out = "t,algorithm,att_err_rad,vel_err_mps,pos_err_m,we_pos_err_m\n";
  for (const auto& r : records) {
    out += detail::fmt_double(r.t);
    out += ',' + r.algorithm;
    out += ',' + detail::fmt_double(r.att_err_rad);
    out += ',' + detail::fmt_double(r.vel_err_mps);
    out += ',' + detail::fmt_double(r.pos_err_m);
    out += ',' + detail::fmt_double(r.we_pos_err_m);
    out += '\n';
  }
  return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "fc_hz,rel_freq,algorithm,max_att_err_rad,max_vel_err_mps,max_pos_err_m,"
      "max_we_pos_err_m\n";
  for (const auto& r : rows) {
    out += detail::fmt_double(r.fc_hz);
    out += ',' + detail::fmt_double(r.rel_freq);
    out += ',' + r.algorithm;
    out += ',' + detail::fmt_double(r.max_att_err_rad);
    out += ',' + detail::fmt_double(r.max_vel_err_mps);
    out += ',' + detail::fmt_double(r.max_pos_err_m);
    out += ',' + detail::fmt_double(r.max_we_pos_err_m);
    out += '\n';
  }
  return out;
}

}  // namespace navlab
