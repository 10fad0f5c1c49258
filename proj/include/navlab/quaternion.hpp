#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace navlab {

/// Unit attitude quaternion stored as scalar part s and vector part eta.
/// Composition is Hamilton's product; q and -q represent the same attitude,
/// and comparisons go through canonical() (s >= 0).
struct Quaternion {
  double s = 1.0;
  Eigen::Vector3d eta = Eigen::Vector3d::Zero();

  static Quaternion identity() { return {}; }

  double norm() const { return std::sqrt(s * s + eta.squaredNorm()); }

  Quaternion normalized() const {
    const double n = norm();
    return {s / n, eta / n};
  }

  Quaternion conjugate() const { return {s, -eta}; }

  Quaternion canonical() const { return s < 0.0 ? Quaternion{-s, -eta} : *this; }

  /// Hamilton product, renormalized.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    Quaternion r;
    r.s = a.s * b.s - a.eta.dot(b.eta);
    r.eta = a.s * b.eta + b.s * a.eta + a.eta.cross(b.eta);
    return r.normalized();
  }

  /// Rotates v by this quaternion (the action of the DCM built from it).
  Eigen::Vector3d rotate(const Eigen::Vector3d& v) const {
    return (s * s - eta.squaredNorm()) * v + 2.0 * eta.dot(v) * eta +
           2.0 * s * eta.cross(v);
  }

  Eigen::Matrix3d dcm() const {
    Eigen::Matrix3d m;
    m.col(0) = rotate(Eigen::Vector3d::UnitX());
    m.col(1) = rotate(Eigen::Vector3d::UnitY());
    m.col(2) = rotate(Eigen::Vector3d::UnitZ());
    return m;
  }
};

// Below ~1e-7 rad the closed forms 0/0; four series terms keep ~1e-15
// relative accuracy there.
inline constexpr double kSmallAngle = 1e-7;

/// q = [cos(s/2), (sigma/s) sin(s/2)].
inline Quaternion quat_from_rotvec(const Eigen::Vector3d& sigma) {
  const double s2 = sigma.squaredNorm();
  Quaternion q;
  if (s2 < kSmallAngle * kSmallAngle) {
    // sin(s/2)/s = 1/2 - s^2/48 + s^4/3840 - s^6/645120
    const double k = 0.5 + s2 * (-1.0 / 48.0 + s2 * (1.0 / 3840.0 - s2 / 645120.0));
    q.s = 1.0 - s2 / 8.0 + s2 * s2 / 384.0 - s2 * s2 * s2 / 46080.0;
    q.eta = k * sigma;
  } else {
    const double angle = std::sqrt(s2);
    q.s = std::cos(0.5 * angle);
    q.eta = (std::sin(0.5 * angle) / angle) * sigma;
  }
  return q.normalized();
}

/// Rotation vector of the canonical form of q; magnitude in [0, pi].
inline Eigen::Vector3d rotvec_from_quat(const Quaternion& q_in) {
  const Quaternion q = q_in.canonical().normalized();
  const double n = q.eta.norm();
  if (n < 0.5 * kSmallAngle) {
    // sigma = 2 eta / s * (1 - |eta|^2/(3 s^2) + ...)
    const double r2 = (n * n) / (q.s * q.s);
    return (2.0 / q.s) * (1.0 - r2 / 3.0 + r2 * r2 / 5.0) * q.eta;
  }
  const double angle = 2.0 * std::atan2(n, q.s);
  return (angle / n) * q.eta;
}

/// Rotation angle of q_true^-1 (x) q_est, in [0, pi].
inline double principal_angle(const Quaternion& q_est, const Quaternion& q_true) {
  const Quaternion d = (q_true.conjugate() * q_est).canonical();
  const double n = d.eta.norm();
  return 2.0 * std::atan2(n, d.s);
}

inline Quaternion quat_from_dcm(const Eigen::Matrix3d& m) {
  Quaternion q;
  const double tr = m.trace();
  if (tr > 0.0) {
    const double w = std::sqrt(1.0 + tr);
    q.s = 0.5 * w;
    q.eta << (m(2, 1) - m(1, 2)), (m(0, 2) - m(2, 0)), (m(1, 0) - m(0, 1));
    q.eta *= 0.5 / w;
  } else {
    int i = 0;
    if (m(1, 1) > m(0, 0)) i = 1;
    if (m(2, 2) > m(i, i)) i = 2;
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const double w = std::sqrt(1.0 + m(i, i) - m(j, j) - m(k, k));
    q.eta[i] = 0.5 * w;
    q.s = 0.5 * (m(k, j) - m(j, k)) / w;
    q.eta[j] = 0.5 * (m(j, i) + m(i, j)) / w;
    q.eta[k] = 0.5 * (m(k, i) + m(i, k)) / w;
  }
  return q.normalized();
}

}  // namespace navlab
