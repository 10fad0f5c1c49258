#pragma once

#include <Eigen/Dense>

#include <cmath>

#include "navlab/quaternion.hpp"

namespace navlab {

/// Navigation frame is North-Up-East throughout: axis 0 north, 1 up, 2 east.

struct NavState {
  Quaternion attitude;                               // q_b^n
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();  // m/s, NUE
  double latitude = 0.0;   // rad
  double longitude = 0.0;  // rad
  double height = 0.0;     // m
};

/// Spherical Earth by default; the truth generator and the navigator always
/// share one instance, so algorithm-relative accuracy does not depend on the
/// model choice.
struct EarthModel {
  double radius = 6378137.0;        // m
  double rate = 7.2921151467e-5;    // rad/s
  double gravity = 9.8;             // m/s^2
  bool latitude_gravity = false;    // normal-gravity formula instead of the constant

  double gravity_at(double latitude, double height) const {
    if (!latitude_gravity) return gravity;
    const double s2 = std::sin(latitude) * std::sin(latitude);
    const double g0 = 9.7803253359 * (1.0 + 0.00193185265241 * s2) /
                      std::sqrt(1.0 - 0.00669437999014 * s2);
    return g0 * (1.0 - 2.0 * height / radius);
  }
};

struct EarthRates {
  Eigen::Vector3d omega_ie = Eigen::Vector3d::Zero();  // rad/s, NUE
  Eigen::Vector3d omega_en = Eigen::Vector3d::Zero();  // rad/s, NUE
  Eigen::Vector3d gravity = Eigen::Vector3d::Zero();   // m/s^2, NUE

  Eigen::Vector3d omega_in() const { return omega_ie + omega_en; }
};

/// omega_ie = rate*(cos L, sin L, 0); transport rate from the spherical model;
/// gravity along -Up.
inline EarthRates earth_rates(const EarthModel& model, const NavState& state) {
  EarthRates r;
  const double cl = std::cos(state.latitude), sl = std::sin(state.latitude);
  r.omega_ie = model.rate * Eigen::Vector3d(cl, sl, 0.0);
  const double rh = model.radius + state.height;
  const double vn = state.velocity[0], ve = state.velocity[2];
  r.omega_en = Eigen::Vector3d(ve / rh, ve * sl / (cl * rh), -vn / rh);
  r.gravity = Eigen::Vector3d(0.0, -model.gravity_at(state.latitude, state.height), 0.0);
  return r;
}

/// Position kinematics: dL/dt = vN/(R+h), dlon/dt = vE/((R+h) cos L), dh/dt = vU.
inline Eigen::Vector3d position_rates(const EarthModel& model, double latitude, double height,
                                      const Eigen::Vector3d& velocity) {
  const double rh = model.radius + height;
  return {velocity[0] / rh, velocity[1], velocity[2] / (rh * std::cos(latitude))};
  // returned as (dlat, dh, dlon) matching the (N, U, E) velocity layout
}

}  // namespace navlab
