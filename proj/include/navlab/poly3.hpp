#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <vector>

namespace navlab {

/// Scalar polynomial in t, double coefficients (numeric twin of ScalarPoly).
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<double> c) : c_(std::move(c)) {}
  static Poly1 constant(double v) { return Poly1({v}); }

  std::size_t size() const { return c_.size(); }
  double coeff(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  double& operator[](std::size_t k) { return c_[k]; }
  double operator[](std::size_t k) const { return c_[k]; }

  friend Poly1 operator+(const Poly1& a, const Poly1& b) {
    Poly1 r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Poly1 operator*(double s, const Poly1& p) {
    Poly1 r = p;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    Poly1 r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }

  Poly1 truncate(int dmax) const {
    Poly1 r = *this;
    if (static_cast<int>(r.c_.size()) > dmax + 1) r.c_.resize(dmax + 1);
    return r;
  }

  Poly1 integrate() const {
    Poly1 r;
    r.c_.resize(c_.size() + 1, 0.0);
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k + 1] = c_[k] / double(k + 1);
    return r;
  }

  double eval(double t) const {
    double acc = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

 private:
  std::vector<double> c_;
};

/// Vector-valued polynomial in t, Vector3d coefficients.
class Poly3 {
 public:
  Poly3() = default;
  explicit Poly3(std::vector<Eigen::Vector3d> c) : c_(std::move(c)) {}

  std::size_t size() const { return c_.size(); }
  Eigen::Vector3d coeff(std::size_t k) const {
    return k < c_.size() ? c_[k] : Eigen::Vector3d::Zero();
  }
  Eigen::Vector3d& operator[](std::size_t k) { return c_[k]; }
  const Eigen::Vector3d& operator[](std::size_t k) const { return c_[k]; }

  friend Poly3 operator+(const Poly3& a, const Poly3& b) {
    Poly3 r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Eigen::Vector3d::Zero());
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Poly3 operator-(const Poly3& a, const Poly3& b) {
    Poly3 r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Eigen::Vector3d::Zero());
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend Poly3 operator*(double s, const Poly3& p) {
    Poly3 r = p;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  Poly3 truncate(int dmax) const {
    Poly3 r = *this;
    if (static_cast<int>(r.c_.size()) > dmax + 1) r.c_.resize(dmax + 1);
    return r;
  }

  Poly3 integrate() const {
    Poly3 r;
    r.c_.resize(c_.size() + 1, Eigen::Vector3d::Zero());
    for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k + 1] = c_[k] / double(k + 1);
    return r;
  }

  Eigen::Vector3d eval(double t) const {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

  Poly1 dot(const Poly3& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<double> v(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i].dot(o.c_[j]);
    return Poly1(std::move(v));
  }

 private:
  std::vector<Eigen::Vector3d> c_;
};

inline Poly3 cross(const Poly3& p, const Poly3& q) {
  if (p.size() == 0 || q.size() == 0) return {};
  std::vector<Eigen::Vector3d> v(p.size() + q.size() - 1, Eigen::Vector3d::Zero());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) v[i + j] += p[i].cross(q[j]);
  return Poly3(std::move(v));
}

inline Poly3 operator*(const Poly1& s, const Poly3& p) {
  if (s.size() == 0 || p.size() == 0) return {};
  std::vector<Eigen::Vector3d> v(s.size() + p.size() - 1, Eigen::Vector3d::Zero());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) v[i + j] += s[i] * p[j];
  return Poly3(std::move(v));
}

/// Numeric even-series substitution w = |p(t)|^2, truncated at dmax.
inline Poly1 apply_even_series(const Poly1& series, const Poly3& p, int dmax) {
  const Poly1 w = p.dot(p).truncate(dmax);
  Poly1 result = Poly1::constant(series.coeff(0));
  Poly1 wk = Poly1::constant(1.0);
  for (std::size_t k = 1; k < series.size(); ++k) {
    wk = (wk * w).truncate(dmax);
    result = result + series[k] * wk;
  }
  return result.truncate(dmax);
}

struct IncrementFit {
  Poly3 poly;
  double condition = 1.0;  // moment-matrix condition estimate
};

/// Degree-(N-1) polynomial whose integral over the k-th of N equal
/// subintervals of [0, T] reproduces the k-th increment exactly.
/// Solved on the unit interval for conditioning, then rescaled.
inline IncrementFit fit_polynomial_from_increments(
    const std::vector<Eigen::Vector3d>& increments, double T) {
  const int n = static_cast<int>(increments.size());
  Eigen::MatrixXd m(n, n);
  for (int k = 0; k < n; ++k) {
    const double a = double(k) / n, b = double(k + 1) / n;
    double pa = a, pb = b;
    for (int j = 0; j < n; ++j) {
      m(k, j) = (pb - pa) / double(j + 1);
      pa *= a;
      pb *= b;
    }
  }
  Eigen::MatrixXd rhs(n, 3);
  for (int k = 0; k < n; ++k) rhs.row(k) = increments[k].transpose() / T;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::MatrixXd sol = svd.solve(rhs);
  IncrementFit fit;
  fit.condition = svd.singularValues()(0) / svd.singularValues()(n - 1);
  std::vector<Eigen::Vector3d> coeffs(n);
  double scale = 1.0;
  for (int j = 0; j < n; ++j) {
    coeffs[j] = sol.row(j).transpose() / scale;  // tau^j -> t^j / T^j
    scale *= T;
  }
  fit.poly = Poly3(std::move(coeffs));
  return fit;
}

}  // namespace navlab
