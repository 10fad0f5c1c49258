#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "navlab/poly3.hpp"

namespace navlab {

namespace detail {
template <class V>
struct ChebZero;
template <>
struct ChebZero<double> {
  static double value() { return 0.0; }
};
template <>
struct ChebZero<Eigen::Vector3d> {
  static Eigen::Vector3d value() { return Eigen::Vector3d::Zero(); }
};
}  // namespace detail

/// Chebyshev series (first kind) on [t0, t1]; coefficient k multiplies
/// T_k(x) with x the affine map of t onto [-1, 1].
template <class V>
class Cheb {
 public:
  Cheb(double t0, double t1) : t0_(t0), t1_(t1) {}
  Cheb(double t0, double t1, std::vector<V> c) : t0_(t0), t1_(t1), c_(std::move(c)) {}

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  std::size_t size() const { return c_.size(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  V coeff(std::size_t k) const { return k < c_.size() ? c_[k] : detail::ChebZero<V>::value(); }
  V& operator[](std::size_t k) { return c_[k]; }
  const V& operator[](std::size_t k) const { return c_[k]; }
  const std::vector<V>& coeffs() const { return c_; }

  double map(double t) const { return (2.0 * t - t0_ - t1_) / (t1_ - t0_); }

  V eval(double t) const {
    if (c_.empty()) return detail::ChebZero<V>::value();
    const double x = map(t);
    V b1 = detail::ChebZero<V>::value(), b2 = detail::ChebZero<V>::value();
    for (std::size_t k = c_.size(); k-- > 1;) {
      V b0 = 2.0 * x * b1 - b2 + c_[k];
      b2 = b1;
      b1 = b0;
    }
    return x * b1 - b2 + c_[0];
  }

  Cheb truncate(int dmax) const {
    Cheb r = *this;
    if (static_cast<int>(r.c_.size()) > dmax + 1) r.c_.resize(dmax + 1);
    return r;
  }

  /// Antiderivative vanishing at t0.
  Cheb integrate() const {
    const std::size_t n = c_.size();
    Cheb r(t0_, t1_);
    r.c_.assign(n + 1, detail::ChebZero<V>::value());
    for (std::size_t k = 0; k < n; ++k) {
      if (k == 0) {
        r.c_[1] += c_[0];
      } else if (k == 1) {
        r.c_[2] += 0.25 * c_[1];
      } else {
        r.c_[k + 1] += c_[k] / (2.0 * (k + 1));
        r.c_[k - 1] -= c_[k] / (2.0 * (k - 1));
      }
    }
    const double scale = 0.5 * (t1_ - t0_);
    for (auto& c : r.c_) c *= scale;
    // pin the constant term so the value at t0 (x = -1) is zero
    V at_start = detail::ChebZero<V>::value();
    double sign = -1.0;
    for (std::size_t k = 1; k < r.c_.size(); ++k) {
      at_start += sign * r.c_[k];
      sign = -sign;
    }
    r.c_[0] = -at_start;
    return r;
  }

  friend Cheb operator+(const Cheb& a, const Cheb& b) {
    a.check_interval(b);
    Cheb r(a.t0_, a.t1_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), detail::ChebZero<V>::value());
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend Cheb operator-(const Cheb& a, const Cheb& b) {
    a.check_interval(b);
    Cheb r(a.t0_, a.t1_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), detail::ChebZero<V>::value());
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend Cheb operator*(double s, const Cheb& p) {
    Cheb r = p;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  void check_interval(const Cheb& o) const {
    if (t0_ != o.t0_ || t1_ != o.t1_)
      throw std::invalid_argument("Cheb: operands live on different intervals");
  }

 private:
  double t0_, t1_;
  std::vector<V> c_;
};

using Cheb1 = Cheb<double>;
using Cheb3 = Cheb<Eigen::Vector3d>;

namespace detail {
// T_i T_j = (T_{i+j} + T_{|i-j|}) / 2, applied coefficient-wise.
template <class A, class B, class R, class Prod>
Cheb<R> cheb_product(const Cheb<A>& a, const Cheb<B>& b, int trunc, Prod prod) {
  if (a.t0() != b.t0() || a.t1() != b.t1())
    throw std::invalid_argument("Cheb: operands live on different intervals");
  Cheb<R> r(a.t0(), a.t1());
  if (a.size() == 0 || b.size() == 0) return r;
  std::vector<R> c(std::min<std::size_t>(a.size() + b.size() - 1, trunc + 1),
                   ChebZero<R>::value());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const R p = prod(a[i], b[j]);
      const std::size_t hi = i + j;
      const std::size_t lo = i > j ? i - j : j - i;
      if (hi < c.size()) c[hi] += 0.5 * p;
      if (lo < c.size()) c[lo] += 0.5 * p;
    }
  }
  return Cheb<R>(a.t0(), a.t1(), std::move(c));
}
}  // namespace detail

inline Cheb1 cheb_mul(const Cheb1& a, const Cheb1& b, int trunc) {
  return detail::cheb_product<double, double, double>(
      a, b, trunc, [](double x, double y) { return x * y; });
}

inline Cheb3 cheb_mul(const Cheb1& a, const Cheb3& b, int trunc) {
  return detail::cheb_product<double, Eigen::Vector3d, Eigen::Vector3d>(
      a, b, trunc, [](double x, const Eigen::Vector3d& y) { return (x * y).eval(); });
}

inline Cheb3 cheb_cross(const Cheb3& a, const Cheb3& b, int trunc) {
  return detail::cheb_product<Eigen::Vector3d, Eigen::Vector3d, Eigen::Vector3d>(
      a, b, trunc,
      [](const Eigen::Vector3d& x, const Eigen::Vector3d& y) { return x.cross(y).eval(); });
}

inline Cheb1 cheb_dot(const Cheb3& a, const Cheb3& b, int trunc) {
  return detail::cheb_product<Eigen::Vector3d, Eigen::Vector3d, double>(
      a, b, trunc,
      [](const Eigen::Vector3d& x, const Eigen::Vector3d& y) { return x.dot(y); });
}

/// Even-series substitution w = |p(t)|^2 in the Chebyshev basis.
inline Cheb1 cheb_apply_even_series(const Poly1& series, const Cheb3& p, int trunc) {
  const Cheb1 w = cheb_dot(p, p, trunc);
  Cheb1 result(p.t0(), p.t1(), std::vector<double>{series.coeff(0)});
  Cheb1 wk(p.t0(), p.t1(), std::vector<double>{1.0});
  for (std::size_t k = 1; k < series.size(); ++k) {
    wk = cheb_mul(wk, w, trunc);
    result = result + series[k] * wk;
  }
  return result.truncate(trunc);
}

/// Chebyshev-Gauss nodes mapped onto [t0, t1].
inline std::vector<double> cheb_nodes(int count, double t0, double t1) {
  std::vector<double> t(count);
  for (int i = 0; i < count; ++i) {
    const double x = std::cos(M_PI * (i + 0.5) / count);
    t[i] = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x;
  }
  return t;
}

namespace detail {
inline Eigen::MatrixXd cheb_design_matrix(const std::vector<double>& ts, int degree,
                                          double t0, double t1) {
  Eigen::MatrixXd m(ts.size(), degree + 1);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = (2.0 * ts[i] - t0 - t1) / (t1 - t0);
    double tk2 = 1.0, tk1 = x;
    for (int j = 0; j <= degree; ++j) {
      if (j == 0)
        m(i, j) = 1.0;
      else if (j == 1)
        m(i, j) = x;
      else {
        const double tk = 2.0 * x * tk1 - tk2;
        m(i, j) = tk;
        tk2 = tk1;
        tk1 = tk;
      }
    }
  }
  return m;
}
}  // namespace detail

/// Least-squares fit of sampled values; interpolation when the sample count
/// equals degree+1. Requires degree < number of samples.
inline Cheb3 cheb_fit(const std::vector<std::pair<double, Eigen::Vector3d>>& samples,
                      int degree, double t0, double t1) {
  if (degree + 1 > static_cast<int>(samples.size()))
    throw std::invalid_argument("cheb_fit: degree must be below the sample count");
  std::vector<double> ts(samples.size());
  Eigen::MatrixXd rhs(samples.size(), 3);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ts[i] = samples[i].first;
    rhs.row(i) = samples[i].second.transpose();
  }
  const Eigen::MatrixXd m = detail::cheb_design_matrix(ts, degree, t0, t1);
  const Eigen::MatrixXd sol = m.householderQr().solve(rhs);
  std::vector<Eigen::Vector3d> c(degree + 1);
  for (int j = 0; j <= degree; ++j) c[j] = sol.row(j).transpose();
  return Cheb3(t0, t1, std::move(c));
}

inline Cheb1 cheb_fit_scalar(const std::vector<std::pair<double, double>>& samples,
                             int degree, double t0, double t1) {
  if (degree + 1 > static_cast<int>(samples.size()))
    throw std::invalid_argument("cheb_fit: degree must be below the sample count");
  std::vector<double> ts(samples.size());
  Eigen::VectorXd rhs(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    ts[i] = samples[i].first;
    rhs(i) = samples[i].second;
  }
  const Eigen::MatrixXd m = detail::cheb_design_matrix(ts, degree, t0, t1);
  const Eigen::VectorXd sol = m.householderQr().solve(rhs);
  return Cheb1(t0, t1, std::vector<double>(sol.data(), sol.data() + sol.size()));
}

/// Degree-(N-1) Chebyshev fit whose integral over each of the N equal
/// subintervals of [t0, t1] reproduces the given increments (moment matching
/// on the Chebyshev basis).
inline Cheb3 cheb_fit_from_increments(const std::vector<Eigen::Vector3d>& increments,
                                      double t0, double t1) {
  const int n = static_cast<int>(increments.size());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> unit(j + 1, 0.0);
    unit[j] = 1.0;
    const Cheb1 anti = Cheb1(t0, t1, std::move(unit)).integrate();
    for (int k = 0; k < n; ++k) {
      const double a = t0 + (t1 - t0) * k / n;
      const double b = t0 + (t1 - t0) * (k + 1) / n;
      m(k, j) = anti.eval(b) - anti.eval(a);
    }
  }
  Eigen::MatrixXd rhs(n, 3);
  for (int k = 0; k < n; ++k) rhs.row(k) = increments[k].transpose();
  const Eigen::MatrixXd sol = m.partialPivLu().solve(rhs);
  std::vector<Eigen::Vector3d> c(n);
  for (int j = 0; j < n; ++j) c[j] = sol.row(j).transpose();
  return Cheb3(t0, t1, std::move(c));
}

/// Monomial re-expansion in t (test/diagnostic helper).
inline Poly3 cheb_to_monomial(const Cheb3& p) {
  const double alpha = 2.0 / (p.t1() - p.t0());
  const double beta = -(p.t0() + p.t1()) / (p.t1() - p.t0());
  const Poly1 x(std::vector<double>{beta, alpha});
  Poly1 tk2 = Poly1::constant(1.0);
  Poly1 tk1 = x;
  Poly3 out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    Poly1 tk;
    if (k == 0)
      tk = tk2;
    else if (k == 1)
      tk = tk1;
    else {
      tk = 2.0 * (x * tk1) + (-1.0) * tk2;
      tk2 = tk1;
      tk1 = tk;
    }
    out = out + tk * Poly3({p[k]});
  }
  return out;
}

}  // namespace navlab
