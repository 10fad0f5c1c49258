#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "navlab/rational.hpp"

namespace navlab {

/// 3-vector of exact rationals.
struct RVec3 {
  Rational x, y, z;

  RVec3() = default;
  RVec3(Rational x_, Rational y_, Rational z_)
      : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

  static RVec3 zero() { return {}; }

  const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  Rational& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

  friend RVec3 operator+(const RVec3& a, const RVec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend RVec3 operator-(const RVec3& a, const RVec3& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend RVec3 operator*(const Rational& c, const RVec3& v) {
    return {c * v.x, c * v.y, c * v.z};
  }
  RVec3 operator-() const { return {-x, -y, -z}; }
  friend bool operator==(const RVec3& a, const RVec3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline RVec3 cross(const RVec3& a, const RVec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Rational dot(const RVec3& a, const RVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Polynomial in t with exact rational coefficients; index k holds the t^k
/// coefficient. Trailing zero coefficients are allowed; equality ignores them.
class ScalarPoly {
 public:
  ScalarPoly() = default;
  explicit ScalarPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}
  ScalarPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) {}

  static ScalarPoly constant(Rational v) { return ScalarPoly({std::move(v)}); }

  std::size_t size() const { return c_.size(); }
  const Rational& operator[](std::size_t k) const { return c_[k]; }
  Rational& operator[](std::size_t k) { return c_[k]; }

  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  /// Highest power with a nonzero coefficient; -1 for the zero polynomial.
  int degree() const {
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
      if (!c_[k].is_zero()) return k;
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  friend ScalarPoly operator+(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend ScalarPoly operator-(const ScalarPoly& a, const ScalarPoly& b) {
    ScalarPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend ScalarPoly operator*(const Rational& s, const ScalarPoly& p) {
    ScalarPoly r = p;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    ScalarPoly r;
    r.c_.resize(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }

  friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t k = 0; k < n; ++k)
      if (a.coeff(k) != b.coeff(k)) return false;
    return true;
  }

  /// Antiderivative with zero constant term.
  ScalarPoly integrate() const {
    ScalarPoly r;
    r.c_.resize(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k)
      r.c_[k + 1] = c_[k] / Rational(static_cast<long long>(k + 1));
    return r;
  }

  ScalarPoly derivative() const {
    ScalarPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      r.c_[k - 1] = Rational(static_cast<long long>(k)) * c_[k];
    return r;
  }

  /// Drops every coefficient of t^k with k > dmax.
  ScalarPoly truncate(int dmax) const {
    ScalarPoly r = *this;
    if (static_cast<int>(r.c_.size()) > dmax + 1) r.c_.resize(dmax + 1);
    return r;
  }

  Rational eval(const Rational& t) const {
    Rational acc(0);
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
  }

 private:
  std::vector<Rational> c_;
};

/// Polynomial in t whose coefficients are exact rational 3-vectors.
class VecPoly {
 public:
  VecPoly() = default;
  explicit VecPoly(std::vector<RVec3> coeffs) : c_(std::move(coeffs)) {}
  VecPoly(std::initializer_list<RVec3> coeffs) : c_(coeffs) {}

  std::size_t size() const { return c_.size(); }
  const RVec3& operator[](std::size_t k) const { return c_[k]; }
  RVec3& operator[](std::size_t k) { return c_[k]; }

  RVec3 coeff(std::size_t k) const { return k < c_.size() ? c_[k] : RVec3::zero(); }

  int degree() const {
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
      if (!c_[k].is_zero()) return k;
    return -1;
  }

  bool is_zero() const { return degree() < 0; }

  friend VecPoly operator+(const VecPoly& a, const VecPoly& b) {
    VecPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend VecPoly operator-(const VecPoly& a, const VecPoly& b) {
    VecPoly r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend VecPoly operator*(const Rational& s, const VecPoly& p) {
    VecPoly r = p;
    for (auto& c : r.c_) c = s * c;
    return r;
  }
  friend bool operator==(const VecPoly& a, const VecPoly& b) {
    const std::size_t n = std::max(a.c_.size(), b.c_.size());
    for (std::size_t k = 0; k < n; ++k)
      if (!(a.coeff(k) == b.coeff(k))) return false;
    return true;
  }

  /// P + c*Q, coefficient-wise.
  static VecPoly linear(const VecPoly& p, const VecPoly& q, const Rational& c) {
    return p + c * q;
  }

  ScalarPoly component(int axis) const {
    std::vector<Rational> v(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] = c_[k][axis];
    return ScalarPoly(std::move(v));
  }

  static VecPoly from_components(const ScalarPoly& x, const ScalarPoly& y,
                                 const ScalarPoly& z) {
    const std::size_t n = std::max({x.size(), y.size(), z.size()});
    std::vector<RVec3> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = {x.coeff(k), y.coeff(k), z.coeff(k)};
    return VecPoly(std::move(v));
  }

  ScalarPoly dot(const VecPoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<Rational> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        v[i + j] += navlab::dot(c_[i], o.c_[j]);
    return ScalarPoly(std::move(v));
  }

  VecPoly integrate() const {
    VecPoly r;
    r.c_.resize(c_.size() + 1);
    for (std::size_t k = 0; k < c_.size(); ++k)
      r.c_[k + 1] = (Rational(1) / Rational(static_cast<long long>(k + 1))) * c_[k];
    return r;
  }

  VecPoly derivative() const {
    VecPoly r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      r.c_[k - 1] = Rational(static_cast<long long>(k)) * c_[k];
    return r;
  }

  VecPoly truncate(int dmax) const {
    VecPoly r = *this;
    if (static_cast<int>(r.c_.size()) > dmax + 1) r.c_.resize(dmax + 1);
    return r;
  }

  RVec3 eval(const Rational& t) const {
    RVec3 acc;
    for (std::size_t k = c_.size(); k-- > 0;) acc = t * acc + c_[k];
    return acc;
  }

 private:
  std::vector<RVec3> c_;
};

/// Coefficient of t^k in P x Q is  sum_{i+j=k} P_i x Q_j.
inline VecPoly cross(const VecPoly& p, const VecPoly& q) {
  if (p.size() == 0 || q.size() == 0) return {};
  std::vector<RVec3> v(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) v[i + j] = v[i + j] + cross(p[i], q[j]);
  return VecPoly(std::move(v));
}

/// Product of a scalar polynomial and a vector polynomial.
inline VecPoly operator*(const ScalarPoly& s, const VecPoly& p) {
  if (s.size() == 0 || p.size() == 0) return {};
  std::vector<RVec3> v(s.size() + p.size() - 1);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) v[i + j] = v[i + j] + s[i] * p[j];
  return VecPoly(std::move(v));
}

}  // namespace navlab
