#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "navlab/symbolic.hpp"

namespace navlab {

/// One labelled row of coefficients per algorithm; column k holds the exact
/// coefficient of t^(k+1) for the selected vector component.
struct CoefficientTable {
  std::string title;
  std::vector<std::pair<std::string, std::vector<Rational>>> rows;
  int columns = kDefaultDegreeCap;
};

namespace detail {
inline std::vector<Rational> row_of(const VecPoly& p, int axis, int columns) {
  std::vector<Rational> out(columns);
  for (int k = 1; k <= columns; ++k) out[k - 1] = p.coeff(k)[axis];
  return out;
}
}  // namespace detail

/// Attitude computation coefficients: traditional, enhanced, and the Picard
/// iterates l = 1..max_iterations (the last two rows coincide at the cap).
inline CoefficientTable attitude_coefficient_table(const MotionCoefficients& mc, int axis = 0,
                                                   int cap = kDefaultDegreeCap,
                                                   int max_iterations = 8) {
  CoefficientTable t;
  t.title = "Attitude rotation-vector polynomial coefficients";
  t.columns = cap;
  t.rows.emplace_back("Typical", detail::row_of(sigma_traditional(mc, cap), axis, cap));
  t.rows.emplace_back("Enhanced", detail::row_of(sigma_enhanced(mc, cap), axis, cap));
  const auto iterates = sigma_fiter_iterates(mc.omega, max_iterations, cap);
  for (int l = 1; l <= max_iterations; ++l) {
    if (l >= 2 && l == max_iterations && iterates[l - 1] == iterates[l - 2]) {
      t.rows.back().first =
          "FIterTrue (l=" + std::to_string(l - 1) + "," + std::to_string(l) + ")";
      break;
    }
    t.rows.emplace_back("FIterTrue (l=" + std::to_string(l) + ")",
                        detail::row_of(iterates[l - 1], axis, cap));
  }
  return t;
}

/// Essential velocity-integral coefficients for the second-order, enhanced,
/// ViaGen, and functional-iteration algorithms.
inline CoefficientTable velocity_coefficient_table(const MotionCoefficients& mc, int axis = 0,
                                                   int cap = kDefaultDegreeCap) {
  CoefficientTable t;
  t.title = "Velocity integral polynomial coefficients";
  t.columns = cap;
  t.rows.emplace_back("Typical", detail::row_of(u_second_order(mc, cap), axis, cap));
  t.rows.emplace_back("Enhanced", detail::row_of(u_enhanced(mc, cap), axis, cap));
  t.rows.emplace_back("ViaGen-1", detail::row_of(u_viagen(mc, 1, cap), axis, cap));
  t.rows.emplace_back("ViaGen-8", detail::row_of(u_viagen(mc, 8, cap), axis, cap));
  t.rows.emplace_back("FIterTrue", detail::row_of(u_fiter(mc, cap), axis, cap));
  return t;
}

/// Aligned plain-text rendering with exact "p/q" entries.
inline std::string render_text(const CoefficientTable& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""};
  for (int k = 1; k <= t.columns; ++k) head.push_back("t^" + std::to_string(k));
  cells.push_back(std::move(head));
  for (const auto& [label, row] : t.rows) {
    std::vector<std::string> line{label};
    for (const auto& r : row) line.push_back(r.to_string());
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(t.columns + 1, 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i)
      width[i] = std::max(width[i], line[i].size());
  std::ostringstream os;
  os << t.title << "\n";
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << line[i] << std::string(width[i] - line[i].size(), ' ');
      os << (i + 1 < line.size() ? "  " : "");
    }
    os << "\n";
  }
  return os.str();
}

/// CSV rendering: `algorithm,t1,...,t8` header, exact "p/q" strings.
inline std::string render_csv(const CoefficientTable& t) {
  std::ostringstream os;
  os << "algorithm";
  for (int k = 1; k <= t.columns; ++k) os << ",t" << k;
  os << "\n";
  for (const auto& [label, row] : t.rows) {
    os << label;
    for (const auto& r : row) os << "," << r.to_string();
    os << "\n";
  }
  return os.str();
}

}  // namespace navlab
