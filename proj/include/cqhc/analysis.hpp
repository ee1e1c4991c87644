#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqhc/sim.hpp"

namespace cqhc {

struct FitWindow {
  double p_lo = 0.0;
  double p_hi = 1.0;

  bool contains(double p) const { return p >= p_lo && p <= p_hi; }
};

// Defaults to the lowest decade of sampled rates that still carries full
// statistics.
inline FitWindow default_fit_window(const std::vector<PointEstimate>& points,
                                    long min_failures) {
  double lo = 0.0;
  for (const auto& pt : points)
    if (pt.failures >= static_cast<std::uint64_t>(min_failures) && (lo == 0.0 || pt.p < lo))
      lo = pt.p;
  if (lo == 0.0) throw std::invalid_argument("default_fit_window: no qualifying points");
  return FitWindow{lo, 10.0 * lo};
}

// Weighted least squares of ln p_L = ln_a + alpha * ln p. Binomial errors are
// propagated to log space (sigma_log = stderr / p_L).
struct FitResult {
  double alpha = 0.0;
  double ln_a = 0.0;  // log-prefactor at p = 1
  double alpha_stderr = 0.0;
  double ln_a_stderr = 0.0;
  double residual_norm = 0.0;  // weighted RMS of log residuals
  FitWindow window;
  std::size_t points_used = 0;
  std::size_t excluded_zero_failure = 0;

  double amplitude_at(double p_ref) const { return std::exp(ln_a + alpha * std::log(p_ref)); }

  static FitResult from_threshold_form(double amplitude, double alpha, double p_th) {
    FitResult fit;
    fit.alpha = alpha;
    fit.ln_a = std::log(amplitude) - alpha * std::log(p_th);
    return fit;
  }
};

inline FitResult fit_power_law(const std::vector<PointEstimate>& points, FitWindow window,
                               long min_failures = 1) {
  FitResult fit;
  fit.window = window;

  std::vector<double> xs, ys, ws;
  for (const auto& pt : points) {
    if (!window.contains(pt.p)) continue;
    if (pt.failures == 0) {
      ++fit.excluded_zero_failure;
      continue;
    }
    if (pt.failures < static_cast<std::uint64_t>(min_failures)) continue;
    double sigma_log = pt.stderr_ > 0 ? pt.stderr_ / pt.p_l : 1.0;
    xs.push_back(std::log(pt.p));
    ys.push_back(std::log(pt.p_l));
    ws.push_back(1.0 / (sigma_log * sigma_log));
  }
  if (xs.size() < 2)
    throw std::invalid_argument("fit_power_law: need at least two usable points in the window");

  double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    S += ws[i];
    Sx += ws[i] * xs[i];
    Sy += ws[i] * ys[i];
    Sxx += ws[i] * xs[i] * xs[i];
    Sxy += ws[i] * xs[i] * ys[i];
  }
  double delta = S * Sxx - Sx * Sx;
  if (delta <= 0) throw std::invalid_argument("fit_power_law: degenerate abscissae");
  fit.alpha = (S * Sxy - Sx * Sy) / delta;
  fit.ln_a = (Sxx * Sy - Sx * Sxy) / delta;
  fit.alpha_stderr = std::sqrt(S / delta);
  fit.ln_a_stderr = std::sqrt(Sxx / delta);
  fit.points_used = xs.size();

  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.ln_a + fit.alpha * xs[i]);
    rss += ws[i] * r * r;
  }
  fit.residual_norm = std::sqrt(rss / static_cast<double>(xs.size()));
  return fit;
}

// p_L estimate A (p / p_th)^alpha with A read off the fit at p_th.
inline double extrapolate(const FitResult& fit, double p_th, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("extrapolate: p must be positive");
  return fit.amplitude_at(p_th) * std::pow(p / p_th, fit.alpha);
}

struct ThresholdResult {
  double p_th = 0.0;
  double bracket_lo = 0.0;  // sampled rates straddling the crossing
  double bracket_hi = 0.0;
};

namespace detail {

struct LogCurve {
  std::vector<double> x, y;  // ln p ascending, ln p_L

  static LogCurve from_points(const std::vector<PointEstimate>& pts) {
    std::vector<const PointEstimate*> usable;
    for (const auto& pt : pts)
      if (pt.failures > 0) usable.push_back(&pt);
    std::sort(usable.begin(), usable.end(),
              [](const PointEstimate* a, const PointEstimate* b) { return a->p < b->p; });
    LogCurve c;
    for (const auto* pt : usable) {
      c.x.push_back(std::log(pt->p));
      c.y.push_back(std::log(pt->p_l));
    }
    if (c.x.size() < 2)
      throw std::invalid_argument("estimate_threshold: curve needs two nonzero points");
    return c;
  }

  double eval(double x0) const {
    std::size_t j = 1;
    while (j + 1 < x.size() && x[j] < x0) ++j;
    double t = (x0 - x[j - 1]) / (x[j] - x[j - 1]);
    return y[j - 1] + t * (y[j] - y[j - 1]);
  }
};

}  // namespace detail

// Crossing of two logical-error curves (adjacent concatenation levels) under
// log-linear interpolation. `lo` is the lower level, `hi` the higher one.
inline ThresholdResult estimate_threshold(const std::vector<PointEstimate>& lo,
                                          const std::vector<PointEstimate>& hi) {
  detail::LogCurve a = detail::LogCurve::from_points(lo);
  detail::LogCurve b = detail::LogCurve::from_points(hi);

  double xlo = std::max(a.x.front(), b.x.front());
  double xhi = std::min(a.x.back(), b.x.back());
  if (!(xlo < xhi))
    throw std::invalid_argument("estimate_threshold: curves do not overlap in p");

  // Union grid over the overlap; the difference is piecewise linear on it.
  std::vector<double> grid;
  for (double x : a.x)
    if (x >= xlo && x <= xhi) grid.push_back(x);
  for (double x : b.x)
    if (x >= xlo && x <= xhi) grid.push_back(x);
  grid.push_back(xlo);
  grid.push_back(xhi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  bool all_zero = true;
  for (double x : grid)
    if (std::abs(b.eval(x) - a.eval(x)) > 1e-12) all_zero = false;
  if (all_zero)
    throw std::invalid_argument("estimate_threshold: curves coincide, no unique crossing");

  for (std::size_t i = 1; i < grid.size(); ++i) {
    double d0 = b.eval(grid[i - 1]) - a.eval(grid[i - 1]);
    double d1 = b.eval(grid[i]) - a.eval(grid[i]);
    if (d0 == 0.0 && d1 == 0.0) continue;
    if ((d0 <= 0 && d1 > 0) || (d0 >= 0 && d1 < 0) || d0 == 0.0) {
      double t = (d0 == d1) ? 0.0 : d0 / (d0 - d1);
      double xc = grid[i - 1] + t * (grid[i] - grid[i - 1]);
      ThresholdResult res;
      res.p_th = std::exp(xc);
      res.bracket_lo = std::exp(grid[i - 1]);
      res.bracket_hi = std::exp(grid[i]);
      return res;
    }
  }
  throw std::invalid_argument("estimate_threshold: no crossing inside the sampled range");
}

// Side-by-side extrapolation of two code/decoder configurations at a common
// physical rate, aggregated over independent blocks.
struct CompareSide {
  std::string label;
  double p_th = 0.0;
  double alpha = 0.0;
  double amplitude = 0.0;  // p_L at p = p_th
  int blocks = 1;
  long physical_qubits = 0;

  double block_rate(double p) const {
    return extrapolate(FitResult::from_threshold_form(amplitude, alpha, p_th), p_th, p);
  }
  double aggregate_rate(double p) const { return blocks * block_rate(p); }
};

struct CompareReport {
  double p = 0.0;
  CompareSide a, b;
  double rate_a = 0.0, rate_b = 0.0;
  double ratio = 0.0;  // b over a
};

inline CompareReport compare_sides(const CompareSide& a, const CompareSide& b, double p) {
  CompareReport rep;
  rep.p = p;
  rep.a = a;
  rep.b = b;
  rep.rate_a = a.aggregate_rate(p);
  rep.rate_b = b.aggregate_rate(p);
  rep.ratio = rep.rate_b / rep.rate_a;
  return rep;
}

}  // namespace cqhc
