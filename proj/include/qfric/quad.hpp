#pragma once

// Adaptive quadrature used by every frequency and k-plane integral.
//
// Rule: Gauss-Kronrod 10/21 per panel, error = |K21 - G10| per component.
// Refinement: the panel with the largest tolerance-normalised error is bisected.
// Breakpoints are always panel boundaries. Semi-infinite ranges are mapped to a
// finite interval by x = a + s t / (1 - t) with s = QuadSpec::decay_scale.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfric/constants.hpp"

namespace qfric::quad {

struct QuadSpec {
  double rel_tol = 1e-6;
  double abs_floor = 0.0;
  // Components smaller than component_floor * (largest component) only need
  // to meet rel_tol relative to that floor. Keeps structurally-zero tensor
  // entries from driving the refinement.
  double component_floor = 1e-9;
  int max_subdivisions = 400;
  std::vector<double> breakpoints;
  double decay_scale = 1.0;  // length scale of the semi-infinite map
  int angular_panels = 1;    // initial angular panels per quarter turn in the k-plane
  // Extra floor for a component that results from cancellation: its tolerance is
  // at least rel_tol * ratio * |total of the reference component|.
  struct Reference {
    std::size_t component;
    std::size_t reference;
    double ratio;
  };
  std::vector<Reference> references;
};

template <std::size_t N>
struct QuadResult {
  std::array<double, N> value{};
  std::array<double, N> err{};
  std::size_t n_evals = 0;
  int n_panels = 0;
  bool converged = false;

  double max_rel_err() const {
    double m = 0.0;
    double big = 0.0;
    for (double v : value) big = std::max(big, std::abs(v));
    for (std::size_t c = 0; c < N; ++c) {
      const double scale = std::max(std::abs(value[c]), 1e-9 * big);
      if (scale > 0.0) m = std::max(m, err[c] / scale);
    }
    return m;
  }
};

namespace detail {

struct Rule {
  static constexpr std::size_t n = 21;
  std::array<double, n> x{};   // nodes on [-1, 1]
  std::array<double, n> wk{};  // Kronrod weights
  std::array<double, n> wg{};  // Gauss weights (zero on Kronrod-only nodes)
};

const Rule& gk21();

template <std::size_t N>
struct Panel {
  double lo, hi;
  std::array<double, N> value;
  std::array<double, N> err;
  bool splittable;
};

template <std::size_t N, class G>
Panel<N> eval_panel(G& g, double lo, double hi) {
  const Rule& r = gk21();
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  std::array<double, N> k{}, gs{};
  for (std::size_t i = 0; i < Rule::n; ++i) {
    const std::array<double, N> f = g(c + h * r.x[i]);
    for (std::size_t q = 0; q < N; ++q) {
      k[q] += r.wk[i] * f[q];
      gs[q] += r.wg[i] * f[q];
    }
  }
  Panel<N> p{lo, hi, {}, {}, true};
  for (std::size_t q = 0; q < N; ++q) {
    p.value[q] = h * k[q];
    p.err[q] = std::abs(h * (k[q] - gs[q]));
  }
  const double width_floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  p.splittable = (hi - lo) > width_floor && (hi - lo) > std::numeric_limits<double>::min() * 1e3;
  return p;
}

// Adaptive driver on a finite interval in the already-transformed variable.
// Only the first `tracked` components take part in the convergence test;
// the rest are carried along (used for propagated inner errors).
template <std::size_t N, class G>
QuadResult<N> adapt(G&& g, std::vector<double> cuts, const QuadSpec& spec, std::size_t tracked = N) {
  if (spec.rel_tol <= 0.0) throw std::invalid_argument("quad: rel_tol must be positive");
  std::size_t evals = 0;
  auto counted = [&](double t) {
    ++evals;
    return g(t);
  };

  std::vector<Panel<N>> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) panels.push_back(eval_panel<N>(counted, cuts[i], cuts[i + 1]));
  }

  QuadResult<N> res;
  for (;;) {
    std::array<double, N> tot{}, err{};
    for (const auto& p : panels)
      for (std::size_t q = 0; q < N; ++q) {
        tot[q] += p.value[q];
        err[q] += p.err[q];
      }
    double big = 0.0;
    for (std::size_t q = 0; q < tracked; ++q) big = std::max(big, std::abs(tot[q]));
    std::array<double, N> tol{};
    bool ok = true;
    for (std::size_t q = 0; q < tracked; ++q)
      tol[q] = std::max({spec.rel_tol * std::abs(tot[q]), spec.abs_floor, spec.rel_tol * spec.component_floor * big});
    for (const auto& ref : spec.references)
      if (ref.component < tracked && ref.reference < N)
        tol[ref.component] = std::max(tol[ref.component], spec.rel_tol * ref.ratio * std::abs(tot[ref.reference]));
    for (std::size_t q = 0; q < tracked; ++q)
      if (err[q] > tol[q]) ok = false;
    res.value = tot;
    res.err = err;
    res.n_panels = static_cast<int>(panels.size());
    if (ok) {
      res.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= spec.max_subdivisions) break;

    std::size_t worst = panels.size();
    double worst_score = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].splittable) continue;
      double score = 0.0;
      for (std::size_t q = 0; q < tracked; ++q) {
        const double t = tol[q] > 0.0 ? tol[q] : std::numeric_limits<double>::min();
        score = std::max(score, panels[i].err[q] / t);
      }
      if (score > worst_score) {
        worst_score = score;
        worst = i;
      }
    }
    if (worst == panels.size()) break;
    const double lo = panels[worst].lo, hi = panels[worst].hi, mid = 0.5 * (lo + hi);
    panels[worst] = eval_panel<N>(counted, lo, mid);
    panels.push_back(eval_panel<N>(counted, mid, hi));
  }
  res.n_evals = evals;
  return res;
}

}  // namespace detail

/// True when every err[q] meets the QuadSpec tolerance for value[q], scaled by slack.
template <std::size_t N>
bool within_tolerance(const std::array<double, N>& value, const std::array<double, N>& err, const QuadSpec& spec,
                      double slack = 1.0, std::size_t tracked = N) {
  double big = 0.0;
  for (std::size_t q = 0; q < tracked; ++q) big = std::max(big, std::abs(value[q]));
  for (std::size_t q = 0; q < tracked; ++q) {
    const double tol =
        std::max({spec.rel_tol * std::abs(value[q]), spec.abs_floor, spec.rel_tol * spec.component_floor * big});
    if (err[q] > slack * tol) return false;
  }
  return true;
}

/// Integrate f over [a, b]; either end may be infinite. f: double -> std::array<double, N>.
template <std::size_t N, class F>
QuadResult<N> integrate_1d(F&& f, double a, double b, const QuadSpec& spec, std::size_t tracked = N) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("quad: NaN bound");
  if (a == b) return QuadResult<N>{{}, {}, 0, 0, true};
  if (a > b) {
    auto r = integrate_1d<N>(f, b, a, spec, tracked);
    for (auto& v : r.value) v = -v;
    return r;
  }
  const double s = spec.decay_scale;
  if (!(s > 0.0)) throw std::invalid_argument("quad: decay_scale must be positive");
  std::vector<double> bps;
  for (double x : spec.breakpoints)
    if (x > a && x < b) bps.push_back(x);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    // split at the first breakpoint (or 0) and join
    const double mid = bps.empty() ? 0.0 : bps.front();
    auto left = integrate_1d<N>(f, a, mid, spec, tracked);
    auto right = integrate_1d<N>(f, mid, b, spec, tracked);
    for (std::size_t q = 0; q < N; ++q) {
      left.value[q] += right.value[q];
      left.err[q] += right.err[q];
    }
    left.n_evals += right.n_evals;
    left.n_panels += right.n_panels;
    left.converged = left.converged && right.converged;
    return left;
  }
  if (!lo_inf && !hi_inf) {
    std::vector<double> cuts{a};
    cuts.insert(cuts.end(), bps.begin(), bps.end());
    cuts.push_back(b);
    return detail::adapt<N>(f, std::move(cuts), spec, tracked);
  }
  // one infinite end: x = x0 + sign * s * t / (1 - t)
  const double x0 = lo_inf ? b : a;
  const double sign = lo_inf ? -1.0 : 1.0;
  auto g = [&](double t) {
    const double om = 1.0 - t;
    std::array<double, N> v = f(x0 + sign * s * t / om);
    const double jac = s / (om * om);
    for (auto& e : v) e *= jac;
    return v;
  };
  std::vector<double> cuts{0.0};
  std::vector<double> tb;
  for (double x : bps) {
    const double d = std::abs(x - x0);
    tb.push_back(d / (d + s));
  }
  std::sort(tb.begin(), tb.end());
  cuts.insert(cuts.end(), tb.begin(), tb.end());
  cuts.push_back(1.0);
  // for a = -inf the map runs from b downwards; dx = -s dt / (1-t)^2 and the
  // reversed limits cancel the sign, so the Jacobian stays positive
  return detail::adapt<N>(g, std::move(cuts), spec, tracked);
}

/// Scalar convenience wrapper.
template <class F>
QuadResult<1> integrate_1d_scalar(F&& f, double a, double b, const QuadSpec& spec) {
  return integrate_1d<1>([&](double x) { return std::array<double, 1>{f(x)}; }, a, b, spec);
}

enum class AngularRange {
  full,        // theta in [0, 2 pi)
  upper_half,  // theta in [0, pi], doubled; integrand must be even in ky
  quadrant,    // theta in [0, pi/2], doubled; caller folds theta and pi - theta into f
};

/// Integral over the surface-parallel k-plane, including the 1/(2 pi)^2 factor:
///   result = int d^2k / (2 pi)^2 f(k, theta)
/// in polar coordinates. f must decay at least as exp(-k * decay_length).
/// Each entry c of kx_lines marks a line kx = c across which f may have a kink or
/// jump; at every angle it becomes the radial breakpoint k = c / cos(theta).
template <std::size_t N, class F>
QuadResult<N> integrate_k_plane(F&& f, double decay_length, std::span<const double> kx_lines, AngularRange range,
                                const QuadSpec& spec) {
  using constants::pi;
  if (!(decay_length > 0.0)) throw std::invalid_argument("quad: decay_length must be positive");
  std::size_t radial_evals = 0;
  bool inner_ok = true;

  QuadSpec radial = spec;
  radial.rel_tol = 0.1 * spec.rel_tol;
  radial.abs_floor = 0.0;
  radial.decay_scale = 1.0 / decay_length;

  auto angular = [&](double theta) {
    const double c = std::cos(theta);
    radial.breakpoints.clear();
    for (double line : kx_lines) {
      if (c != 0.0) {
        const double kb = line / c;
        if (kb > 0.0 && std::isfinite(kb)) radial.breakpoints.push_back(kb);
      }
    }
    auto rr = integrate_1d<N>([&](double k) {
      std::array<double, N> v = f(k, theta);
      for (auto& e : v) e *= k;
      return v;
    }, 0.0, std::numeric_limits<double>::infinity(), radial);
    radial_evals += rr.n_evals;
    inner_ok = inner_ok && rr.converged;
    std::array<double, 2 * N> out{};
    for (std::size_t q = 0; q < N; ++q) {
      out[q] = rr.value[q];
      out[N + q] = rr.err[q];
    }
    return out;
  };

  QuadSpec outer = spec;
  outer.breakpoints.clear();
  double lo = 0.0, hi = pi, weight = 2.0;
  outer.breakpoints.push_back(0.5 * pi);
  if (range == AngularRange::quadrant) {
    hi = 0.5 * pi;
    outer.breakpoints.clear();
  } else if (range == AngularRange::full) {
    hi = 2.0 * pi;
    weight = 1.0;
    outer.breakpoints.push_back(pi);
    outer.breakpoints.push_back(1.5 * pi);
  }
  const int per_quarter = std::max(1, spec.angular_panels);
  for (double q0 = 0.0; q0 < hi - 1e-12; q0 += 0.5 * pi)
    for (int j = 1; j < per_quarter; ++j) outer.breakpoints.push_back(q0 + 0.5 * pi * j / per_quarter);
  auto r2 = integrate_1d<2 * N>(angular, lo, hi, outer, N);

  QuadResult<N> res;
  const double norm = weight / (4.0 * pi * pi);
  for (std::size_t q = 0; q < N; ++q) {
    res.value[q] = norm * r2.value[q];
    res.err[q] = norm * (r2.err[q] + std::abs(r2.value[N + q]));
  }
  res.n_evals = radial_evals;
  res.n_panels = r2.n_panels;
  // a radial integral that stalls on an underflowing tail is harmless as long as
  // the propagated error still meets the overall tolerance
  res.converged = r2.converged && (inner_ok || within_tolerance<N>(res.value, res.err, spec, 2.0));
  return res;
}

}  // namespace qfric::quad
