#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusegraph/fusion_network.hpp"
#include "fusegraph/ordering.hpp"

namespace fusegraph {

// Raised when a distribution cannot be expanded in double precision.
struct NumericDegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinLeadingCoefficient = 1e-300;

// The resource count C of a generation process has a probability generating
// structure whose Fourier transform is the reciprocal of a polynomial in
// z^-1 = e^-ik. This stores the coefficients a_0..a_L of that polynomial;
// L is the minimum achievable resource count and the coefficients always sum
// to one (total probability).
struct OverheadPoly {
  std::vector<double> coeff;  // a_0 .. a_L

  static OverheadPoly base() { return OverheadPoly{{0.0, 1.0}}; }

  std::size_t degree() const {
    if (coeff.size() < 2 || coeff.back() == 0.0)
      throw std::logic_error("overhead polynomial has no leading coefficient");
    return coeff.size() - 1;
  }
};

namespace detail {

inline void check_p(double p_succ) {
  if (!(p_succ > 0.0 && p_succ <= 1.0))
    throw std::invalid_argument("fusion success probability must lie in (0, 1]");
}

inline void check_finite(const OverheadPoly& poly) {
  for (double a : poly.coeff)
    if (!std::isfinite(a))
      throw NumericDegeneracyError("overhead polynomial overflowed double precision");
}

// The coefficients of a reciprocal FTPDF always sum to one (total
// probability). Convolution rounding slowly erodes that sum on deep
// networks, which would show up as missing mass in the expanded
// distribution, so every combine renormalizes the scale.
inline void renormalize(OverheadPoly& poly) {
  long double sum = 0.0L;
  for (double c : poly.coeff) sum += c;
  if (!(std::abs(static_cast<double>(sum) - 1.0) < 0.5))
    throw NumericDegeneracyError("overhead polynomial lost its normalization");
  for (double& c : poly.coeff) c = static_cast<double>(c / sum);
}

}  // namespace detail

// Fusion of two independent components with success probability p_s: retries
// regenerate both sides, which in the Fourier picture multiplies the
// reciprocal polynomials, rescales by 1/p_s and shifts the constant term.
inline OverheadPoly combine_link(const OverheadPoly& a, const OverheadPoly& b, double p_succ) {
  detail::check_p(p_succ);
  // Convolution terms can cancel heavily on deep networks; extended-precision
  // accumulation keeps the surviving coefficients accurate.
  std::vector<long double> acc(a.coeff.size() + b.coeff.size() - 1, 0.0L);
  for (std::size_t i = 0; i < a.coeff.size(); ++i)
    for (std::size_t j = 0; j < b.coeff.size(); ++j)
      acc[i + j] += static_cast<long double>(a.coeff[i]) * b.coeff[j];
  OverheadPoly out;
  out.coeff.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.coeff[i] = static_cast<double>(acc[i] / p_succ);
  out.coeff[0] -= (1.0 - p_succ) / p_succ;
  detail::check_finite(out);
  detail::renormalize(out);
  return out;
}

// Fusion of two qubits inside one component: a retry regenerates that single
// component, so the degree is unchanged.
inline OverheadPoly combine_loop(const OverheadPoly& a, double p_succ) {
  detail::check_p(p_succ);
  OverheadPoly out = a;
  for (double& c : out.coeff) c /= p_succ;
  out.coeff[0] -= (1.0 - p_succ) / p_succ;
  detail::check_finite(out);
  detail::renormalize(out);
  return out;
}

// Replays a schedule over the network, assigning the one-resource-state
// polynomial to every node and combining along each contracted link.
inline OverheadPoly network_poly(const FusionNetwork& net, const FusionSchedule& schedule,
                                 double p_succ) {
  detail::check_p(p_succ);
  std::vector<int> root(net.nodes.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };

  std::vector<OverheadPoly> poly(net.nodes.size(), OverheadPoly::base());
  std::size_t contracted = 0;
  for (const std::vector<int>& round : schedule.rounds) {
    for (int l : round) {
      if (l < 0 || l >= static_cast<int>(net.links.size()))
        throw std::invalid_argument("schedule references an unknown link");
      int ra = find(net.links[l].a), rb = find(net.links[l].b);
      if (ra == rb) {
        poly[ra] = combine_loop(poly[ra], p_succ);
      } else {
        poly[ra] = combine_link(poly[ra], poly[rb], p_succ);
        poly[rb].coeff.clear();
        root[rb] = ra;
      }
      ++contracted;
    }
  }
  if (contracted != net.links.size())
    throw std::invalid_argument("schedule does not contract every link exactly once");

  // Disconnected pieces are produced independently; their counts add.
  OverheadPoly out;
  bool first = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
    out = first ? poly[i] : combine_link(out, poly[i], 1.0);
    first = false;
  }
  if (first) throw std::invalid_argument("network has no nodes");
  return out;
}

// Probability mass and cumulative mass of the resource count, truncated at
// c_max. pmf[j] is Pr(C = min_count + j); below min_count all mass is zero.
struct OverheadDistribution {
  std::size_t min_count = 0;  // L, the degree of the polynomial
  std::size_t c_max = 0;
  std::vector<double> pmf;
  std::vector<double> cmf;

  double pmf_at(std::size_t c) const {
    return c < min_count || c > c_max ? 0.0 : pmf[c - min_count];
  }
  double cmf_at(std::size_t c) const {
    if (c < min_count) return 0.0;
    return cmf[std::min(c, c_max) - min_count];
  }
  // Truncated mass not assigned to any c <= c_max.
  double unassigned_tail() const { return 1.0 - cmf.back(); }
  // First moment of the truncated series.
  double mean_upto() const {
    double m = 0.0;
    for (std::size_t j = 0; j < pmf.size(); ++j)
      m += static_cast<double>(min_count + j) * pmf[j];
    return m;
  }
};

// Power-series expansion of the reciprocal polynomial. The probability mass
// follows the linear recurrence b_0 = 1/a_L, b_j = -sum a_{L-j+j'} b_{j'} / a_L,
// whose rounding errors decay together with the distribution's own modes.
// The cumulative mass also satisfies a direct recurrence d_j (with
// a_{-1} := 0); that one carries a neutral mode, so rounding noise scaled by
// the coefficient mass accumulates along it. Both are computed: the exported
// cmf is the (stable) running sum of the pmf, and the d_j series is
// cross-checked against it within an error-model tolerance.
inline OverheadDistribution expand_distribution(const OverheadPoly& poly, std::size_t c_max) {
  const std::size_t L = poly.degree();
  if (c_max < L)
    throw std::invalid_argument("c_max " + std::to_string(c_max) +
                                " is below the minimum resource count " + std::to_string(L));
  detail::check_finite(poly);
  const double a_top = poly.coeff[L];
  if (std::abs(a_top) < kMinLeadingCoefficient)
    throw NumericDegeneracyError("leading coefficient is numerically degenerate");

  auto a = [&](std::ptrdiff_t l) -> double {
    return l < 0 || l > static_cast<std::ptrdiff_t>(L) ? 0.0 : poly.coeff[l];
  };

  OverheadDistribution dist;
  dist.min_count = L;
  dist.c_max = c_max;
  const std::size_t terms = c_max - L + 1;
  dist.pmf.resize(terms);
  dist.cmf.resize(terms);

  // The recurrence runs in extended precision: expansions can cover hundreds
  // of thousands of terms, and plain double accumulation leaves the total
  // mass visibly short of one on large networks.
  std::vector<long double> series(terms);
  series[0] = 1.0L / static_cast<long double>(a_top);
  long double running = series[0];
  dist.pmf[0] = static_cast<double>(series[0]);
  dist.cmf[0] = static_cast<double>(running);
  for (std::size_t j = 1; j < terms; ++j) {
    long double acc = 0.0L;
    std::size_t lo = j > L ? j - L : 0;
    for (std::size_t jp = lo; jp < j; ++jp)
      acc += static_cast<long double>(a(static_cast<std::ptrdiff_t>(L - j + jp))) * series[jp];
    series[j] = -acc / static_cast<long double>(a_top);
    running += series[j];
    dist.pmf[j] = static_cast<double>(series[j]);
    dist.cmf[j] = static_cast<double>(running);
    if (!std::isfinite(dist.pmf[j]))
      throw NumericDegeneracyError("distribution expansion overflowed");
  }

  double coefficient_mass = 0.0;
  for (double c : poly.coeff) coefficient_mass += std::abs(c);
  const double ratio = coefficient_mass / std::abs(a_top);

  std::vector<double> direct(terms);
  direct[0] = 1.0 / a_top;
  for (std::size_t j = 1; j < terms; ++j) {
    double acc = 0.0;
    std::size_t lo = j > L + 1 ? j - L - 1 : 0;
    for (std::size_t jp = lo; jp < j; ++jp) {
      std::ptrdiff_t base = static_cast<std::ptrdiff_t>(L) - static_cast<std::ptrdiff_t>(j) +
                            static_cast<std::ptrdiff_t>(jp);
      acc += (a(base + 1) - a(base)) * direct[jp];
    }
    direct[j] = acc / a_top;
    double drift_allowance =
        8.0 * ratio * ratio * 2.3e-16 * static_cast<double>(j) * static_cast<double>(j);
    double tolerance = 1e-9 * std::max(1.0, std::abs(dist.cmf[j])) + drift_allowance;
    if (tolerance > 1e-2) break;  // double precision can no longer follow this route
    if (!std::isfinite(direct[j]) || std::abs(direct[j] - dist.cmf[j]) > tolerance)
      throw NumericDegeneracyError("PMF and CMF recurrences diverged");
  }
  return dist;
}

inline OverheadDistribution distribution(const FusionNetwork& net, const FusionSchedule& schedule,
                                         double p_succ, std::size_t c_max) {
  return expand_distribution(network_poly(net, schedule, p_succ), c_max);
}

// Smallest resource count whose cumulative success probability reaches the
// target.
inline std::size_t quantile(const OverheadDistribution& dist, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw std::invalid_argument("quantile target must lie in (0, 1)");
  for (std::size_t j = 0; j < dist.cmf.size(); ++j)
    if (dist.cmf[j] >= target) return dist.min_count + j;
  throw std::invalid_argument("target " + std::to_string(target) +
                              " unreachable within c_max: achieved mass " +
                              std::to_string(dist.cmf.back()));
}

}  // namespace fusegraph
