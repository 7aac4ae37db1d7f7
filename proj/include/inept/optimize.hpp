#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>

#include "inept/errors.hpp"

namespace inept {

template <typename F>
concept ScalarObjective = std::regular_invocable<F, double> &&
                          std::convertible_to<std::invoke_result_t<F, double>, double>;

/// Golden-section search for the maximum of a unimodal f on [lo, hi]. Stops
/// once the bracket is narrower than `width`.
template <ScalarObjective F>
double golden_section_maximize(F&& f, double lo, double hi, double width = 1e-10,
                               int max_iterations = 500) {
  constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iterations && (hi - lo) > width; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

struct ScanMaximum {
  double x;
  double value;
};

/// Evaluates f on `points` uniformly spaced nodes of [lo, hi] (both ends
/// included exactly), then refines around the best node with golden-section
/// search. Ties on the grid go to the smaller x. The refined point replaces the
/// grid node only if it is better by more than round-off.
template <ScalarObjective F>
ScanMaximum grid_golden_maximize(F&& f, double lo, double hi, std::size_t points,
                                 double width = 1e-10) {
  if (points < 2) throw InvalidArgument("grid resolution must be at least 2");
  const double step = (hi - lo) / static_cast<double>(points - 1);
  auto node = [&](std::size_t k) { return k + 1 == points ? hi : lo + step * static_cast<double>(k); };

  std::size_t best = 0;
  double best_value = f(node(0));
  for (std::size_t k = 1; k < points; ++k) {
    const double v = f(node(k));
    if (v > best_value) {
      best = k;
      best_value = v;
    }
  }

  const double left = best == 0 ? lo : node(best - 1);
  const double right = best + 1 == points ? hi : node(best + 1);
  const double refined = golden_section_maximize(f, left, right, width);
  const double refined_value = f(refined);

  const double noise = 8.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(best_value), std::numeric_limits<double>::min());
  if (refined_value > best_value + noise) return {refined, refined_value};
  return {node(best), best_value};
}

}  // namespace inept
