#include "sgeo/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sgeo/state_vector.hpp"

namespace sgeo {

namespace {
constexpr double kPi = std::numbers::pi;
}

double grid_point(const GridSpec& grid, int i) {
  return -kPi + (2.0 * kPi * i) / grid.points;
}

GridResult grid_minimize(const std::function<double(double)>& f, const GridSpec& grid) {
  if (grid.points < 2) throw std::invalid_argument("grid needs at least two points");
  GridResult best;
  bool first = true;
  for (int i = 0; i < grid.points; ++i) {
    const double l = grid_point(grid, i);
    const double v = f(l);
    if (std::isnan(v)) throw std::runtime_error("NaN in curve values");
    if (first || v < best.value) {
      best = {l, v, i};
      first = false;
    }
  }
  return best;
}

ClosedFormResult closed_form_min_residual(double s0, double spi) {
  if (s0 == 0.0 && spi == 0.0) return {0.0, true};
  // -(R cos(l/2 - phi))^2 is minimal where |cos| is maximal; the pi ambiguity
  // of the half angle drops out under the square, so wrapping is exact.
  return {wrap_angle(2.0 * std::atan2(spi, s0)), false};
}

ClosedFormResult closed_form_min_harmonic(double A, double B, double C) {
  (void)A;
  if (B == 0.0 && C == 0.0) return {0.0, true};
  return {wrap_angle(std::atan2(-C, -B)), false};
}

OptTrace sgeo_run(const SectionProvider& provider, ParamVector init, const SgeoConfig& cfg,
                  Estimator& est) {
  if (cfg.sweeps < 0) throw std::invalid_argument("sweep count must be non-negative");
  OptTrace trace;
  const std::uint64_t start = est.circuits_used();
  ParamVector p = std::move(init);
  const double spacing = 2.0 * kPi / cfg.grid.points;

  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (int j = 0; j < p.size(); ++j) {
      if (!p.is_group_leader(j)) continue;
      const std::vector<int> group = p.group_of(j);
      const CurveSection sec = provider(p, group, est);
      if (!sec.value) throw std::invalid_argument("section provider returned no curve");

      GridResult g = grid_minimize(sec.value, cfg.grid);
      double best_l = g.lambda, best_v = g.value;
      auto consider = [&](double cand) {
        const double c = wrap_angle(cand);
        const double v = sec.value(c);
        if (std::isnan(v)) throw std::runtime_error("NaN in curve values");
        if (v < best_v) {
          best_v = v;
          best_l = c;
        }
      };
      // current value guards monotone descent in exact mode
      consider(p[j]);
      if (cfg.refine) {
        if (!sec.minimizer_candidates.empty()) {
          for (double cand : sec.minimizer_candidates) consider(cand);
        } else if (sec.derivative) {
          // safeguarded Newton from the grid winner, at most one cell away
          double x = g.lambda;
          for (int it = 0; it < 8; ++it) {
            const double d1 = sec.derivative(x, 1);
            const double d2 = sec.derivative(x, 2);
            if (!std::isfinite(d1) || !std::isfinite(d2) || d2 <= 0.0) break;
            double step = -d1 / d2;
            if (step > spacing) step = spacing;
            if (step < -spacing) step = -spacing;
            const double nx = std::clamp(x + step, g.lambda - spacing, g.lambda + spacing);
            if (std::abs(nx - x) < 1e-15) break;
            x = nx;
          }
          consider(x);
        }
      }

      p.set(j, best_l);
      UpdateRecord rec;
      rec.sweep = sweep;
      rec.param_index = j;
      rec.lambda = p[j];
      rec.cost = best_v;
      rec.circuits = est.circuits_used() - start;
      trace.updates.push_back(rec);
    }
  }
  trace.final_params = std::move(p);
  trace.termination = "sweeps-complete";
  trace.total_circuits = est.circuits_used() - start;
  return trace;
}

}  // namespace sgeo
