#include <cmath>
#include <stdexcept>

#include "sgeo/optimizer.hpp"

namespace sgeo {

namespace {

// Solve A x = b in place (partial pivoting); returns false when singular.
bool solve_linear(std::vector<std::vector<double>>& A, std::vector<double>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-14) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= A[i][i];
  return true;
}

}  // namespace

BaselineTrace baseline_run(const std::function<double(const std::vector<double>&)>& cost,
                           std::vector<double> init, const BaselineConfig& cfg, Estimator& est) {
  if (init.empty()) throw std::invalid_argument("baseline needs at least one parameter");
  if (cfg.rhobeg <= 0.0 || cfg.tol <= 0.0)
    throw std::invalid_argument("baseline radii must be positive");

  const std::size_t m = init.size();
  BaselineTrace trace;
  const std::uint64_t start = est.circuits_used();
  int evals = 0;

  auto evaluate = [&](const std::vector<double>& x) {
    const double v = cost(x);
    trace.evals.push_back({evals, v, est.circuits_used() - start});
    ++evals;
    return v;
  };

  std::vector<std::vector<double>> pts;
  std::vector<double> fv;
  std::size_t best = 0;

  trace.final_params = init;
  trace.final_cost = 0.0;
  trace.termination = "eval-budget";
  if (cfg.max_evals <= 0) {
    trace.termination = "eval-budget";
    trace.total_circuits = 0;
    // final cost unknown without a single evaluation; report a quiet NaN
    trace.final_cost = std::nan("");
    return trace;
  }

  double rho = cfg.rhobeg;

  auto rebuild = [&](const std::vector<double>& center, double fcenter) {
    pts.assign(1, center);
    fv.assign(1, fcenter);
    best = 0;
    for (std::size_t i = 0; i < m && evals < cfg.max_evals; ++i) {
      std::vector<double> x = center;
      x[i] += rho;
      pts.push_back(x);
      fv.push_back(evaluate(x));
      if (fv.back() < fv[best]) best = fv.size() - 1;
    }
  };

  const double f0 = evaluate(init);
  rebuild(init, f0);

  while (evals < cfg.max_evals && rho > cfg.tol) {
    if (pts.size() < m + 1) {  // budget ran out during a rebuild
      break;
    }
    // affine model around the best vertex: g . (p_i - p_best) = f_i - f_best
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      std::vector<double> row(m);
      for (std::size_t c = 0; c < m; ++c) row[c] = pts[i][c] - pts[best][c];
      A.push_back(std::move(row));
      b.push_back(fv[i] - fv[best]);
    }
    std::vector<double> g = b;
    const bool ok = solve_linear(A, g);
    double gnorm = 0.0;
    for (double v : g) gnorm += v * v;
    gnorm = std::sqrt(gnorm);
    if (!ok || gnorm < 1e-300) {
      rho *= 0.5;
      if (rho <= cfg.tol) break;
      rebuild(pts[best], fv[best]);
      continue;
    }

    std::vector<double> xnew = pts[best];
    for (std::size_t c = 0; c < m; ++c) xnew[c] -= rho * g[c] / gnorm;
    const double fnew = evaluate(xnew);

    std::size_t worst = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (fv[i] > fv[worst]) worst = i;

    if (fnew < fv[best]) {
      pts[worst] = xnew;
      fv[worst] = fnew;
      best = worst;
    } else {
      if (fnew < fv[worst]) {
        pts[worst] = xnew;
        fv[worst] = fnew;
      }
      rho *= 0.5;
      if (rho <= cfg.tol) break;
      if (evals < cfg.max_evals) rebuild(pts[best], fv[best]);
    }
  }

  trace.termination = rho <= cfg.tol ? "trust-radius<=tol" : "eval-budget";
  if (!pts.empty()) {
    trace.final_params = pts[best];
    trace.final_cost = fv[best];
  }
  trace.total_circuits = est.circuits_used() - start;
  return trace;
}

}  // namespace sgeo
