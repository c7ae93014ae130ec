#pragma once

#include <string>

#include "cohomdyn/interval.hpp"
#include "cohomdyn/matrix.hpp"

namespace cohomdyn {

// Integer toral diffeomorphism of R^m/Z^m with the sup metric (minimum over
// lattice translates). |det M| = 1 so the induced map is invertible.
struct TorusMap {
  int m = 2;
  std::vector<long> mat;  // row-major m x m

  TorusMap(int dim, std::vector<long> entries);
  long entry(int i, int j) const { return mat[(size_t)i * m + j]; }
};

// Greedy maximal (n,eps)-separated subset of the uniform grid with the
// stated resolution (points j/grid). Deterministic lexicographic scan;
// the result is a lower bound for N(eps, n). Exact integer arithmetic:
// grid orbits stay on the grid because the matrix is integral.
long separated_count(const TorusMap& map, const Rat& eps, int n, long grid);

struct EpsFit {
  Rat eps;
  std::vector<long> counts;  // N(eps, n), n = 1..n_max
  int fit_lo = 0, fit_hi = 0;  // fitted n-window (saturation-aware)
  double slope = 0.0;
  bool usable = false;
  bool coarse_warning = false;  // grid step too large relative to eps
  bool saturated = false;       // counts hit the saturation guard
};

struct SeparationEstimate {
  std::vector<EpsFit> fits;
  int n_max = 0;
  long grid = 0;
  double h_est = 0.0;          // max over eps of the fitted growth rate
  double h_ref = 0.0;          // algebraic entropy max_p log rho(ext_p M)
  bool monotone_in_n = true;   // diagnostics, never silently dropped
  bool monotone_in_eps = true;
  std::vector<std::string> warnings;
};

// Per-eps log-linear fit of log N(eps,n) over the top half of the
// unsaturated n-range; h_est is the max over eps. The report compares
// h_est with the exact algebraic entropy of the integer matrix.
SeparationEstimate entropy_estimate(const TorusMap& map, const std::vector<Rat>& eps_schedule,
                                    int n_max, long grid);

// exact reference: max_p log rho(ext_p M) (certified midpoint)
double algebraic_entropy_reference(const TorusMap& map);

}  // namespace cohomdyn
