#include "cohomdyn/entropy_sim.hpp"

#include <cmath>

#include "cohomdyn/spectral.hpp"

namespace cohomdyn {

TorusMap::TorusMap(int dim, std::vector<long> entries) : m(dim), mat(std::move(entries)) {
  if (m < 1 || m > 4) throw PreconditionError("torus map: dimension 1..4 supported");
  if ((int)mat.size() != m * m) throw PreconditionError("torus map: matrix size mismatch");
  RatMat a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = Rat(entry(i, j));
  Rat d = det_field(a);
  if (d != 1 && d != -1)
    throw PreconditionError("torus map: |det| must be 1 for a diffeomorphism");
}

namespace {

// centered representative in [-g/2, g/2)
inline long center_mod(long v, long g) {
  long r = v % g;
  if (r < -(g / 2)) r += g;
  if (r >= (g + 1) / 2) r -= g;
  return r;
}

// Differences delta whose whole n-step orbit stays sup-close (<= t):
// closeness of a pair depends only on its difference because the map is
// linear and the metric translation invariant.
std::vector<std::vector<long>> close_differences(const TorusMap& map, long t, int n,
                                                 long grid) {
  int m = map.m;
  std::vector<std::vector<long>> out;
  std::vector<long> delta(m, -t);
  for (;;) {
    // orbit check
    std::vector<long> cur(delta);
    bool close = true;
    for (int step = 0; close && step < n; ++step) {
      if (step > 0) {
        std::vector<long> next(m, 0);
        for (int i = 0; i < m; ++i) {
          long acc = 0;
          for (int j = 0; j < m; ++j) acc += map.entry(i, j) * cur[j];
          next[i] = center_mod(acc, grid);
        }
        cur = std::move(next);
      }
      for (int i = 0; i < m; ++i) {
        long d = cur[i] % grid;
        if (d < 0) d += grid;
        long dist = std::min(d, grid - d);
        if (dist > t) {
          close = false;
          break;
        }
      }
    }
    if (close) out.push_back(delta);
    // advance the box counter
    int pos = m - 1;
    while (pos >= 0 && delta[pos] == t) {
      delta[pos] = -t;
      --pos;
    }
    if (pos < 0) break;
    ++delta[pos];
  }
  return out;
}

long total_points(int m, long grid) {
  long t = 1;
  for (int i = 0; i < m; ++i) t *= grid;
  return t;
}

}  // namespace

long separated_count(const TorusMap& map, const Rat& eps, int n, long grid) {
  if (eps <= 0) throw PreconditionError("separated_count: eps must be positive");
  if (n < 1) throw PreconditionError("separated_count: n must be >= 1");
  if (grid < 2) throw PreconditionError("separated_count: grid too small");
  int m = map.m;
  // integer closeness threshold: dist <= eps  <=>  d <= floor(eps * grid)
  Rat tg = eps * Rat(grid);
  Int tfloor;
  mpz_fdiv_q(tfloor.get_mpz_t(), tg.get_num().get_mpz_t(), tg.get_den().get_mpz_t());
  long t = tfloor.get_si();
  if (t >= grid / 2) return 1;  // eps at least the diameter: single point
  if (t < 0) t = 0;

  auto deltas = close_differences(map, t, n, grid);
  long total = total_points(m, grid);
  std::vector<uint8_t> blocked((size_t)total, 0);

  // greedy scan + stamp: keep x when unblocked, then block x + delta
  std::vector<long> coords(m, 0);
  long kept = 0;
  for (long idx = 0; idx < total; ++idx) {
    if (!blocked[(size_t)idx]) {
      ++kept;
      for (const auto& d : deltas) {
        long target = 0;
        for (int i = 0; i < m; ++i) {
          long c = coords[i] + d[i];
          if (c < 0) c += grid;
          if (c >= grid) c -= grid;
          target = target * grid + c;
        }
        blocked[(size_t)target] = 1;
      }
    }
    // advance mixed-radix coordinates (last axis fastest, matching idx)
    int pos = m - 1;
    while (pos >= 0 && coords[pos] == grid - 1) {
      coords[pos] = 0;
      --pos;
    }
    if (pos >= 0) ++coords[pos];
  }
  return kept;
}

double algebraic_entropy_reference(const TorusMap& map) {
  RatMat a(map.m, map.m);
  for (int i = 0; i < map.m; ++i)
    for (int j = 0; j < map.m; ++j) a(i, j) = Rat(map.entry(i, j));
  double best = 0.0;
  for (int p = 0; p <= map.m; ++p) {
    RadiusBound r = spectral_radius(exterior_power(a, p));
    double v = std::log(r.value());
    if (v > best) best = v;
  }
  return best;
}

SeparationEstimate entropy_estimate(const TorusMap& map, const std::vector<Rat>& eps_schedule,
                                    int n_max, long grid) {
  if (eps_schedule.empty()) throw PreconditionError("entropy_estimate: empty schedule");
  for (size_t i = 1; i < eps_schedule.size(); ++i)
    if (!(eps_schedule[i] < eps_schedule[i - 1]))
      throw PreconditionError("entropy_estimate: eps schedule must be decreasing");
  SeparationEstimate est;
  est.n_max = n_max;
  est.grid = grid;
  est.h_ref = algebraic_entropy_reference(map);
  long total = total_points(map.m, grid);

  for (const Rat& eps : eps_schedule) {
    EpsFit fit;
    fit.eps = eps;
    fit.coarse_warning = eps < make_rat(4, 1) / Rat(grid);
    if (fit.coarse_warning)
      est.warnings.push_back("grid resolution is coarse relative to eps=" +
                             rat_to_string(eps));
    for (int n = 1; n <= n_max; ++n)
      fit.counts.push_back(separated_count(map, eps, n, grid));
    // saturation-aware window: growth flattens once counts approach the
    // grid capacity, so the fit stops at half occupancy
    int n_eff = 0;
    for (int n = 1; n <= n_max; ++n) {
      if (fit.counts[n - 1] * 2 > total) {
        fit.saturated = true;
        break;
      }
      n_eff = n;
    }
    if (n_eff >= 2) {
      fit.fit_lo = n_eff / 2 + 1;
      fit.fit_hi = n_eff;
      if (fit.fit_hi - fit.fit_lo < 1) fit.fit_lo = std::max(1, fit.fit_hi - 1);
      // least-squares slope of log N over the window
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int cnt = 0;
      for (int n = fit.fit_lo; n <= fit.fit_hi; ++n) {
        double x = n, y = std::log((double)fit.counts[n - 1]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
      }
      double denom = cnt * sxx - sx * sx;
      if (denom > 0) {
        fit.slope = (cnt * sxy - sx * sy) / denom;
        fit.usable = true;
      }
    }
    if (!fit.usable)
      est.warnings.push_back("unusable fit window for eps=" + rat_to_string(eps));
    est.fits.push_back(std::move(fit));
  }

  // monotonicity diagnostics
  for (const auto& f : est.fits)
    for (size_t n = 1; n < f.counts.size(); ++n)
      if (f.counts[n] < f.counts[n - 1]) est.monotone_in_n = false;
  for (size_t e = 1; e < est.fits.size(); ++e)
    for (size_t n = 0; n < est.fits[e].counts.size(); ++n)
      if (est.fits[e].counts[n] < est.fits[e - 1].counts[n])
        est.monotone_in_eps = false;  // smaller eps should separate more
  if (!est.monotone_in_n) est.warnings.push_back("counts not monotone in n");
  if (!est.monotone_in_eps) est.warnings.push_back("counts not monotone in eps");

  est.h_est = 0.0;
  for (const auto& f : est.fits)
    if (f.usable && f.slope > est.h_est) est.h_est = f.slope;
  return est;
}

}  // namespace cohomdyn
