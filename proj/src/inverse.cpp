#include "confnodal/inverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace confnodal {

namespace {

/// Per-level node data in the t-coordinate plus the scaled deviation
/// d_m(j) = pi^(1-alpha) (m (x_m^j)^alpha - j pi^alpha), whose limit is Q.
struct LevelData {
  int m;
  std::vector<double> t;     // node positions
  std::vector<double> d;     // deviation values at the nodes
  CubicSpline d_spline;      // anchored at (0,0) and (T,0)
  GridFunction d_grid;
};

LevelData build_level(const NodalInput& input, int m, std::size_t grid_points) {
  const AlphaOrder alpha = input.alpha;
  const double a = alpha.value;
  const double pia = std::pow(kPi, a);
  const double p1a = std::pow(kPi, 1.0 - a);
  const auto& xs = input.nodes_at(m);
  if (static_cast<int>(xs.size()) != m - 1) {
    throw ConstraintError("node list for index " + std::to_string(m) + " has " +
                          std::to_string(xs.size()) + " entries, expected " + std::to_string(m - 1));
  }
  std::vector<double> ts{0.0}, ds{0.0};
  ts.reserve(xs.size() + 2);
  ds.reserve(xs.size() + 2);
  double prev = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    if (!(x > prev) || !(x < kPi)) {
      throw ConstraintError("nodes for index " + std::to_string(m) +
                            " must increase strictly inside (0, pi)");
    }
    prev = x;
    const double t = to_transformed(x, alpha);
    ts.push_back(t);
    ds.push_back(p1a * (static_cast<double>(m) * a * t - static_cast<double>(j + 1) * pia));
  }
  ts.push_back(alpha.T());
  ds.push_back(0.0);
  CubicSpline spline(ts, ds);
  GridFunction grid(alpha, grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) grid[i] = spline(grid.t(i));
  ts.erase(ts.begin());
  ts.pop_back();
  ds.erase(ds.begin());
  ds.pop_back();
  return LevelData{m, std::move(ts), std::move(ds), std::move(spline), std::move(grid)};
}

std::vector<LevelData> build_levels(const NodalInput& input, const InverseOptions& opt) {
  if (input.n_use < 8) throw ConstraintError("n_use must be at least 8");
  std::vector<LevelData> out;
  for (int m : input.levels()) out.push_back(build_level(input, m, opt.grid_points));
  return out;
}

/// Exact 3-term fit d_m = u0 + u1/m + u2/m^2 across three levels.
std::array<GridFunction, 3> richardson_fit(const std::vector<LevelData>& lv, AlphaOrder alpha,
                                           std::size_t grid_points) {
  std::array<double, 9> M{};
  for (int r = 0; r < 3; ++r) {
    const double m = static_cast<double>(lv[static_cast<std::size_t>(r)].m);
    M[static_cast<std::size_t>(3 * r)] = 1.0;
    M[static_cast<std::size_t>(3 * r + 1)] = 1.0 / m;
    M[static_cast<std::size_t>(3 * r + 2)] = 1.0 / (m * m);
  }
  const double det = M[0] * (M[4] * M[8] - M[5] * M[7]) - M[1] * (M[3] * M[8] - M[5] * M[6]) +
                     M[2] * (M[3] * M[7] - M[4] * M[6]);
  const std::array<double, 9> inv{
      (M[4] * M[8] - M[5] * M[7]) / det, (M[2] * M[7] - M[1] * M[8]) / det,
      (M[1] * M[5] - M[2] * M[4]) / det, (M[5] * M[6] - M[3] * M[8]) / det,
      (M[0] * M[8] - M[2] * M[6]) / det, (M[2] * M[3] - M[0] * M[5]) / det,
      (M[3] * M[7] - M[4] * M[6]) / det, (M[1] * M[6] - M[0] * M[7]) / det,
      (M[0] * M[4] - M[1] * M[3]) / det};
  std::array<GridFunction, 3> u{GridFunction(alpha, grid_points), GridFunction(alpha, grid_points),
                                GridFunction(alpha, grid_points)};
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double d0 = lv[0].d_grid[i], d1 = lv[1].d_grid[i], d2 = lv[2].d_grid[i];
    for (std::size_t r = 0; r < 3; ++r) {
      u[r][i] = inv[3 * r] * d0 + inv[3 * r + 1] * d1 + inv[3 * r + 2] * d2;
    }
  }
  return u;
}

GridFunction g_single_level(const LevelData& lv, const GridFunction& Q_rec,
                            const GridFunction& f_rec, const GridFunction& p_rec,
                            const GridFunction& q_est, const InverseOptions& opt) {
  const AlphaOrder alpha = Q_rec.alpha();
  const double a = alpha.value;
  const double beta = alpha.beta();
  const double T = alpha.T();
  const double pia = std::pow(kPi, a);
  const double m = static_cast<double>(lv.m);

  // The oscillatory integral int (q_est + p^2) cos(phi) - p' sin(phi) dt with
  // phi = 2 m beta t - 2 Q is evaluated after integration by parts: since
  // q_est + p^2 = f' + C for a constant C, only f and p enter the quadrature.
  // This avoids the numerical derivatives, whose endpoint error would
  // otherwise bias the cumulative.
  GridFunction qp2(alpha, q_est.size());
  for (std::size_t i = 0; i < qp2.size(); ++i) {
    qp2[i] = q_est[i] + p_rec[i] * p_rec[i];
  }
  const double C =
      (qp2.integral() - (f_rec[f_rec.size() - 1] - f_rec[0])) / T;
  auto phase = [&](double t) { return 2.0 * m * beta * t - 2.0 * Q_rec.eval_t(t); };
  auto boundary = [&](double t) {
    const double phi = phase(t);
    return f_rec.eval_t(t) * std::cos(phi) - p_rec.eval_t(t) * std::sin(phi);
  };
  const std::size_t fine =
      std::max<std::size_t>(8001, static_cast<std::size_t>(opt.a_points_per_period) *
                                          static_cast<std::size_t>(lv.m) +
                                      1);
  GridFunction integrand(alpha, fine);
  for (std::size_t i = 0; i < fine; ++i) {
    const double t = integrand.t(i);
    const double pv = p_rec.eval_t(t);
    const double phi = phase(t);
    const double dphi = 2.0 * m * beta - 2.0 * pv;
    integrand[i] = (f_rec.eval_t(t) * std::sin(phi) + pv * std::cos(phi)) * dphi +
                   C * std::cos(phi);
  }
  const GridFunction cumW = integrand.cumulative();
  const double b0 = boundary(0.0);
  auto A_at = [&](double t) { return boundary(t) - b0 + cumW.eval_t(t); };
  const double A_full = boundary(T) - b0 + cumW[fine - 1];

  std::vector<double> ts{0.0}, gs{0.0};
  ts.reserve(lv.t.size() + 2);
  gs.reserve(lv.t.size() + 2);
  for (std::size_t j = 0; j < lv.t.size(); ++j) {
    const double t = lv.t[j];
    const double X = a * t;
    const double A_j = A_at(t);
    const double braces = 2.0 * beta * m * (lv.d[j] - Q_rec.eval_t(t)) - f_rec.eval_t(t) + A_j -
                          A_full * X / pia;
    ts.push_back(t);
    gs.push_back(beta * m * braces);
  }
  ts.push_back(T);
  gs.push_back(0.0);
  CubicSpline spline(ts, gs);
  GridFunction g(alpha, Q_rec.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = spline(g.t(i));
  return g;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quantile_of(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<int> NodalInput::levels() const {
  const int n2 = level2();
  if (richardson) return {n_use, (3 * n_use) / 2, n2};
  return {n_use, n2};
}

const std::vector<double>& NodalInput::nodes_at(int n) const {
  auto it = nodes.find(n);
  if (it == nodes.end()) {
    throw ConstraintError("node list for index " + std::to_string(n) + " is missing");
  }
  return it->second;
}

std::pair<double, int> select_node_sequence(const NodalInput& input, double x, bool* clamped) {
  const double a = input.alpha.value;
  const auto& xs = input.nodes_at(input.n_use);
  const double ratio = std::pow(x, a) / std::pow(kPi, a);
  auto j = static_cast<int>(std::lround(static_cast<double>(input.n_use) * ratio));
  const int jc = std::clamp(j, 1, input.n_use - 1);
  if (clamped) *clamped = (jc != j);
  return {xs[static_cast<std::size_t>(jc - 1)], jc};
}

GridFunction recover_Q(const NodalInput& input, const InverseOptions& opt) {
  const auto lv = build_levels(input, opt);
  if (input.richardson) {
    return richardson_fit(lv, input.alpha, opt.grid_points)[0];
  }
  return lv.back().d_grid;
}

GridFunction recover_f(const NodalInput& input, const GridFunction& Q_rec,
                       const InverseOptions& opt) {
  const auto lv = build_levels(input, opt);
  const double two_beta = 2.0 * input.alpha.beta();
  const LevelData& low = lv.front();
  const LevelData& high = lv.back();
  GridFunction f(input.alpha, opt.grid_points);
  for (std::size_t i = 0; i < opt.grid_points; ++i) {
    const double fl = two_beta * static_cast<double>(low.m) * (low.d_grid[i] - Q_rec[i]);
    if (!input.richardson) {
      f[i] = fl;
      continue;
    }
    const double fh = two_beta * static_cast<double>(high.m) * (high.d_grid[i] - Q_rec[i]);
    // the prelimit is f + 2 beta u2 / m: eliminate the 1/m term exactly
    const double wl = -static_cast<double>(low.m) / static_cast<double>(high.m - low.m);
    const double wh = static_cast<double>(high.m) / static_cast<double>(high.m - low.m);
    f[i] = wl * fl + wh * fh;
  }
  return f;
}

GridFunction recover_g(const NodalInput& input, const GridFunction& Q_rec,
                       const GridFunction& f_rec, const GridFunction& q_est,
                       const InverseOptions& opt) {
  const auto lv = build_levels(input, opt);
  const GridFunction p_rec = step2_p(Q_rec, opt.smoothing_window);
  if (!input.richardson) {
    return g_single_level(lv.back(), Q_rec, f_rec, p_rec, q_est, opt);
  }
  std::vector<GridFunction> gs;
  gs.reserve(lv.size());
  for (const auto& level : lv) {
    gs.push_back(g_single_level(level, Q_rec, f_rec, p_rec, q_est, opt));
  }
  // per-point least squares for g_m = g + e/m across the levels
  double s11 = 0, s12 = 0, s22 = 0;
  std::vector<double> im(lv.size());
  for (std::size_t r = 0; r < lv.size(); ++r) {
    im[r] = 1.0 / static_cast<double>(lv[r].m);
    s11 += 1.0;
    s12 += im[r];
    s22 += im[r] * im[r];
  }
  const double det = s11 * s22 - s12 * s12;
  GridFunction g(input.alpha, opt.grid_points);
  for (std::size_t i = 0; i < opt.grid_points; ++i) {
    double b1 = 0, b2 = 0;
    for (std::size_t r = 0; r < lv.size(); ++r) {
      b1 += gs[r][i];
      b2 += gs[r][i] * im[r];
    }
    g[i] = (s22 * b1 - s12 * b2) / det;
  }
  return g;
}

GridFunction step2_p(const GridFunction& Q_rec, int smoothing_window) {
  return Q_rec.smoothed(smoothing_window).derivative();
}

GridFunction step3_r(const GridFunction& f_rec, const GridFunction& p_rec) {
  const AlphaOrder alpha = f_rec.alpha();
  const double a = alpha.value;
  GridFunction p2(alpha, p_rec.size());
  for (std::size_t i = 0; i < p2.size(); ++i) p2[i] = p_rec[i] * p_rec[i];
  // the d_alpha-mean term enters scaled by alpha (D^alpha x^alpha = alpha);
  // at alpha = 1 this is the classical constant
  const double mean_term = a * p2.integral() / std::pow(kPi, a);
  const GridFunction df = f_rec.derivative();
  GridFunction r(alpha, f_rec.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = df[i] - p2[i] + mean_term;
  return r;
}

Step4Report step4_mean_q(const GridFunction& g_rec, const GridFunction& r_rec,
                         const GridFunction& p_rec, const GridFunction& Q_rec,
                         const InverseOptions& opt) {
  const AlphaOrder alpha = g_rec.alpha();
  const double a = alpha.value;
  const double pia = std::pow(kPi, a);
  const std::size_t n = g_rec.size();
  const double bsum = p_rec[n - 1] + p_rec[0];
  const double kappa = opt.mean_formula == InverseOptions::MeanFormula::kAsWritten ? 1.0 : 0.0;

  GridFunction rp2p(alpha, n), rp2(alpha, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = r_rec[i] + p_rec[i] * p_rec[i];
    rp2[i] = v;
    rp2p[i] = v * p_rec[i];
  }
  const GridFunction cum_rp2p = rp2p.cumulative();
  const double tot_rp2p = cum_rp2p[n - 1];
  const double tot_rp2 = rp2.integral();

  std::vector<double> dens(n), nums(n);
  double den_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double X = a * g_rec.t(i);
    dens[i] = a * Q_rec[i] - kappa * X * bsum;
    nums[i] = g_rec[i] - cum_rp2p[i] + X / pia * tot_rp2p + kappa * X * bsum / pia * tot_rp2;
    den_max = std::max(den_max, std::abs(dens[i]));
  }

  Step4Report rep;
  // The denominator scales like alpha*|Q| ~ |p|/pi^(1-alpha); anything this
  // small means p is (numerically) constant and the constant of q is not
  // recoverable from the data.
  if (den_max < 1e-4) {
    rep.degenerate = true;
    return rep;
  }
  std::vector<double> ests;
  double acc_nd = 0.0, acc_dd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dens[i]) <= opt.denom_threshold * den_max) continue;
    ests.push_back(nums[i] / dens[i]);
    acc_nd += nums[i] * dens[i];
    acc_dd += dens[i] * dens[i];
  }
  if (ests.empty()) {
    rep.degenerate = true;
    return rep;
  }
  rep.points = ests.size();
  rep.median = median_of(ests);
  rep.iqr = quantile_of(ests, 0.75) - quantile_of(ests, 0.25);
  const double raw = opt.aggregation == InverseOptions::Aggregation::kMedian ? rep.median
                                                                             : acc_nd / acc_dd;
  // the empirical normalization: the quoted formula's right side carries an
  // extra factor alpha relative to (1/pi^alpha) int q d_alpha
  rep.mean_q = opt.mean_formula == InverseOptions::MeanFormula::kAsWritten ? a * raw : raw;
  return rep;
}

GridFunction step5_q(const GridFunction& r_rec, double mean_q) {
  const double a = r_rec.alpha().value;
  GridFunction q(r_rec.alpha(), r_rec.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = r_rec[i] + a * mean_q;
  return q;
}

ReconstructionResult reconstruct(const NodalInput& input, const InverseOptions& opt) {
  const AlphaOrder alpha = input.alpha;
  const double a = alpha.value;
  GridFunction Q = recover_Q(input, opt);
  GridFunction f = recover_f(input, Q, opt);
  GridFunction p = step2_p(Q, opt.smoothing_window);
  GridFunction r = step3_r(f, p);

  ReconstructionResult res{Q, p, f, r, GridFunction(alpha, opt.grid_points),
                           r,  // q placeholder, replaced below
                           0.0, {}, 0.0, 0.0, 0, 0.0, {}};
  if (!input.richardson) {
    res.notes.push_back(
        "richardson disabled: f and g carry uncorrected finite-n truncation bias");
  }

  double mean = 0.0;
  bool degenerate = false;
  for (int pass = 0; pass < std::max(1, opt.refine_passes); ++pass) {
    const GridFunction q_est = step5_q(r, mean);
    res.g = recover_g(input, Q, f, q_est, opt);
    res.step4 = step4_mean_q(res.g, r, p, Q, opt);
    res.passes_run = pass + 1;
    if (res.step4.degenerate) {
      degenerate = true;
      res.notes.push_back(
          "degenerate constant-recovery denominator (p effectively constant); mean of q not "
          "recoverable from this data");
      break;
    }
    res.mean_change_last_pass = std::abs(res.step4.mean_q - mean);
    mean = res.step4.mean_q;
  }
  res.mean_q = degenerate ? 0.0 : mean;
  res.q = step5_q(r, res.mean_q);

  res.r_mean_residual = a * r.integral() / std::pow(kPi, a);
  res.Q_end_residual = std::abs(Q[opt.grid_points - 1]);
  return res;
}

double interior_rel_error(const GridFunction& got, const GridFunction& want, double interior) {
  if (got.size() != want.size()) throw ConfigError("grid size mismatch in error computation");
  const double a = got.alpha().value;
  const double lo = std::pow((1.0 - interior) / 2.0 * kPi, a) / a;
  const double hi = std::pow((1.0 + interior) / 2.0 * kPi, a) / a;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double t = got.t(i);
    if (t < lo || t > hi) continue;
    num += (got[i] - want[i]) * (got[i] - want[i]);
    den += want[i] * want[i];
  }
  if (den == 0.0) return std::sqrt(num * got.h());
  return std::sqrt(num / den);
}

}  // namespace confnodal
