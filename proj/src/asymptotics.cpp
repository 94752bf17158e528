#include "confnodal/asymptotics.hpp"

#include <cmath>

namespace confnodal {

namespace {

std::size_t osc_points(double periods, int ppp) {
  const auto need = static_cast<std::size_t>(std::ceil(std::abs(periods) * ppp));
  return std::max<std::size_t>(4001, need + 1);
}

OscTables build_osc(const PotentialPair& pp, int n, int ppp) {
  const double beta = pp.beta();
  const double T = pp.T();
  // phase 2 n beta t spans |n| full periods over [0, T]
  const std::size_t npts = osc_points(std::abs(n), ppp);
  const AlphaOrder a = pp.alpha();
  GridFunction cq(a, npts), sq(a, npts), cd(a, npts), sd(a, npts);
  const double h = T / static_cast<double>(npts - 1);
  for (std::size_t i = 0; i < npts; ++i) {
    const double t = h * static_cast<double>(i);
    const double pv = pp.p_t(t);
    const double qp = pp.q_t(t) + pv * pv;
    const double dp = pp.dp_t(t);
    const double arg = 2.0 * static_cast<double>(n) * beta * t - 2.0 * pp.Q_t(t);
    const double c = std::cos(arg), s = std::sin(arg);
    cq[i] = qp * c;
    sq[i] = qp * s;
    cd[i] = dp * c;
    sd[i] = dp * s;
  }
  return OscTables{cq.cumulative(), sq.cumulative(), cd.cumulative(), sd.cumulative()};
}

/// Fractional power term of the order-3 bracket.
double signed_power(double base, double expo, bool* ambiguity) {
  if (base >= 0.0) return std::pow(base, expo);
  if (ambiguity) *ambiguity = true;
  return -std::pow(-base, expo);
}

}  // namespace

CoefficientBundle::CoefficientBundle(const PotentialPair& pp, std::vector<int> n_list, int ppp)
    : pp_(&pp),
      ppp_(ppp),
      G1c_(GridFunction::sample_t(pp.alpha(), 8001,
                                  [&](double t) {
                                    const double pv = pp.p_t(t);
                                    return pp.q_t(t) + pv * pv;
                                  })
               .cumulative()),
      G2c_(GridFunction::sample_t(pp.alpha(), 8001,
                                  [&](double t) {
                                    const double pv = pp.p_t(t);
                                    return (pp.q_t(t) + pv * pv) * pv;
                                  })
               .cumulative()) {
  for (int n : n_list) (void)osc(n);
}

const OscTables& CoefficientBundle::osc(int n) const {
  auto it = osc_.find(n);
  if (it == osc_.end()) it = osc_.emplace(n, build_osc(*pp_, n, ppp_)).first;
  return it->second;
}

double CoefficientBundle::A_t(int n, double t) const {
  const OscTables& tab = osc(n);
  return tab.c_qp.eval_t(t) - tab.s_dp.eval_t(t);
}

double CoefficientBundle::A(int n, double x) const {
  return A_t(n, to_transformed(x, pp_->alpha()));
}

double CoefficientBundle::A_full(int n) const {
  const OscTables& tab = osc(n);
  const std::size_t last = tab.c_qp.size() - 1;
  return tab.c_qp[last] - tab.s_dp[last];
}

CoefficientBundle coefficients(const PotentialPair& pp, const std::vector<int>& n_list, int ppp) {
  return CoefficientBundle(pp, n_list, ppp);
}

double S_expansion(const PotentialPair& pp, double x, double lambda, int order, bool* ambiguity) {
  if (lambda == 0.0) throw ConstraintError("S_expansion requires lambda != 0");
  if (order < 1 || order > 3) throw ConfigError("expansion order must be 1, 2 or 3");
  const AlphaOrder a = pp.alpha();
  const double tx = to_transformed(x, a);
  const double Qx = pp.Q_t(tx);
  const double theta = lambda * tx - Qx;
  const double st = std::sin(theta), ct = std::cos(theta);
  double result = st / lambda;
  if (order < 2) return result;

  const double periods = std::abs(lambda) * tx / kPi;
  const std::size_t panels = std::max<std::size_t>(1000, static_cast<std::size_t>(32.0 * periods));
  auto qp = [&](double t) {
    const double pv = pp.p_t(t);
    return pp.q_t(t) + pv * pv;
  };
  auto phase = [&](double t) { return 2.0 * lambda * t - 2.0 * pp.Q_t(t); };
  const double G1 = simpson(qp, 0.0, tx, panels);
  const double C = simpson([&](double t) { return qp(t) * std::cos(phase(t)); }, 0.0, tx, panels);
  const double Ssin = simpson([&](double t) { return qp(t) * std::sin(phase(t)); }, 0.0, tx, panels);
  const double Dc = simpson([&](double t) { return pp.dp_t(t) * std::cos(phase(t)); }, 0.0, tx, panels);
  const double Ds = simpson([&](double t) { return pp.dp_t(t) * std::sin(phase(t)); }, 0.0, tx, panels);
  const double px = pp.p_t(tx), p0 = pp.p0();

  // cos(theta - phase) = ct cos + st sin; sin(theta - phase) = st cos - ct sin
  result += ((px + p0) * st - G1 * ct + (ct * C + st * Ssin) + (st * Dc - ct * Ds)) /
            (2.0 * lambda * lambda);
  if (order < 3) return result;

  const double e = 1.0 + a.value;
  const double powers = (2.0 * signed_power(px + p0, e, ambiguity) -
                         std::pow(2.0, 2.0 + a.value) * signed_power(p0, e, ambiguity) +
                         signed_power(px - p0, e, ambiguity)) /
                        e;
  const double mixed =
      simpson([&](double t) { return qp(t) * (px + p0 + 2.0 * pp.p_t(t)); }, 0.0, tx, panels);
  result += ((4.0 * p0 * p0 + powers - 0.5 * G1 * G1) * st - mixed * ct) /
            (4.0 * lambda * lambda * lambda);
  return result;
}

double delta_expansion(const PotentialPair& pp, double lambda, int order, bool* ambiguity) {
  return S_expansion(pp, kPi, lambda, order, ambiguity);
}

double lambdaS_expansion(const PotentialPair& pp, const CoefficientBundle& cb, double x, int n,
                         bool* ambiguity) {
  if (n == 0) throw ConstraintError("n must be nonzero");
  const AlphaOrder a = pp.alpha();
  const double beta = pp.beta();
  const double tx = to_transformed(x, a);
  const double X = std::pow(x, a.value);
  const double Xr = X / std::pow(kPi, a.value);
  const double theta = static_cast<double>(n) * beta * tx - pp.Q_t(tx);
  const double st = std::sin(theta), ct = std::cos(theta);
  const double a1 = cb.a1(), a2 = cb.a2();
  const double G1 = cb.G1_t(tx);
  const OscTables& tab = cb.osc(n);
  const double C = tab.c_qp.eval_t(tx), Ssin = tab.s_qp.eval_t(tx);
  const double Dc = tab.c_dp.eval_t(tx), Ds = tab.s_dp.eval_t(tx);
  const double px = pp.p_t(tx), p0 = pp.p0(), ppi = pp.p_pi();
  const double An = cb.A_full(n);
  const double nb = static_cast<double>(n) * beta;

  double result = st;
  result += (((a1 - An) * Xr - G1) * ct + (px + p0) * st + (ct * C + st * Ssin) +
             (st * Dc - ct * Ds)) /
            (2.0 * nb);

  const double e = 1.0 + a.value;
  const double powers = (2.0 * signed_power(px + p0, e, ambiguity) -
                         std::pow(2.0, 2.0 + a.value) * signed_power(p0, e, ambiguity) +
                         signed_power(px - p0, e, ambiguity)) /
                        e;
  // the n^-2 bracket reuses a 16-points-per-period quadrature for the mixed term
  const double mixed = simpson(
      [&](double t) {
        const double pv = pp.p_t(t);
        return (pp.q_t(t) + pv * pv) * (px + p0 + 2.0 * pv);
      },
      0.0, tx, 2000);
  const double cos_part = ((ppi + p0) * a1 + 2.0 * a2) * Xr + (px + p0) * a1 * Xr - mixed;
  const double sin_part =
      4.0 * p0 * p0 + powers + a1 * Xr * G1 - (a1 * Xr) * (a1 * Xr) - 0.5 * G1 * G1;
  result += (cos_part * ct + sin_part * st) / (4.0 * nb * nb);
  return result;
}

}  // namespace confnodal
