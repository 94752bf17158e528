#include "confnodal/grid.hpp"

#include <algorithm>
#include <cmath>

namespace confnodal {

GridFunction::GridFunction(AlphaOrder alpha, std::size_t npts)
    : alpha_(alpha), T_(alpha.T()), h_(0.0), v_(npts, 0.0) {
  if (npts < 5) throw ConstraintError("grid needs at least 5 points");
  h_ = T_ / static_cast<double>(npts - 1);
}

GridFunction GridFunction::sample_t(AlphaOrder alpha, std::size_t npts,
                                    const std::function<double(double)>& f_t) {
  GridFunction g(alpha, npts);
  for (std::size_t i = 0; i < npts; ++i) g.v_[i] = f_t(g.t(i));
  return g;
}

GridFunction GridFunction::sample_x(AlphaOrder alpha, std::size_t npts,
                                    const std::function<double(double)>& f_x) {
  GridFunction g(alpha, npts);
  for (std::size_t i = 0; i < npts; ++i) g.v_[i] = f_x(g.x(i));
  return g;
}

double GridFunction::eval_t(double t) const {
  if (t < -1e-12 || t > T_ * (1.0 + 1e-12)) {
    throw ConstraintError("evaluation outside [0, pi^alpha/alpha]: t=" + std::to_string(t));
  }
  const std::size_t n = v_.size();
  auto i = static_cast<long>(std::floor(t / h_)) - 1;
  i = std::clamp<long>(i, 0, static_cast<long>(n) - 4);
  const auto i0 = static_cast<std::size_t>(i);
  // 4-point Lagrange on nodes i0..i0+3
  double result = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    double w = 1.0;
    const double tk = this->t(i0 + k);
    for (std::size_t m = 0; m < 4; ++m) {
      if (m == k) continue;
      w *= (t - this->t(i0 + m)) / (tk - this->t(i0 + m));
    }
    result += w * v_[i0 + k];
  }
  return result;
}

GridFunction GridFunction::derivative() const {
  const std::size_t n = v_.size();
  GridFunction d(alpha_, n);
  const double s = 1.0 / (12.0 * h_);
  d.v_[0] = s * (-25 * v_[0] + 48 * v_[1] - 36 * v_[2] + 16 * v_[3] - 3 * v_[4]);
  d.v_[1] = s * (-3 * v_[0] - 10 * v_[1] + 18 * v_[2] - 6 * v_[3] + v_[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d.v_[i] = s * (v_[i - 2] - 8 * v_[i - 1] + 8 * v_[i + 1] - v_[i + 2]);
  }
  d.v_[n - 2] = s * (3 * v_[n - 1] + 10 * v_[n - 2] - 18 * v_[n - 3] + 6 * v_[n - 4] - v_[n - 5]);
  d.v_[n - 1] = s * (25 * v_[n - 1] - 48 * v_[n - 2] + 36 * v_[n - 3] - 16 * v_[n - 4] + 3 * v_[n - 5]);
  return d;
}

GridFunction GridFunction::cumulative() const {
  const std::size_t n = v_.size();
  GridFunction c(alpha_, n);
  const double w = h_ / 24.0;
  double acc = 0.0;
  c.v_[0] = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double cell;
    if (i == 0) {
      cell = w * (9 * v_[0] + 19 * v_[1] - 5 * v_[2] + v_[3]);
    } else if (i + 2 < n) {
      cell = w * (-v_[i - 1] + 13 * v_[i] + 13 * v_[i + 1] - v_[i + 2]);
    } else {
      cell = w * (v_[n - 4] - 5 * v_[n - 3] + 19 * v_[n - 2] + 9 * v_[n - 1]);
    }
    acc += cell;
    c.v_[i + 1] = acc;
  }
  return c;
}

double GridFunction::integral() const {
  return cumulative()[size() - 1];
}

GridFunction GridFunction::smoothed(int window) const {
  if (window <= 1) return *this;
  const auto n = static_cast<long>(v_.size());
  const long half = window / 2;
  GridFunction s(alpha_, v_.size());
  for (long i = 0; i < n; ++i) {
    // shrink symmetrically near the edges: a truncated one-sided window would
    // shift the effective sample point and bias derivatives taken afterwards
    const long half_i = std::min({half, i, n - 1 - i});
    double acc = 0.0;
    for (long k = i - half_i; k <= i + half_i; ++k) acc += v_[static_cast<std::size_t>(k)];
    s.v_[static_cast<std::size_t>(i)] = acc / static_cast<double>(2 * half_i + 1);
  }
  return s;
}

double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (panels == 0) panels = 1;
  const double h = (b - a) / static_cast<double>(2 * panels);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < 2 * panels; ++i) {
    acc += f(a + h * static_cast<double>(i)) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : x_(std::move(xs)), y_(std::move(ys)) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n < 2) throw ConstraintError("spline needs matching knots, >= 2");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) throw ConstraintError("spline knots must increase strictly");
  }
  m_.assign(n, 0.0);
  if (n < 4) return;  // fall back to linear segments (moments stay zero)

  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x_[i + 1] - x_[i];

  // Solve for interior moments M_1..M_{n-2} with not-a-knot ends folded in.
  const std::size_t m = n - 2;  // unknown count
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const std::size_t r = i - 1;
    sub[r] = h[i - 1] / 6.0;
    diag[r] = (h[i - 1] + h[i]) / 3.0;
    sup[r] = h[i] / 6.0;
    rhs[r] = (y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1];
  }
  const double r0 = h[0] / h[1];
  diag[0] += sub[0] * (1.0 + r0);
  sup[0] -= sub[0] * r0;
  sub[0] = 0.0;
  const double rn = h[n - 2] / h[n - 3];
  diag[m - 1] += sup[m - 1] * (1.0 + rn);
  sub[m - 1] -= sup[m - 1] * rn;
  sup[m - 1] = 0.0;

  for (std::size_t i = 1; i < m; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> sol(m);
  sol[m - 1] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    sol[i] = (rhs[i] - sup[i] * sol[i + 1]) / diag[i];
  }
  for (std::size_t i = 0; i < m; ++i) m_[i + 1] = sol[i];
  m_[0] = (1.0 + r0) * m_[1] - r0 * m_[2];
  m_[n - 1] = (1.0 + rn) * m_[n - 2] - rn * m_[n - 3];
}

double CubicSpline::operator()(double x) const {
  const std::size_t n = x_.size();
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  auto i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
  const double hi = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - x, b = x - x_[i];
  return m_[i] * a * a * a / (6.0 * hi) + m_[i + 1] * b * b * b / (6.0 * hi) +
         (y_[i] / hi - m_[i] * hi / 6.0) * a + (y_[i + 1] / hi - m_[i + 1] * hi / 6.0) * b;
}

}  // namespace confnodal
