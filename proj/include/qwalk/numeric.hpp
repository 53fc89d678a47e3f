#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "poly.hpp"

namespace qwalk {

using cdouble = std::complex<double>;

// Carlson's symmetric integral R_F(x, y, z), x, y, z >= 0 with at most one zero.
inline double carlson_rf(double x, double y, double z) {
  if (x < 0 || y < 0 || z < 0 || (x == 0) + (y == 0) + (z == 0) > 1)
    throw NumericHealth("R_F called outside its domain");
  for (int it = 0; it < 200; ++it) {
    double sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    double lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    double mu = (x + y + z) / 3;
    double dx = 1 - x / mu, dy = 1 - y / mu, dz = 1 - z / mu;
    double eps = std::max({std::fabs(dx), std::fabs(dy), std::fabs(dz)});
    if (eps < 1e-4) {
      double e2 = dx * dy - dz * dz, e3 = dx * dy * dz;
      return (1 - e2 / 10 + e3 / 14 + e2 * e2 / 24 - 3 * e2 * e3 / 44) / std::sqrt(mu);
    }
  }
  throw NumericHealth("R_F did not converge");
}

namespace detail {
inline constexpr double gk_x[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline void gk15(const std::function<double(double)>& f, double a, double b, double& val, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fc = f(c);
  double k = fc * gk_wk[7], g = fc * gk_wg[3];
  for (int i = 0; i < 7; ++i) {
    double f1 = f(c - h * gk_x[i]), f2 = f(c + h * gk_x[i]);
    k += gk_wk[i] * (f1 + f2);
    if (i % 2 == 1) g += gk_wg[i / 2] * (f1 + f2);
  }
  val = k * h;
  err = std::fabs((k - g) * h);
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature: the interval with the largest error
// estimate is bisected until the total estimate meets the tolerance or the budget runs out.
inline double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-14,
                        int max_intervals = 4000) {
  struct Piece {
    double a, b, v, e;
    bool operator<(const Piece& o) const { return e < o.e; }
  };
  std::priority_queue<Piece> heap;
  Piece p{a, b, 0, 0};
  detail::gk15(f, a, b, p.v, p.e);
  heap.push(p);
  double total = p.v, err = p.e;
  while (static_cast<int>(heap.size()) < max_intervals) {
    if (err <= std::max(rel_tol * std::fabs(total), 1e-300)) break;
    Piece w = heap.top();
    double m = 0.5 * (w.a + w.b);
    if (m <= w.a || m >= w.b) break;
    heap.pop();
    Piece l{w.a, m, 0, 0}, r{m, w.b, 0, 0};
    detail::gk15(f, l.a, l.b, l.v, l.e);
    detail::gk15(f, r.a, r.b, r.v, r.e);
    total += l.v + r.v - w.v;
    err += l.e + r.e - w.e;
    heap.push(l);
    heap.push(r);
  }
  // resum to shed the drift of the running total
  double s = 0;
  while (!heap.empty()) {
    s += heap.top().v;
    heap.pop();
  }
  return s;
}

// Real roots of an exact polynomial: companion-matrix eigenvalues, then Newton in long double.
// Exact zero roots are split off first. Complex pairs are returned with nonzero imaginary part.
inline std::vector<cdouble> poly_roots(const QPoly& p) {
  std::vector<cdouble> out;
  QPoly q = p;
  while (!q.zero() && q.degree() > 0 && is_zero(q.coeff(0))) {
    out.emplace_back(0.0, 0.0);
    q = QPoly::divmod(q, QPoly{Rat(0), Rat(1)}).first;
  }
  const int n = q.degree();
  if (n <= 0) return out;
  std::vector<long double> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = static_cast<long double>(q.coeff(k).get_d());
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -static_cast<double>(c[i] / c[n]);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  auto ev = es.eigenvalues();
  for (int i = 0; i < n; ++i) {
    cdouble z = ev(i);
    if (std::fabs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z))) {
      long double x = z.real();
      for (int it = 0; it < 50; ++it) {
        long double f = 0, df = 0;
        for (int k = n; k >= 0; --k) {
          df = df * x + f;
          f = f * x + c[k];
        }
        if (df == 0) break;
        long double step = f / df;
        x -= step;
        if (std::fabs(static_cast<double>(step)) <= 1e-19 * std::max(1.0L, std::fabs(x))) break;
      }
      z = cdouble(static_cast<double>(x), 0.0);
    }
    out.push_back(z);
  }
  return out;
}

template <class F>
double eval_ld(const QPoly& p, F x) {
  long double r = 0;
  for (int k = p.degree(); k >= 0; --k) r = r * x + static_cast<long double>(p.coeff(k).get_d());
  return static_cast<double>(r);
}

}  // namespace qwalk
