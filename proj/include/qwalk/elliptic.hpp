#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "numeric.hpp"
#include "walk.hpp"

namespace qwalk {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- branch points

struct BranchPoints {
  std::vector<double> x;  // finite roots, ordered by modulus then value
  bool d4_zero = false;   // three finite roots, the fourth at infinity
};

inline BranchPoints branch_points(const QPoly& D) {
  if (D.degree() < 3) throw DegenerateWalk("genus 0: discriminant has degree < 3 (double root at infinity)");
  if (QPoly::gcd(D, D.derivative()).degree() > 0) throw DegenerateWalk("genus 0: repeated branch point");
  BranchPoints bp;
  bp.d4_zero = D.degree() == 3;
  for (cdouble z : poly_roots(D)) {
    if (z.imag() != 0) throw UnsupportedConfiguration("unsupported branch-point configuration: non-real roots");
    bp.x.push_back(z.real());
  }
  std::sort(bp.x.begin(), bp.x.end(), [](double a, double b) {
    return std::fabs(a) != std::fabs(b) ? std::fabs(a) < std::fabs(b) : a < b;
  });
  // equal moduli: x1 <= x2 but x3 >= 0, so that 0 <= x2 <= x3 can hold
  if (bp.x.size() == 4 && std::fabs(std::fabs(bp.x[2]) - std::fabs(bp.x[3])) <= 1e-12 * std::fabs(bp.x[3]) &&
      bp.x[2] < bp.x[3])
    std::swap(bp.x[2], bp.x[3]);
  return bp;
}

// ---------------------------------------------------------------- Weierstrass invariants

struct Invariants {
  double e1 = 0, e2 = 0, e3 = 0, g2 = 0, g3 = 0;
};

inline Invariants invariants_from_e(double e1, double e2, double e3) {
  return {e1, e2, e3, -4 * (e1 * e2 + e2 * e3 + e3 * e1), 4 * e1 * e2 * e3};
}

// g2, g3 of a quartic (or cubic) written a0 x^4 + 4 a1 x^3 + 6 a2 x^2 + 4 a3 x + a4, exact
inline std::pair<Rat, Rat> quartic_invariants(const QPoly& D) {
  Rat a0 = D.coeff(4), a1 = D.coeff(3) / 4, a2 = D.coeff(2) / 6, a3 = D.coeff(1) / 4, a4 = D.coeff(0);
  Rat g2 = a0 * a4 - 4 * a1 * a3 + 3 * a2 * a2;
  Rat g3 = a0 * a2 * a4 + 2 * a1 * a2 * a3 - a2 * a2 * a2 - a0 * a3 * a3 - a1 * a1 * a4;
  return {g2, g3};
}

// ---------------------------------------------------------------- theta-function evaluation of wp

struct WpValue {
  cdouble wp, dwp;
};

// Weierstrass wp for the rectangular lattice generated by omega2 (real) and i*omega1_im.
class WeierstrassP {
 public:
  WeierstrassP(double omega2, double omega1_im) : w2_(omega2), w1_(omega1_im) {
    if (!(omega2 > 0) || !(omega1_im > 0)) throw NumericHealth("lattice periods must be positive");
    rotated_ = omega1_im < omega2;
    double re = rotated_ ? w1_ : w2_, im = rotated_ ? w2_ : w1_;
    wr_ = re;
    wi_ = im;
    q_ = std::exp(-std::numbers::pi * im / re);
    th2_ = theta(2, 0).real();
    th3_ = theta(3, 0).real();
    th4_ = theta(4, 0).real();
    double c = std::numbers::pi * std::numbers::pi / (3 * re * re);
    double t2 = std::pow(th2_, 4), t4 = std::pow(th4_, 4);
    double f1 = c * (t2 + 2 * t4), f2 = c * (t2 - t4), f3 = -c * (2 * t2 + t4);
    inner_e1_ = f1;
    // rotation wp(z) = -wp(-iz) maps the inner (f1 > f2 > f3) to (-f3 > -f2 > -f1)
    inv_ = rotated_ ? invariants_from_e(-f3, -f2, -f1) : invariants_from_e(f1, f2, f3);
  }

  double omega2() const { return w2_; }
  double omega1_im() const { return w1_; }
  const Invariants& invariants() const { return inv_; }

  WpValue eval(cdouble z) const {
    if (!rotated_) return eval_inner(z);
    WpValue v = eval_inner(cdouble(0, -1) * z);
    return {-v.wp, cdouble(0, 1) * v.dwp};
  }
  cdouble wp(cdouble z) const { return eval(z).wp; }
  cdouble wp_prime(cdouble z) const { return eval(z).dwp; }
  bool is_lattice_point(cdouble z) const {
    double x = z.real() / w2_, y = z.imag() / w1_;
    return std::fabs(x - std::nearbyint(x)) < 1e-12 && std::fabs(y - std::nearbyint(y)) < 1e-12;
  }
  // real part of wp on the real axis, +inf at the poles
  double wp_real(double t) const { return is_lattice_point(t) ? kInf : wp(cdouble(t, 0)).real(); }

  // |wp'^2 - (4 wp^3 - g2 wp - g3)| / max(1, |wp|^3)
  double ode_residual(const WpValue& v) const {
    cdouble r = v.dwp * v.dwp - (4.0 * v.wp * v.wp * v.wp - inv_.g2 * v.wp - inv_.g3);
    return std::abs(r) / std::max(1.0, std::pow(std::abs(v.wp), 3));
  }

 private:
  cdouble theta(int k, cdouble v) const {
    cdouble s = 0;
    for (int n = 0; n < 60; ++n) {
      cdouble term;
      double a = (k <= 2) ? (n + 0.5) * (n + 0.5) : double(n + 1) * (n + 1);
      double qa = std::pow(q_, a);
      switch (k) {
        case 1: term = (n % 2 ? -2.0 : 2.0) * qa * std::sin(double(2 * n + 1) * v); break;
        case 2: term = 2.0 * qa * std::cos(double(2 * n + 1) * v); break;
        case 3: term = 2.0 * qa * std::cos(double(2 * n + 2) * v); break;
        default: term = ((n + 1) % 2 ? -2.0 : 2.0) * qa * std::cos(double(2 * n + 2) * v); break;
      }
      s += term;
      if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s)) && n > 1) break;
    }
    return k >= 3 ? 1.0 + s : s;
  }

  WpValue eval_inner(cdouble z) const {
    // reduce to the rectangle centred at 0
    double x = z.real() - wr_ * std::nearbyint(z.real() / wr_);
    double y = z.imag() - wi_ * std::nearbyint(z.imag() / wi_);
    if (std::fabs(x) < 1e-14 * wr_ && std::fabs(y) < 1e-14 * wi_) throw NumericHealth("wp evaluated at a lattice point");
    cdouble v = std::numbers::pi * cdouble(x, y) / wr_;
    cdouble t1 = theta(1, v), t2 = theta(2, v), t3 = theta(3, v), t4 = theta(4, v);
    cdouble s = std::numbers::pi * th3_ * th4_ * t2 / (wr_ * t1);
    double k = std::numbers::pi / wr_;
    double c0 = th2_ * th3_ * th4_;
    return {inner_e1_ + s * s, -2.0 * k * k * k * t2 * t3 * t4 * (c0 * c0) / (t1 * t1 * t1)};
  }

  double w2_, w1_, wr_ = 0, wi_ = 0, q_ = 0, th2_ = 0, th3_ = 0, th4_ = 0, inner_e1_ = 0;
  bool rotated_ = false;
  Invariants inv_;
};

// ---------------------------------------------------------------- elliptic data of a walk

struct EllipticOptions {
  double period_tol = 1e-10;  // relative agreement of the two period integrators
};

struct EllipticData {
  std::array<double, 4> x{};  // branch points x1..x4; x4 = inf when d4 = 0
  bool d4_zero = false;
  bool ordering_ok = true;    // x1 <= x2, [x1,x2] in [-1,1], 0 <= x2 <= x3
  double y1 = 0, X_y1 = 0;    // branch point of D~ and the double root over it (may be inf)
  double omega1 = 0;          // imaginary part of the imaginary period
  double omega2 = 0, omega3 = 0;
  Invariants inv;             // e1 > e2 > e3, g2, g3
  Rat g2_exact, g3_exact;
  // homography x = p + q/(wp_printed - r) with wp_printed = 4 wp
  double p = 0, q = 0, r = 0;
  // effective constants for wp of the lattice <omega2, i omega1>: x = p + Q/(wp - R),
  // or x = (wp - beta)/alpha when d4 = 0
  double Q = 0, R = 0, alpha = 0, beta = 0;
  double t_star = 0;          // wp at the point over X(y1)
  std::array<double, 3> omega_carlson{}, omega_quadrature{};
  double period_rel_diff = 0;
  double rho() const { return omega3 / omega2; }
  WeierstrassP lattice() const { return WeierstrassP(omega2, omega1); }
};

namespace detail {

// 2 * integral of dx / sqrt(|D(x)|) between consecutive roots lo < hi
inline double root_interval_integral(double lead, const std::vector<double>& roots, double lo, double hi) {
  std::vector<double> others;
  bool skipped_lo = false, skipped_hi = false;
  for (double r : roots) {
    if (!skipped_lo && r == lo) {
      skipped_lo = true;
      continue;
    }
    if (!skipped_hi && r == hi) {
      skipped_hi = true;
      continue;
    }
    others.push_back(r);
  }
  auto f = [&](double th) {
    double s = std::sin(th);
    double xv = lo + (hi - lo) * s * s;
    double prod = std::fabs(lead);
    for (double r : others) prod *= std::fabs(xv - r);
    return 2.0 / std::sqrt(prod);
  };
  return 2 * integrate(f, 0, std::numbers::pi / 2);
}

inline bool between(double v, double a, double b) { return v > std::min(a, b) && v < std::max(a, b); }

}  // namespace detail

inline EllipticData elliptic_data(const WalkSpec& w, const EllipticOptions& opt = {}) {
  DegeneracyReport dr = degeneracy(w);
  if (dr.is_singular) throw DegenerateWalk("singular walk");
  if (dr.reducible) throw DegenerateWalk("reducible kernel");
  KernelData k = kernel_data(w);
  BranchPoints bp = branch_points(k.D);
  EllipticData E;
  E.d4_zero = bp.d4_zero;
  for (int i = 0; i < 4; ++i) E.x[i] = i < static_cast<int>(bp.x.size()) ? bp.x[i] : kInf;
  const double slack = 1e-12;
  E.ordering_ok = E.x[0] <= E.x[1] && E.x[0] >= -1 - slack && E.x[1] <= 1 + slack && E.x[1] >= -slack &&
                  E.x[1] <= E.x[2];

  // homography t(x) = wp at the point over x
  QPoly D1 = k.D.derivative(), D2 = D1.derivative();
  if (!E.d4_zero) {
    E.p = E.x[3];
    E.q = eval_ld(D1, static_cast<long double>(E.p));
    E.r = eval_ld(D2, static_cast<long double>(E.p)) / 6;
    E.Q = E.q / 4;
    E.R = E.r / 4;
  } else {
    E.alpha = k.D.coeff(3).get_d() / 4;
    E.beta = k.D.coeff(2).get_d() / 12;
  }
  auto t_of = [&](double xv) { return E.d4_zero ? E.alpha * xv + E.beta : E.R + E.Q / (xv - E.p); };
  std::array<std::pair<double, double>, 3> ex;  // (e, x)
  for (int i = 0; i < 3; ++i) ex[i] = {t_of(E.x[i]), E.x[i]};
  std::sort(ex.begin(), ex.end(), [](auto& a, auto& b) { return a.first > b.first; });
  double e1 = ex[0].first, e2 = ex[1].first, e3 = ex[2].first;
  auto [g2, g3] = quartic_invariants(k.D);
  E.g2_exact = g2;
  E.g3_exact = g3;
  E.inv = {e1, e2, e3, g2.get_d(), g3.get_d()};
  double scale = std::max({1.0, std::fabs(e1), std::fabs(e3)});
  if (!(e1 > e2 && e2 > e3)) throw UnsupportedConfiguration("e1 > e2 > e3 cannot be achieved");
  if (std::fabs(e1 + e2 + e3) > 1e-9 * scale)
    throw NumericHealth("e1 + e2 + e3 = " + fmt_double(e1 + e2 + e3));
  Invariants fromE = invariants_from_e(e1, e2, e3);
  if (std::fabs(fromE.g2 - E.inv.g2) > 1e-9 * scale * scale ||
      std::fabs(fromE.g3 - E.inv.g3) > 1e-9 * scale * scale * scale)
    throw NumericHealth("g2, g3 disagree with the e-products");

  // y1: the smaller of the two smallest-modulus branch points of D~
  std::vector<cdouble> yr = poly_roots(k.Dt);
  std::sort(yr.begin(), yr.end(), [](cdouble a, cdouble b) {
    return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a.real() < b.real();
  });
  if (yr.size() < 2 || yr[0].imag() != 0 || yr[1].imag() != 0)
    throw UnsupportedConfiguration("unsupported branch-point configuration: non-real y-branch points");
  E.y1 = std::min(yr[0].real(), yr[1].real());
  long double yy = E.y1;
  double at = eval_ld(k.at, yy), bt = eval_ld(k.bt, yy), ct = eval_ld(k.ct, yy);
  // double root of at x^2 + bt x + ct; 1/X = -bt/(2 ct) is the stable form when at is small
  bool direct_form = std::fabs(at) >= std::fabs(ct);
  double invX = direct_form ? 0 : -bt / (2 * ct);
  E.X_y1 = direct_form ? -bt / (2 * at) : (invX == 0 ? kInf : 1 / invX);
  if (E.d4_zero) {
    if (!std::isfinite(E.X_y1)) throw DegenerateWalk("X(y1) coincides with the branch point at infinity");
    E.t_star = t_of(E.X_y1);
  } else {
    E.t_star = direct_form ? t_of(E.X_y1) : E.R + E.Q * invX / (1 - E.p * invX);
  }
  if (!(E.t_star >= e1)) throw UnsupportedConfiguration("X(y1) does not lie on the real cycle through x1");

  // route 1: Carlson symmetric integrals in the wp variable
  double w2c = 2 * carlson_rf(0, e1 - e2, e1 - e3);
  double w1c = 2 * carlson_rf(0, e1 - e3, e2 - e3);
  double w3c = w2c - 2 * carlson_rf(E.t_star - e1, E.t_star - e2, E.t_star - e3);
  // route 2: quadrature in x (omega1, omega2) and in s = sqrt(wp - e1) (omega3)
  double xe1 = ex[0].second, xe2 = ex[1].second, xe3 = ex[2].second;
  if (!E.d4_zero && (detail::between(E.p, xe1, xe2) || detail::between(E.p, xe2, xe3)))
    throw UnsupportedConfiguration("period cycle passes through x = infinity");
  double lead = k.D.lead().get_d();
  double w1q = detail::root_interval_integral(lead, bp.x, std::min(xe1, xe2), std::max(xe1, xe2));
  double w2q = detail::root_interval_integral(lead, bp.x, std::min(xe2, xe3), std::max(xe2, xe3));
  double smax = std::sqrt(E.t_star - e1);
  // s = sqrt(e1 - e2) sinh(tau) keeps the integrand smooth when e1 and e2 nearly collide
  double eps = std::sqrt(e1 - e2);
  double w3q = 2 * integrate([&](double tau) {
    double s = eps * std::sinh(tau);
    return 1 / std::sqrt(e1 + s * s - e3);
  }, 0, std::asinh(smax / eps));
  E.omega_carlson = {w1c, w2c, w3c};
  E.omega_quadrature = {w1q, w2q, w3q};
  double diff = 0;
  for (int i = 0; i < 3; ++i)
    diff = std::max(diff, std::fabs(E.omega_carlson[i] - E.omega_quadrature[i]) / std::fabs(E.omega_carlson[i]));
  E.period_rel_diff = diff;
  if (diff > opt.period_tol) throw NumericHealth("period integrators disagree: relative difference " + fmt_double(diff));
  E.omega1 = w1c;
  E.omega2 = w2c;
  E.omega3 = w3c;
  if (!(E.omega3 > 0 && E.omega3 < E.omega2)) throw NumericHealth("omega3 outside (0, omega2)");

  // the lattice must reproduce the e's computed from the branch points
  Invariants th = E.lattice().invariants();
  if (std::fabs(th.e1 - e1) > 1e-8 * scale || std::fabs(th.e2 - e2) > 1e-8 * scale ||
      std::fabs(th.e3 - e3) > 1e-8 * scale)
    throw NumericHealth("half-period values disagree with the branch-point e's");
  return E;
}

// ---------------------------------------------------------------- uniformization

inline cdouble wp_eval(cdouble z, const EllipticData& E) { return E.lattice().wp(z); }
inline cdouble wp_prime_eval(cdouble z, const EllipticData& E) { return E.lattice().wp_prime(z); }

inline cdouble x_of_wp(cdouble wp, const EllipticData& E) {
  return E.d4_zero ? (wp - E.beta) / E.alpha : E.p + E.Q / (wp - E.R);
}
inline cdouble x_of_u(cdouble u, const EllipticData& E) { return x_of_wp(wp_eval(u, E), E); }

// wp(u + v) + wp(u - v) and wp(u + v) wp(u - v) from X = wp(u), Y = wp(v)
struct SymmetricAB {
  double A, B;
};

inline SymmetricAB symmetric_AB(double X, double Y, double g2, double g3) {
  if (X == Y) throw NumericHealth("symmetric_AB needs wp(u) != wp(v)");
  double d = (X - Y) * (X - Y);
  double A = ((X + Y) * (4 * X * Y - g2) - 2 * g3) / (2 * d);
  double B = ((X * Y) * (X * Y) + g2 * X * Y / 2 + g3 * (X + Y) + g2 * g2 / 16) / d;
  return {A, B};
}
inline SymmetricAB symmetric_AB(double X, double Y, const EllipticData& E) {
  return symmetric_AB(X, Y, E.inv.g2, E.inv.g3);
}

// the product before cancellation of (X - Y)^2
inline double p1wp(double X, double Y, double g2, double g3) {
  double n = (X + Y) * (4 * X * Y - g2) - 2 * g3;
  double fx = 4 * X * X * X - g2 * X - g3, fy = 4 * Y * Y * Y - g2 * Y - g3;
  double d = X - Y;
  return (n * n - 4 * fx * fy) / (16 * d * d * d * d);
}

// x(u + v) + x(u - v) and x(u + v) x(u - v)
struct SumProduct {
  double S, P;
};

inline SumProduct sum_product_SP(double X, double Y, const EllipticData& E) {
  SymmetricAB ab = symmetric_AB(X, Y, E);
  if (E.d4_zero) {
    double a = E.alpha, b = E.beta;
    return {(ab.A - 2 * b) / a, (ab.B - b * ab.A + b * b) / (a * a)};
  }
  double p = E.p, q = E.Q, r = E.R;
  double den = ab.B - r * ab.A + r * r;
  if (den == 0) throw NumericHealth("vanishing denominator in the sum/product formulas");
  return {(2 * p * ab.B + (q - 2 * p * r) * ab.A + 2 * r * (p * r - q)) / den,
          (p * p * ab.B + p * (q - p * r) * ab.A + (p * r - q) * (p * r - q)) / den};
}

// common denominator 2 (X - Y)^2 (B - r A + r^2), a polynomial in X and Y
inline double sp2_D(double X, double Y, const EllipticData& E) {
  double g2 = E.inv.g2, g3 = E.inv.g3, r = E.d4_zero ? E.beta : E.R;
  double d = X - Y;
  return 2 * ((X * Y) * (X * Y) + g2 * X * Y / 2 + g3 * (X + Y) + g2 * g2 / 16) -
         r * ((X + Y) * (4 * X * Y - g2) - 2 * g3) + 2 * r * r * d * d;
}

// ---------------------------------------------------------------- multiples of omega3

struct WpMultiple {
  double recursive = 0, direct = 0;
  bool used_fallback = false;  // a near-degenerate step was replaced by direct evaluation
  bool agree = true;           // recursive vs direct within 1e-8 relative
};

// wp(t), wp(2t), ..., wp(mt) by duplication and the three-term addition recursion;
// steps whose denominator degenerates are evaluated directly.
inline std::vector<double> wp_multiples(const EllipticData& E, double t, int m, bool* fallback = nullptr) {
  WeierstrassP L = E.lattice();
  double g2 = E.inv.g2, g3 = E.inv.g3;
  auto direct = [&](int l) { return L.wp_real(l * t); };
  std::vector<double> v{direct(1)};
  double w = v[0];
  for (int l = 1; l < m; ++l) {
    double next;
    if (l == 1) {
      double f = 4 * w * w * w - g2 * w - g3;
      double n = 6 * w * w - g2 / 2;
      next = std::fabs(f) < 1e-12 * std::max(1.0, std::pow(std::fabs(w), 3)) ? kInf : n * n / (4 * f) - 2 * w;
    } else {
      double X = v[l - 1], d = X - w;
      double scale = std::max({1.0, std::fabs(X), std::fabs(w)});
      if (!std::isfinite(X) || !std::isfinite(v[l - 2]) || std::fabs(d) < 1e-6 * scale)
        next = kInf;
      else
        next = ((X + w) * (4 * X * w - g2) - 2 * g3) / (2 * d * d) - v[l - 2];
    }
    if (!std::isfinite(next) || std::fabs(next) > 1e12) {
      if (fallback) *fallback = true;
      next = direct(l + 1);
    }
    v.push_back(next);
  }
  return v;
}

inline WpMultiple wp_multiple_omega3(const EllipticData& E, int m) {
  WpMultiple r;
  r.recursive = wp_multiples(E, E.omega3, m, &r.used_fallback).back();
  r.direct = E.lattice().wp_real(m * E.omega3);
  r.agree = r.recursive == r.direct ||
            std::fabs(r.recursive - r.direct) <= 1e-8 * std::max(1.0, std::fabs(r.direct));
  return r;
}

// order 4m condition: wp(m omega3) = wp(omega2/2) = e1; the halved form compares
// wp(m omega3/2) with wp(omega2/4) = e1 + sqrt((e1 - e2)(e1 - e3)).
struct Criterion4m {
  int m = 0;
  double residual = 0;       // wp(m omega3) - e1
  double rel_residual = 0;   // |residual| / |e1|
  double residual_half = 0;  // wp(m omega3 / 2) - wp(omega2 / 4)
  double rel_residual_half = 0;
};

inline double wp_quarter_period(const Invariants& I) { return I.e1 + std::sqrt((I.e1 - I.e2) * (I.e1 - I.e3)); }

inline Criterion4m criterion_4m(const EllipticData& E, int m) {
  Criterion4m c;
  c.m = m;
  WpMultiple wm = wp_multiple_omega3(E, m);
  double v = wm.agree ? wm.recursive : wm.direct;
  c.residual = v - E.inv.e1;
  c.rel_residual = std::fabs(c.residual) / std::fabs(E.inv.e1);
  double h = E.lattice().wp_real(m * E.omega3 / 2);
  double quarter = wp_quarter_period(E.inv);
  c.residual_half = h - quarter;
  c.rel_residual_half = std::fabs(c.residual_half) / std::fabs(quarter);
  return c;
}

// ---------------------------------------------------------------- Delta(Y)

struct DeltaY {
  double determinant = 0;  // the 3x3 determinant as displayed
  double sextic = 0;       // its expansion 8Y^6 - 10 g2 Y^4 - ... (equal to minus the determinant)
  double factored = 0;     // 8 P1 P2 P3
};

inline DeltaY delta_Y(const Invariants& I, double Y) {
  double g2 = I.g2, g3 = I.g3;
  double m[3][3] = {{4 * Y, 4 * Y * Y - g2, -(g2 * Y + 2 * g3)},
                    {2 * Y * Y, g2 * Y + 2 * g3, 2 * g3 * Y + g2 * g2 / 8},
                    {1, -2 * Y, Y * Y}};
  DeltaY d;
  d.determinant = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                  m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                  m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  double Y2 = Y * Y, Y3 = Y2 * Y;
  d.sextic = 8 * Y3 * Y3 - 10 * g2 * Y2 * Y2 - 40 * g3 * Y3 - 2.5 * g2 * g2 * Y2 - 2 * g2 * g3 * Y - 4 * g3 * g3 +
             g2 * g2 * g2 / 8;
  auto P = [&](double a, double b, double c) { return Y2 - 2 * a * Y - (a * a + b * c); };
  d.factored = 8 * P(I.e1, I.e2, I.e3) * P(I.e2, I.e3, I.e1) * P(I.e3, I.e1, I.e2);
  return d;
}
inline DeltaY delta_Y(const EllipticData& E, double Y) { return delta_Y(E.inv, Y); }

// ---------------------------------------------------------------- rationality of omega3 / omega2

struct Convergent {
  long p, q;
};

// continued-fraction convergents of x with denominators up to q_max
inline std::vector<Convergent> convergents(double x, long q_max) {
  std::vector<Convergent> out;
  long p0 = 1, q0 = 0, p1 = static_cast<long>(std::floor(x)), q1 = 1;
  out.push_back({p1, q1});
  double frac = x - std::floor(x);
  for (int it = 0; it < 64 && frac > 1e-300; ++it) {
    double inv = 1 / frac;
    if (inv > 1e15) break;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - a;
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > q_max) break;
    out.push_back({p2, q2});
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return out;
}

struct ScanHit {
  long n = 0, k = 0;
  double distance = 0;  // |n rho - k|
};

// Smallest n <= q_max with |n rho - round(n rho)| < tol. Any such n is a convergent
// denominator: no smaller multiple can come closer to an integer.
inline std::optional<ScanHit> finiteness_scan(double rho, long q_max, double tol) {
  for (const Convergent& c : convergents(rho, q_max)) {
    if (c.q < 1) continue;
    double d = std::fabs(c.q * rho - c.p);
    if (d < tol) return ScanHit{c.q, c.p, d};
  }
  return std::nullopt;
}
inline std::optional<ScanHit> finiteness_scan(const EllipticData& E, long q_max, double tol) {
  return finiteness_scan(E.rho(), q_max, tol);
}

}  // namespace qwalk
