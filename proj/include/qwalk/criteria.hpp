#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "group.hpp"
#include "linalg.hpp"

namespace qwalk {

enum class CriterionKind { order4, order6, order8, rank4m, rank4m2 };

inline std::string kind_name(CriterionKind k) {
  switch (k) {
    case CriterionKind::order4: return "order4";
    case CriterionKind::order6: return "order6";
    case CriterionKind::order8: return "order8";
    case CriterionKind::rank4m: return "rank4m";
    case CriterionKind::rank4m2: return "rank4m2";
  }
  return "?";
}

struct CriterionValue {
  CriterionKind kind = CriterionKind::order4;
  int k = 0;                  // rank tests only
  std::optional<Rat> exact;   // determinant criteria
  double residual = 0;        // rank tests: smallest singular value
  bool is_zero = false;

  std::string name() const {
    std::string s = kind_name(kind);
    if (kind == CriterionKind::rank4m || kind == CriterionKind::rank4m2) s += "(" + std::to_string(k) + ")";
    return s;
  }
  bool operator==(const CriterionValue&) const = default;
};

inline CriterionValue exact_value(CriterionKind kind, Rat v) {
  CriterionValue c;
  c.kind = kind;
  c.is_zero = is_zero(v);
  c.exact = std::move(v);
  return c;
}

// --- order 4 ---------------------------------------------------------------

inline CriterionValue order4_criterion(const Mat3& P) { return exact_value(CriterionKind::order4, det3(P)); }

// --- order 6 ---------------------------------------------------------------

// D(i,j) = Delta_ij with 1-based indices
struct Cof {
  const Mat3& d;
  const Rat& operator()(int i, int j) const { return d[i - 1][j - 1]; }
};

inline QMatrix order6_matrix(const Mat3& cof) {
  Cof D{cof};
  return {{D(1, 1), D(2, 1), D(1, 2), D(2, 2)},
          {D(1, 2), D(2, 2), D(1, 3), D(2, 3)},
          {D(2, 1), D(3, 1), D(2, 2), D(3, 2)},
          {D(2, 2), D(3, 2), D(2, 3), D(3, 3)}};
}

// Delta13 Delta33 - Delta23^2; zero is the excluded degenerate case of the order-6 argument
inline Rat order6_side_determinant(const Mat3& cof) {
  Cof D{cof};
  return D(1, 3) * D(3, 3) - D(2, 3) * D(2, 3);
}

// The full 8 x 6 system in (c, d, p, q, r, s) behind the order-6 determinant.
inline QMatrix order6_full_system(const Mat3& cof) {
  Cof D{cof};
  Rat z = 0;
  return {{D(1, 1), D(2, 1), D(1, 2), D(2, 2), z, z},
          {D(1, 2), D(2, 2), D(1, 3), D(2, 3), z, z},
          {D(1, 3), D(2, 3), z, z, D(1, 3), D(2, 3)},
          {D(2, 1), D(3, 1), D(2, 2), D(3, 2), z, z},
          {D(2, 2), D(3, 2), D(2, 3), D(3, 3), z, z},
          {D(2, 3), D(3, 3), z, z, D(2, 3), D(3, 3)},
          {z, z, D(2, 3), D(3, 3), -D(2, 2), -D(3, 2)},
          {z, z, D(1, 3), D(2, 3), -D(1, 2), -D(2, 2)}};
}

inline bool order6_system_solvable(const Mat3& cof) { return rank_q(order6_full_system(cof)) < 6; }

inline CriterionValue order6_criterion(const Mat3& cof) {
  CriterionValue v = exact_value(CriterionKind::order6, det_q(order6_matrix(cof)));
#ifndef NDEBUG
  if (!is_zero(order6_side_determinant(cof)) && order6_system_solvable(cof) != v.is_zero)
    throw InconsistencyError("order-6 determinant disagrees with its 8-equation system");
#endif
  return v;
}

// --- order 8 ---------------------------------------------------------------

struct Order8Polys {
  std::array<QPoly, 3> S, T;
  QPoly P1, Q1, R1;
  QMatrix M;  // rows P1, Q1, R1; columns x^2, x, 1
};

inline Order8Polys order8_polys(const Mat3& cof) {
  Cof D{cof};
  Order8Polys o;
  o.S[0] = QPoly{-D(2, 1), D(3, 1)};
  o.T[0] = QPoly{D(1, 1), -D(2, 1)};
  o.S[1] = QPoly{D(2, 2), -D(3, 2)};
  o.T[1] = QPoly{-D(1, 2), D(2, 2)};
  o.S[2] = QPoly{-D(2, 3), D(3, 3)};
  o.T[2] = QPoly{D(1, 3), -D(2, 3)};
  const auto& S = o.S;
  const auto& T = o.T;
  o.P1 = Rat(-2) * (S[1] * T[1]) + S[2] * T[0] + S[0] * T[2];
  o.Q1 = S[1] * S[1] - S[2] * S[0];
  o.R1 = T[1] * T[1] - T[2] * T[0];
  for (const QPoly* p : {&o.P1, &o.Q1, &o.R1}) o.M.push_back({p->coeff(2), p->coeff(1), p->coeff(0)});
  return o;
}

inline CriterionValue order8_criterion(const Mat3& cof) {
  return exact_value(CriterionKind::order8, det_q(order8_polys(cof).M));
}

// --- affine eta ------------------------------------------------------------

struct AffineEta {
  QPoly u, v, w;        // in y
  QPoly ut, vt, wt;     // in x
  std::array<Rat, 3> A, B, E, F;
};

// (u, v, w) = A + B y and (u~, v~, w~) = E + F x with
// A = (alpha C2 + beta C1) x C3, B = C1 x (alpha C3 + beta C2) over the columns C of P,
// E, F the same over the rows. Cross products of columns are cofactor columns.
inline AffineEta affine_eta(const Mat3& cof, const Rat& alpha, const Rat& beta, const Rat& alpha_t,
                            const Rat& beta_t) {
  AffineEta e;
  for (int i = 0; i < 3; ++i) {
    e.A[i] = alpha * cof[i][0] - beta * cof[i][1];
    e.B[i] = -alpha * cof[i][1] + beta * cof[i][2];
    e.E[i] = alpha_t * cof[0][i] - beta_t * cof[1][i];
    e.F[i] = -alpha_t * cof[1][i] + beta_t * cof[2][i];
  }
  e.u = QPoly{e.A[0], e.B[0]};
  e.v = QPoly{e.A[1], e.B[1]};
  e.w = QPoly{e.A[2], e.B[2]};
  e.ut = QPoly{e.E[0], e.F[0]};
  e.vt = QPoly{e.E[1], e.F[1]};
  e.wt = QPoly{e.E[2], e.F[2]};
  return e;
}

inline AffineEta affine_eta(const WalkSpec& w, const Rat& alpha, const Rat& beta, const Rat& alpha_t,
                            const Rat& beta_t) {
  Mat3 P = build_matrix(w);
  if (rank3(P) < 3) throw DegenerateWalk("affine eta needs rank(P) = 3");
  return affine_eta(cofactors(P), alpha, beta, alpha_t, beta_t);
}

// eta(x) = (x v(y) - u(y)) / (x w(y) - v(y)) as an element of the function field
inline QElt eta_from_affine(const WalkGroup& g, const AffineEta& e) {
  const auto& F = g.field();
  QElt x = F.t(), y = F.s();
  QElt vy = F.eval(e.v, y), uy = F.eval(e.u, y), wy = F.eval(e.w, y);
  return F.div(F.sub(F.mul(x, vy), uy), F.sub(F.mul(x, wy), vy));
}

// xi(y) = (y v~(x) - u~(x)) / (y w~(x) - v~(x))
inline QElt xi_from_affine(const WalkGroup& g, const AffineEta& e) {
  const auto& F = g.field();
  QElt y = F.s();
  QElt vx = F.lift(QRatFunc(e.vt)), ux = F.lift(QRatFunc(e.ut)), wx = F.lift(QRatFunc(e.wt));
  return F.div(F.sub(F.mul(y, vx), ux), F.sub(F.mul(y, wx), vx));
}

// gamma(y) = (y f - e) / (y g + h) is an involution iff f + h = 0
inline bool involution_test(const QPoly& e, const QPoly& f, const QPoly& g, const QPoly& h) {
  (void)e;
  (void)g;
  return (f + h).zero();
}

// --- rank tests ------------------------------------------------------------

struct SamplePoint {
  Rat x;
  double xd, y1, y2;  // the two roots of a(x) y^2 + b(x) y + c(x)
};

// Random rational x in [-4, 4] with D(x) > 0 and a(x) away from 0.
inline std::vector<SamplePoint> sample_curve_points(const KernelData& k, int n, std::uint64_t seed,
                                                    const std::vector<QRatFunc>& avoid_poles = {}) {
  std::mt19937_64 rng(seed);
  std::vector<SamplePoint> pts;
  std::set<Rat> used;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > 200000) throw NumericHealth("could not sample real curve points");
    Rat x(static_cast<long>(rng() % (1UL << 24)), 1UL << 21);
    x.canonicalize();
    x -= 4;
    if (used.count(x)) continue;
    Rat Dx = k.D(x), ax = k.a(x);
    if (sgn(Dx) <= 0 || std::fabs(ax.get_d()) < 1e-6) continue;
    bool pole = false;
    for (const auto& r : avoid_poles)
      if (std::fabs(r.den()(x).get_d()) < 1e-9) pole = true;
    if (pole) continue;
    used.insert(x);
    double sq = std::sqrt(Dx.get_d()), a = ax.get_d(), b = k.b(x).get_d();
    // stable quadratic roots
    double q = -0.5 * (b + std::copysign(sq, b));
    double c = k.c(x).get_d();
    double r1 = q / a, r2 = q != 0 ? c / q : -b / a - r1;
    pts.push_back({x, x.get_d(), r1, r2});
  }
  return pts;
}

// smallest singular value of the column-normalised matrix
inline double smallest_singular_value(Eigen::MatrixXd M) {
  for (int j = 0; j < M.cols(); ++j) {
    double n = M.col(j).norm();
    if (n > 0) M.col(j) /= n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

inline constexpr int kDefaultSamples = 16;
inline constexpr double kDefaultRankTol = 1e-9;

// {delta^k(x) xi delta^k(x), delta^k(x) + xi delta^k(x), 1}
inline CriterionValue rank_test_4m(const WalkGroup& g, int k, int samples = kDefaultSamples,
                                   double tol = kDefaultRankTol, std::uint64_t seed = 1) {
  QElt d = g.delta_power_x_value(k);
  auto pts = sample_curve_points(g.kernel(), samples, seed, {d.A, d.B});
  Eigen::MatrixXd M(samples, 3);
  for (int i = 0; i < samples; ++i) {
    double A = d.A(pts[i].x).get_d(), B = d.B(pts[i].x).get_d();
    double u = A + B * pts[i].y1, v = A + B * pts[i].y2;
    M(i, 0) = u * v;
    M(i, 1) = u + v;
    M(i, 2) = 1;
  }
  CriterionValue c;
  c.kind = CriterionKind::rank4m;
  c.k = k;
  c.residual = smallest_singular_value(M);
  c.is_zero = c.residual < tol;
  return c;
}

// {y delta^k(x), delta^k(x), y, 1}
inline CriterionValue rank_test_4m2(const WalkGroup& g, int k, int samples = kDefaultSamples,
                                    double tol = kDefaultRankTol, std::uint64_t seed = 1) {
  QElt d = g.delta_power_x_value(k);
  auto pts = sample_curve_points(g.kernel(), samples, seed, {d.A, d.B});
  Eigen::MatrixXd M(samples, 4);
  for (int i = 0; i < samples; ++i) {
    double y = (i % 2 == 0) ? pts[i].y1 : pts[i].y2;
    double A = d.A(pts[i].x).get_d(), B = d.B(pts[i].x).get_d();
    double u = A + B * y;
    M(i, 0) = y * u;
    M(i, 1) = u;
    M(i, 2) = y;
    M(i, 3) = 1;
  }
  CriterionValue c;
  c.kind = CriterionKind::rank4m2;
  c.k = k;
  c.residual = smallest_singular_value(M);
  c.is_zero = c.residual < tol;
  return c;
}

}  // namespace qwalk
