#pragma once

#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "modp.hpp"
#include "walk.hpp"

namespace qwalk {

using QElt = FieldElement<Rat>;

// (X, Y) = images of the coordinate functions x, y.
template <class K>
struct BasicCurvePoint {
  FieldElement<K> X, Y;
  friend bool operator==(const BasicCurvePoint& p, const BasicCurvePoint& q) {
    return p.X == q.X && p.Y == q.Y;
  }
};
using CurvePoint = BasicCurvePoint<Rat>;

// a, b, c in x and a~, b~, c~ in y
template <class K>
struct CurveCoeffs {
  Poly<K> a, b, c, at, bt, ct;
};

inline CurveCoeffs<Rat> curve_coeffs(const KernelData& k) { return {k.a, k.b, k.c, k.at, k.bt, k.ct}; }

template <std::uint64_t P>
std::optional<CurveCoeffs<Fp<P>>> reduce_mod(const CurveCoeffs<Rat>& q) {
  auto a = reduce_mod<P>(q.a), b = reduce_mod<P>(q.b), c = reduce_mod<P>(q.c);
  auto at = reduce_mod<P>(q.at), bt = reduce_mod<P>(q.bt), ct = reduce_mod<P>(q.ct);
  if (!a || !b || !c || !at || !bt || !ct || a->zero() || at->zero()) return std::nullopt;
  return CurveCoeffs<Fp<P>>{*a, *b, *c, *at, *bt, *ct};
}

struct OracleResult {
  bool finite = false;
  int n = 0;       // minimal n with delta^n = I when finite
  int n_max = 0;
  int order() const { return 2 * n; }
};

struct DeltaPower {
  QElt value;          // delta^s(x) = A + B y
  QPoly U, V, W;       // (y U + V) / W after cancellation
  Rat lambda;          // y-coefficient = lambda * a(x) / F(x)
  QPoly F;             // monic, degree <= 2
};

struct ZetaResult {
  QRatFunc direct;     // delta^j(x) + xi delta^j(x)
  QRatFunc recursive;  // zeta_{j-1}(zeta_1(x)) - zeta_{j-2}(x), read literally
  bool recursion_matches = true;
};

inline constexpr int kDefaultDegreeCap = 4096;

// Arithmetic on the kernel curve over K (exact rationals, or a prime field as a filter).
// Points are mapped by
//   xi:  (X, Y) -> (X, -b(X)/a(X) - Y)
//   eta: (X, Y) -> (-b~(Y)/a~(Y) - X, Y)
// and delta applies xi then eta, so that the X component after s steps is delta^s(x)
// for the automorphism delta = xi eta acting on functions.
template <class K>
class BasicWalkGroup {
 public:
  using Elt = FieldElement<K>;
  using Point = BasicCurvePoint<K>;
  using RF = RatFunc<K>;

  explicit BasicWalkGroup(CurveCoeffs<K> q, int degree_cap = kDefaultDegreeCap)
      : q_(checked(std::move(q))), cap_(degree_cap), F_(q_.a, q_.b, q_.c) {}

  const CurveCoeffs<K>& coeffs() const { return q_; }
  const QuadField<K>& field() const { return F_; }

  // dual field over y, generator x; built lazily from a~, b~, c~
  const QuadField<K>& dual() const {
    if (!dual_) dual_.emplace(q_.at, q_.bt, q_.ct);
    return *dual_;
  }

  Point base() const { return {F_.t(), F_.s()}; }

  Point apply_xi(const Point& p) const {
    Elt aX = F_.eval(q_.a, p.X), bX = F_.eval(q_.b, p.X);
    return {p.X, F_.sub(F_.neg(F_.div(bX, aX)), p.Y)};
  }
  Point apply_eta(const Point& p) const {
    Elt aY = F_.eval(q_.at, p.Y), bY = F_.eval(q_.bt, p.Y);
    return {F_.sub(F_.neg(F_.div(bY, aY)), p.X), p.Y};
  }
  Point apply_delta(const Point& p) const {
    Point r = apply_eta(apply_xi(p));
    guard(r);
    return r;
  }
  Point apply_delta_inverse(const Point& p) const {
    Point r = apply_xi(apply_eta(p));
    guard(r);
    return r;
  }

  // Q(X, Y) = a(X) Y^2 + b(X) Y + c(X)
  bool on_curve(const Point& p) const {
    Elt q = F_.add(F_.add(F_.mul(F_.eval(q_.a, p.X), F_.mul(p.Y, p.Y)), F_.mul(F_.eval(q_.b, p.X), p.Y)),
                   F_.eval(q_.c, p.X));
    return q.zero();
  }

  // Minimal n <= n_max with delta^n(x) = x.
  OracleResult group_order(int n_max, bool check_curve = true) const {
    OracleResult r;
    r.n_max = n_max;
    Point b = base(), p = b;
    for (int n = 1; n <= n_max; ++n) {
      p = apply_delta(p);
      if (check_curve && !on_curve(p))
        throw InconsistencyError("delta^" + std::to_string(n) + " left the kernel curve");
      if (p.X == b.X) {
        if (p.Y != b.Y)
          throw InconsistencyError("delta^" + std::to_string(n) + "(x) = x but delta^n(y) != y");
        r.finite = true;
        r.n = n;
        return r;
      }
    }
    return r;
  }

  Elt delta_power_x_value(int s) const {
    Point p = base();
    for (int i = 0; i < s; ++i) p = apply_delta(p);
    return p.X;
  }

  bool is_in_Cx(const Elt& u) const { return u.B.zero(); }

  // re-reduce u over C(y) with x^2 = -(b~(y) x + c~(y)) / a~(y)
  Elt to_dual(const Elt& u) const {
    const QuadField<K>& G = dual();
    Elt xs = G.s(), yt = G.t();
    auto ev = [&](const RF& r) { return G.div(G.eval(r.num(), xs), G.eval(r.den(), xs)); };
    return G.add(ev(u.A), G.mul(ev(u.B), yt));
  }
  bool is_in_Cy(const Elt& u) const { return to_dual(u).B.zero(); }

 private:
  static CurveCoeffs<K> checked(CurveCoeffs<K> q) {
    if (q.a.zero() || q.at.zero()) throw DegenerateWalk("singular walk: kernel has degree < 2 in x or y");
    return q;
  }
  void guard(const Point& p) const {
    int d = std::max(p.X.height_degree(), p.Y.height_degree());
    if (d > cap_)
      throw ResourceLimit("intermediate degree " + std::to_string(d) + " exceeds cap " + std::to_string(cap_));
  }

  CurveCoeffs<K> q_;
  int cap_;
  QuadField<K> F_;
  mutable std::optional<QuadField<K>> dual_;
};

class WalkGroup : public BasicWalkGroup<Rat> {
 public:
  explicit WalkGroup(const WalkSpec& w, int degree_cap = kDefaultDegreeCap)
      : BasicWalkGroup<Rat>(curve_coeffs(kernel_data(w)), degree_cap), w_(w), k_(kernel_data(w)),
        deg_(degeneracy(w)) {}

  const WalkSpec& walk() const { return w_; }
  const KernelData& kernel() const { return k_; }
  const DegeneracyReport& report() const { return deg_; }

  DeltaPower delta_power_x(int s) const {
    DeltaPower d;
    d.value = delta_power_x_value(s);
    const QRatFunc& A = d.value.A;
    const QRatFunc& B = d.value.B;
    // common denominator W = lcm(den A, den B)
    QPoly g = QPoly::gcd(A.den(), B.den());
    d.W = A.den() * (B.den() / g);
    d.V = A.num() * (d.W / A.den());
    d.U = B.zero() ? QPoly() : B.num() * (d.W / B.den());
    if (d.U.degree() > 2 || d.V.degree() > 2 || d.W.degree() > 2)
      throw InconsistencyError("delta^" + std::to_string(s) + "(x) exceeds the degree-2 shape");
    // the y-coefficient has the shape lambda a(x) / F(x); a factor of a(x) may cancel against F
    if (!B.zero()) {
      QRatFunc m = B / QRatFunc(k_.a);
      if (m.num().degree() != 0 || m.den().degree() > 2)
        throw InconsistencyError("y-coefficient of delta^" + std::to_string(s) +
                                 "(x) is not of the form lambda a(x) / F(x)");
      d.lambda = m.num().coeff(0);
      d.F = m.den();
    }
    return d;
  }

  ZetaResult zeta(int j) const {
    auto direct = [&](int i) { return field().trace(delta_power_x_value(i)); };
    ZetaResult z;
    z.direct = direct(j);
    if (j <= 1) {
      z.recursive = z.direct;
      return z;
    }
    std::vector<QRatFunc> rec{direct(0), direct(1)};
    for (int i = 2; i <= j; ++i) rec.push_back(rec[i - 1].compose(rec[1]) - rec[i - 2]);
    z.recursive = rec[j];
    z.recursion_matches = z.recursive == z.direct;
    return z;
  }

 private:
  WalkSpec w_;
  KernelData k_;
  DegeneracyReport deg_;
};

inline void require_irreducible(const DegeneracyReport& d) {
  if (d.is_singular) throw DegenerateWalk("singular walk");
  if (d.reducible) throw DegenerateWalk("reducible kernel");
}

namespace detail {
// Runs the iteration over F_P. Returns the first n with delta^n(x) = x mod P, 0 if none up to
// n_max, or -1 when P is unusable (bad reduction or a norm vanishing mod P).
template <std::uint64_t P>
int modular_candidate(const CurveCoeffs<Rat>& q, int n_max, int degree_cap) {
  auto qp = reduce_mod<P>(q);
  if (!qp) return -1;
  try {
    BasicWalkGroup<Fp<P>> g(*qp, degree_cap);
    OracleResult r = g.group_order(n_max, false);
    return r.finite ? r.n : 0;
  } catch (const InconsistencyError&) {
    return -1;
  } catch (const DegenerateWalk&) {
    return -1;
  }
}
}  // namespace detail

enum class OracleMode { filtered, exact };

// Exact group order. In filtered mode the iteration first runs modulo a large prime: reduction
// is a ring map on the elements met along the way as long as no norm vanishes mod P, so a
// mod-P inequality delta^n(x) != x is also an inequality over Q. Candidate orders are then
// confirmed by exact iteration (with the curve check at every step).
inline OracleResult group_order(const WalkSpec& w, int n_max, int degree_cap = kDefaultDegreeCap,
                                OracleMode mode = OracleMode::filtered) {
  require_irreducible(degeneracy(w));
  WalkGroup g(w, degree_cap);
  if (mode == OracleMode::exact) return g.group_order(n_max);
  CurveCoeffs<Rat> q = curve_coeffs(g.kernel());
  int cand = detail::modular_candidate<kPrime1>(q, n_max, degree_cap);
  if (cand < 0) cand = detail::modular_candidate<kPrime2>(q, n_max, degree_cap);
  if (cand < 0) cand = detail::modular_candidate<kPrime3>(q, n_max, degree_cap);
  if (cand < 0) return g.group_order(n_max);
  if (cand == 0) {
    OracleResult r;
    r.n_max = n_max;
    return r;
  }
  OracleResult r = g.group_order(cand);
  if (r.finite) {
    r.n_max = n_max;
    return r;
  }
  // a false modular hit: fall back to the plain exact scan
  return g.group_order(n_max);
}

inline DeltaPower delta_power_x(const WalkSpec& w, int s) {
  require_irreducible(degeneracy(w));
  return WalkGroup(w).delta_power_x(s);
}

}  // namespace qwalk
