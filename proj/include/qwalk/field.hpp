#pragma once

#include <string>

#include "ratfunc.hpp"

namespace qwalk {

// A + B*s with A, B rational functions of t, where s is a root of
// alpha(t) s^2 + beta(t) s + gamma(t) = 0.
template <class K>
struct FieldElement {
  RatFunc<K> A, B;

  bool zero() const { return A.zero() && B.zero(); }
  int height_degree() const { return std::max(A.height_degree(), B.height_degree()); }
  friend bool operator==(const FieldElement& u, const FieldElement& v) {
    return u.A == v.A && u.B == v.B;
  }
  friend bool operator!=(const FieldElement& u, const FieldElement& v) { return !(u == v); }
};

template <class K>
class QuadField {
 public:
  using R = RatFunc<K>;
  using E = FieldElement<K>;

  QuadField(Poly<K> alpha, Poly<K> beta, Poly<K> gamma)
      : alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
    if (alpha_.zero()) throw DegenerateWalk("leading coefficient of the kernel vanishes identically");
    ba_ = R(beta_, alpha_);
    ca_ = R(gamma_, alpha_);
  }

  const Poly<K>& alpha() const { return alpha_; }
  const Poly<K>& beta() const { return beta_; }
  const Poly<K>& gamma() const { return gamma_; }

  E t() const { return {R::t(), R()}; }
  E s() const { return {R(), R(K(1))}; }
  E constant(const K& k) const { return {R(k), R()}; }
  E lift(const R& r) const { return {r, R()}; }

  E add(const E& u, const E& v) const { return {u.A + v.A, u.B + v.B}; }
  E sub(const E& u, const E& v) const { return {u.A - v.A, u.B - v.B}; }
  E neg(const E& u) const { return {-u.A, -u.B}; }
  E scale(const E& u, const R& r) const { return {u.A * r, u.B * r}; }

  // s^2 = -(beta/alpha) s - gamma/alpha
  E mul(const E& u, const E& v) const {
    if (u.zero() || v.zero()) return {};
    if (u.B.zero()) return {u.A * v.A, u.A * v.B};
    if (v.B.zero()) return {u.A * v.A, u.B * v.A};
    R bb = u.B * v.B;
    return {u.A * v.A - bb * ca_, u.A * v.B + u.B * v.A - bb * ba_};
  }

  // the other root: s -> -beta/alpha - s
  E conj(const E& u) const { return {u.A - u.B * ba_, -u.B}; }
  R trace(const E& u) const { return u.A + u.A - u.B * ba_; }
  R norm(const E& u) const { return u.A * u.A - u.A * u.B * ba_ + u.B * u.B * ca_; }

  E inv(const E& u) const {
    if (u.zero()) throw InconsistencyError("inverse of zero field element");
    if (u.B.zero()) return {u.A.inverse(), R()};
    R n = norm(u);
    if (n.zero()) throw InconsistencyError("zero norm of a nonzero element: kernel is reducible");
    R ni = n.inverse();
    E c = conj(u);
    return {c.A * ni, c.B * ni};
  }
  E div(const E& u, const E& v) const { return mul(u, inv(v)); }

  // evaluate a polynomial with constant coefficients at a field element
  E eval(const Poly<K>& p, const E& u) const {
    E r;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = add(mul(r, u), constant(*it));
    return r;
  }

  std::string str(const E& u, const char* t = "x", const char* s = "y") const {
    return "[" + u.A.str(t) + "] + [" + u.B.str(t) + "]*" + s;
  }

 private:
  Poly<K> alpha_, beta_, gamma_;
  R ba_, ca_;
};

}  // namespace qwalk
