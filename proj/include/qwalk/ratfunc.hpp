#pragma once

#include <string>
#include <utility>

#include "poly.hpp"

namespace qwalk {

// Reduced rational function num/den: gcd(num, den) = 1, den monic (den = 1 when num = 0).
template <class K>
class RatFunc {
 public:
  using P = Poly<K>;

  RatFunc() : num_(), den_(K(1)) {}
  RatFunc(const K& k) : num_(k), den_(K(1)) {}
  RatFunc(P n) : num_(std::move(n)), den_(K(1)) {}
  RatFunc(P n, P d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  static RatFunc t() { return RatFunc(P::t()); }

  const P& num() const { return num_; }
  const P& den() const { return den_; }
  bool zero() const { return num_.zero(); }
  bool is_poly() const { return den_.degree() == 0; }
  int height_degree() const { return std::max(num_.degree(), den_.degree()); }

  template <class T>
  T operator()(const T& x) const {
    return num_(x) / den_(x);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.zero() || b.zero()) return {};
    // cross-cancel before multiplying to keep sizes down
    P g1 = P::gcd(a.num_, b.den_);
    P g2 = P::gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    r.normalize_lead();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc inverse() const {
    if (zero()) throw InconsistencyError("inverse of zero rational function");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize_lead();
    return r;
  }

  // this(g(t))
  RatFunc compose(const RatFunc& g) const {
    // Horner on numerator and denominator separately
    auto horner = [&](const P& p) {
      RatFunc r;
      const auto& c = p.coeffs();
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * g + RatFunc(*it);
      return r;
    };
    return horner(num_) / horner(den_);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str(const char* var = "x") const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  void reduce() {
    if (den_.zero()) throw InconsistencyError("rational function with zero denominator");
    if (num_.zero()) {
      den_ = P(K(1));
      return;
    }
    P g = P::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    normalize_lead();
  }
  void normalize_lead() {
    if (num_.zero()) {
      den_ = P(K(1));
      return;
    }
    K l = den_.lead();
    if (l != K(1)) {
      num_ *= K(1) / l;
      den_ = den_.monic();
    }
  }

  P num_;
  P den_;
};

using QRatFunc = RatFunc<Rat>;

}  // namespace qwalk
