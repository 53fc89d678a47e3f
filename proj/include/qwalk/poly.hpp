#pragma once

#include <algorithm>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace qwalk {

// Dense univariate polynomial, c[k] is the coefficient of t^k. Always trimmed.
template <class K>
class Poly {
 public:
  Poly() = default;
  Poly(const K& k) {
    if (!is_zero(k)) c_.push_back(k);
  }
  Poly(std::initializer_list<K> lo_to_hi) : c_(lo_to_hi) { trim(); }
  explicit Poly(std::vector<K> lo_to_hi) : c_(std::move(lo_to_hi)) { trim(); }

  static Poly monomial(const K& k, int deg) {
    std::vector<K> v(deg + 1, K(0));
    v[deg] = k;
    return Poly(std::move(v));
  }
  static Poly t() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool zero() const { return c_.empty(); }
  bool constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : K(0); }
  const K& lead() const { return c_.back(); }

  template <class T>
  T operator()(const T& x) const {
    T r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + T(*it);
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> v(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * K(static_cast<long>(k));
    return Poly(std::move(v));
  }

  Poly monic() const {
    if (zero()) return *this;
    Poly r = *this;
    K l = lead();
    for (auto& x : r.c_) x /= l;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Poly& operator*=(const K& k) {
    if (is_zero(k)) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= k;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Poly operator*(Poly a, const K& k) { return a *= k; }
  friend Poly operator*(const K& k, Poly a) { return a *= k; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.zero() || b.zero()) return {};
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; requires a field.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.zero()) throw InconsistencyError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<K> r = a.c_;
    std::vector<K> q(a.c_.size() - b.c_.size() + 1, K(0));
    const int db = b.degree();
    const K& lb = b.lead();
    for (int k = a.degree(); k >= db; --k) {
      if (is_zero(r[k])) continue;
      K f = r[k] / lb;
      q[k - db] = f;
      for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b.c_[j];
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  // Monic gcd; gcd(0,0) = 0.
  static Poly gcd(Poly a, Poly b) {
    while (!b.zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  template <class T>
  Poly<T> cast() const {
    std::vector<T> v;
    v.reserve(c_.size());
    for (const auto& x : c_) v.push_back(T(to_double(x)));
    return Poly<T>(std::move(v));
  }

  std::string str(const char* var = "x") const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      if (is_zero(c_[k])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[k] << ")";
      if (k >= 1) os << "*" << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

using QPoly = Poly<Rat>;

// True when p = k * q^2 for a constant k and a polynomial q. With form_degree > deg p the
// missing degree counts as roots at infinity, which must also pair up.
inline bool is_square_form(const QPoly& p, int form_degree) {
  if (p.zero()) return true;
  if ((form_degree - p.degree()) % 2 != 0 || p.degree() % 2 != 0) return false;
  QPoly m = p.monic();
  const int n = m.degree() / 2;
  // top-down square root: q monic of degree n
  std::vector<Rat> q(n + 1, Rat(0));
  q[n] = 1;
  for (int k = n - 1; k >= 0; --k) {
    // x^(n+k) coefficient of q^2 is 2 q[k] plus products q[i]q[j] with k < i,j < n
    Rat s = 0;
    for (int i = k + 1; i <= n; ++i) {
      int j = n + k - i;
      if (j > k && j < n) s += q[i] * q[j];
    }
    q[k] = (m.coeff(n + k) - s) / 2;
  }
  QPoly qq{std::vector<Rat>(q)};
  return qq * qq == m;
}

}  // namespace qwalk
