#pragma once

#include <cstdint>
#include <optional>

#include "poly.hpp"

namespace qwalk {

// Prime field element, P < 2^62.
template <std::uint64_t P>
struct Fp {
  std::uint64_t v = 0;

  Fp() = default;
  Fp(long x) {
    long r = x % static_cast<long>(P);
    v = static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(P) : r);
  }
  static Fp raw(std::uint64_t x) {
    Fp f;
    f.v = x;
    return f;
  }

  friend Fp operator+(Fp a, Fp b) {
    std::uint64_t s = a.v + b.v;
    return raw(s >= P ? s - P : s);
  }
  friend Fp operator-(Fp a, Fp b) { return raw(a.v >= b.v ? a.v - b.v : a.v + P - b.v); }
  friend Fp operator-(Fp a) { return raw(a.v == 0 ? 0 : P - a.v); }
  friend Fp operator*(Fp a, Fp b) {
    return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v) * b.v) % P));
  }
  Fp pow(std::uint64_t e) const {
    Fp r = raw(1), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  Fp inverse() const {
    if (v == 0) throw InconsistencyError("division by zero modulo p");
    return pow(P - 2);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
};

template <std::uint64_t P>
inline bool is_zero(Fp<P> a) {
  return a.v == 0;
}
template <std::uint64_t P>
inline double to_double(Fp<P> a) {
  return static_cast<double>(a.v);
}

// n/d mod P; empty when P divides d
template <std::uint64_t P>
std::optional<Fp<P>> reduce_mod(const Rat& r) {
  auto md = [](const mpz_class& z) {
    return Fp<P>::raw(mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(P)));
  };
  Fp<P> d = md(r.get_den());
  if (d.v == 0) return std::nullopt;
  return md(r.get_num()) / d;
}

template <std::uint64_t P>
std::optional<Poly<Fp<P>>> reduce_mod(const QPoly& p) {
  std::vector<Fp<P>> v;
  for (const auto& c : p.coeffs()) {
    auto r = reduce_mod<P>(c);
    if (!r) return std::nullopt;
    v.push_back(*r);
  }
  return Poly<Fp<P>>(std::move(v));
}

inline constexpr std::uint64_t kPrime1 = 2305843009213693951ULL;  // 2^61 - 1
inline constexpr std::uint64_t kPrime2 = 4611686018427387847ULL;  // 2^62 - 57
inline constexpr std::uint64_t kPrime3 = 1000000000000000003ULL;

}  // namespace qwalk
