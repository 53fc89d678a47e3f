#pragma once

#include <array>
#include <regex>
#include <string>

#include <json.hpp>

#include "poly.hpp"

namespace qwalk {

using Mat3 = std::array<std::array<Rat, 3>, 3>;

// p(i,j) for i,j in {-1,0,1}.
struct WalkSpec {
  std::array<std::array<Rat, 3>, 3> p{};  // p[i+1][j+1]

  Rat& operator()(int i, int j) { return p[i + 1][j + 1]; }
  const Rat& operator()(int i, int j) const { return p[i + 1][j + 1]; }

  Rat total() const {
    Rat s = 0;
    for (auto& row : p)
      for (auto& v : row) s += v;
    return s;
  }

  WalkSpec transposed() const {
    WalkSpec t;
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j) t(i, j) = (*this)(j, i);
    return t;
  }

  friend bool operator==(const WalkSpec& a, const WalkSpec& b) { return a.p == b.p; }
};

inline std::string key_of(int i, int j) { return "p" + std::to_string(i) + std::to_string(j); }

inline void check_walk(const WalkSpec& w) {
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      if (sgn(w(i, j)) < 0)
        throw ParseError("negative probability " + key_of(i, j) + " = " + to_string(w(i, j)));
  Rat s = w.total();
  if (s != 1)
    throw ParseError("probabilities sum to " + to_string(s) + " != 1 (deficit " +
                     to_string(Rat(1 - s)) + ")");
}

// Flat document {"p10": "1/4", ...}; absent keys are 0. An optional "name" is ignored.
inline WalkSpec parse_walk(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("walk document must be an object");
  static const std::regex key_re("^p(-1|0|1)(-1|0|1)$");
  WalkSpec w;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k == "name") continue;
    std::smatch m;
    if (!std::regex_match(k, m, key_re)) throw ParseError("unknown key \"" + k + "\"");
    int i = std::stoi(m[1].str()), j = std::stoi(m[2].str());
    const auto& v = it.value();
    Rat r;
    if (v.is_string())
      r = parse_rational(v.get<std::string>());
    else if (v.is_number_integer())
      r = Rat(v.get<long>());
    else
      throw ParseError("value of " + k + " must be a rational string such as \"1/4\"");
    w(i, j) = r;
  }
  check_walk(w);
  return w;
}

inline WalkSpec parse_walk(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("walk document is not valid JSON: ") + e.what());
  }
  return parse_walk(doc);
}
inline WalkSpec parse_walk(const char* text) { return parse_walk(std::string(text)); }

inline nlohmann::ordered_json walk_to_json(const WalkSpec& w) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (int i = 1; i >= -1; --i)
    for (int jj = 1; jj >= -1; --jj)
      if (!is_zero(w(i, jj))) j[key_of(i, jj)] = to_string(w(i, jj));
  return j;
}

inline std::string walk_digest(const WalkSpec& w) {
  std::string s;
  for (int i = 1; i >= -1; --i)
    for (int j = 1; j >= -1; --j) {
      if (is_zero(w(i, j))) continue;
      if (!s.empty()) s += ",";
      s += key_of(i, j) + "=" + to_string(w(i, j));
    }
  return s;
}

// Rows i = 1,0,-1; columns j = 1,0,-1; center p00 - 1.
inline Mat3 build_matrix(const WalkSpec& w) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = w(1 - r, 1 - c);
  m[1][1] -= 1;
  return m;
}

inline Rat det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Signed cofactors; cof[i][j] is Delta_{i+1,j+1}.
inline Mat3 cofactors(const Mat3& m) {
  Mat3 d;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      // cyclic minor ordering already carries the (-1)^(i+j) sign
      d[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  return d;
}

inline Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

inline int rank3(Mat3 m) {
  int rank = 0;
  for (int c = 0; c < 3 && rank < 3; ++c) {
    int piv = -1;
    for (int r = rank; r < 3; ++r)
      if (!is_zero(m[r][c])) piv = r;
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < 3; ++r) {
      if (r == rank || is_zero(m[r][c])) continue;
      Rat f = m[r][c] / m[rank][c];
      for (int k = 0; k < 3; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

struct KernelData {
  QPoly a, b, c;        // in x
  QPoly at, bt, ct;     // in y
  QPoly D, Dt;
  Rat d4, dt4;
  Mat3 P, cof;
};

inline KernelData kernel_data(const WalkSpec& w) {
  KernelData k;
  k.P = build_matrix(w);
  k.cof = cofactors(k.P);
  const Mat3& M = k.P;
  // column j of P read as (x^2, x, 1) coefficients gives a, b, c; rows give a~, b~, c~
  auto col = [&](int j) { return QPoly{M[2][j], M[1][j], M[0][j]}; };
  auto row = [&](int i) { return QPoly{M[i][2], M[i][1], M[i][0]}; };
  k.a = col(0);
  k.b = col(1);
  k.c = col(2);
  k.at = row(0);
  k.bt = row(1);
  k.ct = row(2);
  k.D = k.b * k.b - Rat(4) * (k.a * k.c);
  k.Dt = k.bt * k.bt - Rat(4) * (k.at * k.ct);
  k.d4 = w(1, 0) * w(1, 0) - 4 * w(1, 1) * w(1, -1);
  k.dt4 = w(0, 1) * w(0, 1) - 4 * w(1, 1) * w(-1, 1);
  return k;
}

struct DegeneracyReport {
  bool is_singular = false;
  bool reducible = false;
  int genus = 1;
  int rank_P = 3;
  bool zero_drift = false;

  bool operator==(const DegeneracyReport&) const = default;
};

inline DegeneracyReport degeneracy(const WalkSpec& w) {
  DegeneracyReport r;
  KernelData k = kernel_data(w);
  r.is_singular = k.at.zero() || k.a.zero();
  QPoly gx = QPoly::gcd(QPoly::gcd(k.a, k.b), k.c);
  QPoly gy = QPoly::gcd(QPoly::gcd(k.at, k.bt), k.ct);
  r.reducible = !r.is_singular &&
                (gx.degree() > 0 || gy.degree() > 0 || is_square_form(k.D, 4));
  // genus 0 when the quartic form D has a repeated root, at infinity included
  bool repeated = k.D.degree() < 3 || QPoly::gcd(k.D, k.D.derivative()).degree() > 0;
  r.genus = (repeated || r.is_singular || r.reducible) ? 0 : 1;
  r.rank_P = rank3(k.P);
  Rat dx = 0, dy = 0;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      dx += i * w(i, j);
      dy += j * w(i, j);
    }
  r.zero_drift = is_zero(dx) && is_zero(dy);
  return r;
}

}  // namespace qwalk
