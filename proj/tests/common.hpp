#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <qwalk/classify.hpp>
#include <qwalk/scan.hpp>

namespace qtest {

using namespace qwalk;

inline const int kPos[8][2] = {{1, 1}, {1, 0}, {1, -1}, {0, 1}, {0, -1}, {-1, 1}, {-1, 0}, {-1, -1}};

// Integer weights 0..9 on the eight moves (about a third of them zero) plus a lazy weight, normalized.
inline WalkSpec random_walk(std::mt19937_64& rng) {
  for (;;) {
    WalkSpec w;
    long T = 0;
    int wt[9];
    for (int k = 0; k < 9; ++k) {
      wt[k] = (rng() % 3 == 0) ? 0 : static_cast<int>(rng() % 10);
      T += wt[k];
    }
    if (T == 0) continue;
    for (int k = 0; k < 8; ++k) {
      Rat r(wt[k], T);
      r.canonicalize();
      w(kPos[k][0], kPos[k][1]) = r;
    }
    Rat r(wt[8], T);
    r.canonicalize();
    w(0, 0) = r;
    return w;
  }
}

inline bool usable(const WalkSpec& w) {
  DegeneracyReport d = degeneracy(w);
  return !d.is_singular && !d.reducible;
}

inline std::vector<WalkSpec> random_walks(std::uint64_t seed, int count, bool genus1_only = false) {
  std::mt19937_64 rng(seed);
  std::vector<WalkSpec> out;
  while (static_cast<int>(out.size()) < count) {
    WalkSpec w = random_walk(rng);
    if (!usable(w)) continue;
    if (genus1_only && degeneracy(w).genus != 1) continue;
    out.push_back(w);
  }
  return out;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline WalkSpec data_walk(const std::string& name) {
  return parse_walk(slurp(std::string(QWALK_TEST_DATA) + "/" + name + ".json"));
}

inline std::vector<std::pair<std::string, WalkSpec>> data_corpus() {
  std::vector<std::pair<std::string, WalkSpec>> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(QWALK_TEST_DATA))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.emplace_back(f.stem().string(), parse_walk(slurp(f.string())));
  return out;
}

inline WalkSpec from_weights(std::initializer_list<std::pair<std::pair<int, int>, Rat>> ws) {
  WalkSpec w;
  Rat T = 0;
  for (const auto& [k, v] : ws) T += v;
  for (const auto& [k, v] : ws) w(k.first, k.second) = v / T;
  return w;
}

// A family on the support {p10, p-10, p11, p-1-1} with p10 varied and p00 as the slack.
// The fixed entries are the given weights divided by 2T, T being the total weight including
// a = p10, so the target point sits in the middle of the simplex with p00 = 1/2.
struct FamilyInstance {
  Family family;
  Rat target;  // p10 value at the constructed point
};

inline FamilyInstance gessel_family(Rat a, Rat b, Rat g, Rat e, Rat below, Rat above, int n,
                                    CriterionKind k) {
  Rat T2 = 2 * (a + b + g + e);
  FamilyInstance fi;
  fi.target = a / T2;
  fi.target.canonicalize();
  Family& f = fi.family;
  f.base(-1, 0) = b / T2;
  f.base(1, 1) = g / T2;
  f.base(-1, -1) = e / T2;
  VarySpec v;
  v.i = 1;
  v.j = 0;
  v.lo = fi.target - below;
  v.hi = fi.target + above;
  v.n = n;
  f.vary = {v};
  f.slack_i = f.slack_j = 0;
  f.criteria = {k};
  return fi;
}

// Weight tuples (w10, w-10, w11, w-1-1) at which the order-6 determinant vanishes.
inline std::vector<std::array<Rat, 4>> order6_weight_points() {
  auto q = [](long n, long d) {
    Rat r(n, d);
    r.canonicalize();
    return r;
  };
  return {{q(35, 9), q(1, 2), 1, q(1, 9)},
          {q(83, 9), q(2, 5), 1, q(1, 9)},
          {q(17, 3), q(4, 9), 1, q(1, 9)},
          {q(59, 9), q(3, 7), 1, q(1, 9)},
          {q(101, 4), q(6, 11), 1, q(1, 4)}};
}

struct Constructed {
  WalkSpec walk;
  Crossing crossing;
};

// Bisects the family, snaps each crossing and keeps the ones where the criterion is exactly zero.
inline std::vector<Constructed> construct(const Family& f) {
  ScanResult R = scan(f);
  std::vector<Constructed> out;
  for (const auto& c : R.crossings) {
    if (!c.snapped || !c.snapped_zero) continue;
    auto [w, why] = f.walk_at({*c.snapped});
    if (w) out.push_back({*w, c});
  }
  return out;
}

}  // namespace qtest
