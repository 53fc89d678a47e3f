#include <gtest/gtest.h>

#include <random>

#include <qwalk/numeric.hpp>

using namespace qwalk;

// reference values from Carlson's published test table
TEST(Carlson, ReferenceValues) {
  EXPECT_NEAR(carlson_rf(1, 2, 0), 1.3110287771461, 1e-13);
  EXPECT_NEAR(carlson_rf(0.5, 1, 0), 1.8540746773014, 1e-13);
  EXPECT_NEAR(carlson_rf(2, 3, 4), 0.58408284167715, 1e-13);
  EXPECT_NEAR(carlson_rf(1, 1, 1), 1.0, 1e-15);
}

TEST(Carlson, AgreesWithQuadrature) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 5);
  for (int t = 0; t < 50; ++t) {
    double x = u(rng), y = u(rng), z = u(rng);
    // R_F = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z)); t = tan^2(th) keeps the integrand bounded
    auto f = [&](double th) {
      double tn = std::tan(th), c = std::cos(th), t = tn * tn;
      return tn / (c * c) / std::sqrt((t + x) * (t + y) * (t + z));
    };
    EXPECT_NEAR(carlson_rf(x, y, z), integrate(f, 0, std::numbers::pi / 2), 1e-12);
  }
}

TEST(Carlson, RejectsBadArguments) {
  EXPECT_THROW(carlson_rf(-1, 1, 1), NumericHealth);
  EXPECT_THROW(carlson_rf(0, 0, 1), NumericHealth);
}

TEST(Quadrature, SmoothAndEndpointSingular) {
  EXPECT_NEAR(integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi), 2, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::exp(-x * x); }, -8, 8), std::sqrt(std::numbers::pi), 1e-13);
  // integrable endpoint singularity: int_0^1 x^-1/2 = 2 (no node sits on an endpoint)
  EXPECT_NEAR(integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, 1e-10), 2, 1e-6);
}

TEST(Quadrature, BudgetBoundsTheWork) {
  long calls = 0;
  integrate([&](double x) { ++calls; return std::sin(1 / (x + 1e-9)); }, 0, 1, 1e-15, 100);
  EXPECT_LE(calls, 100 * 2 * 15 + 15);
}

TEST(Roots, FactoredPolynomials) {
  // (x^2 - 1/4)(x^2 - 9)
  QPoly p = QPoly{Rat(-1, 4), 0, 1} * QPoly{-9, 0, 1};
  auto r = poly_roots(p);
  ASSERT_EQ(r.size(), 4u);
  std::vector<double> re;
  for (auto z : r) {
    EXPECT_EQ(z.imag(), 0);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], -3, 1e-15);
  EXPECT_NEAR(re[1], -0.5, 1e-15);
  EXPECT_NEAR(re[2], 0.5, 1e-15);
  EXPECT_NEAR(re[3], 3, 1e-15);
  // x (x - 2)(x^2 + 1): one exact zero, one real, one complex pair
  auto s = poly_roots(QPoly{0, 1} * QPoly{-2, 1} * QPoly{1, 0, 1});
  int real = 0, cplx = 0;
  for (auto z : s) (z.imag() == 0 ? real : cplx)++;
  EXPECT_EQ(real, 2);
  EXPECT_EQ(cplx, 2);
}

TEST(Roots, RandomRationalRoots) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rat> roots;
    QPoly p{1};
    for (int i = 0; i < 4; ++i) {
      Rat r(static_cast<long>(rng() % 401) - 200, 1 + static_cast<long>(rng() % 40));
      r.canonicalize();
      if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
      roots.push_back(r);
      p = p * QPoly{-r, 1};
    }
    auto found = poly_roots(p);
    ASSERT_EQ(found.size(), roots.size());
    for (const Rat& r : roots) {
      double best = 1e300;
      for (auto z : found) best = std::min(best, std::abs(z - cdouble(r.get_d(), 0)));
      EXPECT_LT(best, 1e-12 * std::max(1.0, std::fabs(r.get_d())));
    }
  }
}
