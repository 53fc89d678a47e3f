#include <gtest/gtest.h>

#include <clocale>
#include <random>

#include <qwalk/config.hpp>
#include <qwalk/scan.hpp>

using namespace qwalk;

TEST(Rational, ParseCanonicalizes) {
  EXPECT_EQ(to_string(parse_rational("6/24")), "1/4");
  EXPECT_EQ(to_string(parse_rational("-3")), "-3/1");
  EXPECT_EQ(to_string(parse_rational("+0/5")), "0/1");
}

TEST(Rational, ParseRejectsMalformed) {
  for (const char* s : {"", "1/0", "1.5", "a/2", "1/", "/2", "1//2", "--1"})
    EXPECT_THROW(parse_rational(s), ParseError) << s;
}

TEST(Rational, ExactDecimals) {
  EXPECT_EQ(parse_exact_number("0.125"), Rat(1, 8));
  EXPECT_EQ(parse_exact_number("-1.25e-1"), Rat(-1, 8));
  EXPECT_EQ(parse_exact_number("2e3"), Rat(2000));
  EXPECT_EQ(parse_exact_number("3/9"), Rat(1, 3));
  EXPECT_EQ(parse_exact_number(".5"), Rat(1, 2));
  EXPECT_THROW(parse_exact_number("1.2.3"), ParseError);
  EXPECT_THROW(parse_exact_number("."), ParseError);
}

TEST(Rational, FloatsUse17SignificantDigits) {
  EXPECT_EQ(fmt_double(0.1), "0.10000000000000001");
  EXPECT_EQ(fmt_double(1.0 / 3), "0.33333333333333331");
  EXPECT_EQ(fmt_double(HUGE_VAL), "inf");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    EXPECT_EQ(parse_double(fmt_double(v)), v);
  }
}

TEST(Rational, FloatFormattingIgnoresLocale) {
  const char* names[] = {"de_DE.UTF-8", "fr_FR.UTF-8", "de_DE", "C.UTF-8"};
  for (const char* n : names) {
    if (!std::setlocale(LC_ALL, n)) continue;
    EXPECT_EQ(fmt_double(1.5), "1.5");
    EXPECT_EQ(parse_double("2.25"), 2.25);
  }
  std::setlocale(LC_ALL, "C");
}

// smallest denominator by exhaustive search
static Rat brute_simplest(const Rat& lo, const Rat& hi) {
  for (long q = 1;; ++q) {
    mpz_class p;
    Rat lq = lo * q;
    mpz_cdiv_q(p.get_mpz_t(), lq.get_num_mpz_t(), lq.get_den_mpz_t());
    if (Rat(p, q) <= hi) {
      Rat r(p, q);
      r.canonicalize();
      return r;
    }
  }
}

TEST(Rational, SimplestRationalMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Rat a(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 300));
    Rat w(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 5000));
    a.canonicalize();
    w.canonicalize();
    Rat lo = a, hi = a + w;
    Rat s = simplest_rational(lo, hi);
    EXPECT_GE(s, lo);
    EXPECT_LE(s, hi);
    EXPECT_EQ(s.get_den(), brute_simplest(lo, hi).get_den());
  }
  EXPECT_EQ(simplest_rational(Rat(31, 100), Rat(33, 100)), Rat(5, 16));
  EXPECT_EQ(simplest_rational(Rat(-1, 3), Rat(1, 7)), Rat(0));
}

TEST(Config, RoundTripAndValidation) {
  Config c;
  c.seed = 18446744073709551615ULL;
  c.scan_tol = 1e-11;
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
  EXPECT_THROW(config_from_json(nlohmann::ordered_json{{"bogus", 1}}), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::ordered_json{{"oracle_mode", "fast"}}), ParseError);
  EXPECT_THROW(config_from_json(nlohmann::ordered_json{{"max_order", 1}}), ParseError);
  EXPECT_EQ(Config{}.n_max(), 24);
}
