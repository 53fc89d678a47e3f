#include <gtest/gtest.h>

#include <algorithm>

#include "common.hpp"

using namespace qtest;

namespace {
bool has_route(const Verdict& v, const std::string& r) {
  const auto& a = v.consolidated.agreeing_routes;
  return std::find(a.begin(), a.end(), r) != a.end();
}
const RouteResult* route(const Verdict& v, const std::string& name) {
  for (const auto& r : v.routes)
    if (r.name == name) return &r;
  return nullptr;
}
const CriterionEntry* entry(const Verdict& v, const std::string& name) {
  for (const auto& c : v.criteria)
    if (c.name == name) return &c;
  return nullptr;
}
}  // namespace

TEST(Classify, SimpleWalkIsOrderFour) {
  Verdict v = classify(data_walk("simple"));
  EXPECT_EQ(v.consolidated.status, "finite");
  EXPECT_EQ(v.consolidated.order, 4);
  EXPECT_TRUE(has_route(v, "oracle"));
  EXPECT_TRUE(has_route(v, "det4"));
  EXPECT_EQ(v.exit_code(), 0);
}

TEST(Classify, ProductWalkIsOrderFour) {
  Verdict v = classify(data_walk("product"));
  EXPECT_EQ(v.consolidated.order, 4);
  EXPECT_TRUE(has_route(v, "oracle"));
  EXPECT_TRUE(has_route(v, "det4"));
}

TEST(Classify, ConstructedOrderSix) {
  auto p = order6_weight_points()[0];
  auto found = construct(gessel_family(p[0], p[1], p[2], p[3], Rat(1, 40), Rat(1, 25), 9, CriterionKind::order6).family);
  ASSERT_EQ(found.size(), 1u);
  Verdict v = classify(found[0].walk);
  EXPECT_EQ(v.consolidated.order, 6);
  for (const char* r : {"oracle", "det6", "elliptic_scan"}) EXPECT_TRUE(has_route(v, r)) << r;
  EXPECT_TRUE(v.inconsistencies.empty());
}

TEST(Classify, OrderEightAndTwelve) {
  Verdict v8 = classify(data_walk("gessel_order8"));
  EXPECT_EQ(v8.consolidated.order, 8);
  for (const char* r : {"oracle", "det8", "elliptic_scan", "wp_4m"}) EXPECT_TRUE(has_route(v8, r)) << r;
  Verdict v12 = classify(data_walk("order12"));
  EXPECT_EQ(v12.consolidated.order, 12);
  for (const char* r : {"oracle", "elliptic_scan", "wp_4m"}) EXPECT_TRUE(has_route(v12, r)) << r;
}

TEST(Classify, GenericWalkHasNoFiniteOrder) {
  Verdict v = classify(data_walk("generic"));
  EXPECT_EQ(v.consolidated.status, "none");
  EXPECT_EQ(v.consolidated.message, "no finite order detected (n_max=24, q_max=64)");
  EXPECT_EQ(v.exit_code(), 1);
  EXPECT_TRUE(v.inconsistencies.empty());
}

TEST(Classify, SingularWalkIsDegenerate) {
  Verdict v = classify(data_walk("singular"));
  EXPECT_EQ(v.consolidated.status, "degenerate");
  EXPECT_EQ(v.exit_code(), 2);
}

TEST(Classify, GenusZeroNeedsTwoRoutes) {
  // the oracle alone finds order 6 and the order-6 determinant sits in its excluded case
  Verdict v = classify(data_walk("genus0"));
  EXPECT_EQ(v.oracle.order, 6);
  EXPECT_EQ(v.consolidated.status, "unconfirmed");
  EXPECT_EQ(v.exit_code(), 1);
}

TEST(Classify, GatingSkipsOrderSixAndEightWhenDetIsZero) {
  for (const char* name : {"simple", "product", "order4_lazy"}) {
    Verdict v = classify(data_walk(name));
    for (const char* c : {"order6", "order8"}) {
      const CriterionEntry* e = entry(v, c);
      ASSERT_NE(e, nullptr);
      EXPECT_FALSE(e->consulted) << name;
      EXPECT_FALSE(e->exact.has_value()) << name;
    }
    EXPECT_EQ(route(v, "det6"), nullptr);
    EXPECT_EQ(route(v, "rank4m"), nullptr);
  }
}

TEST(Classify, OracleCaps) {
  Config c;
  c.max_order = 10;
  Verdict v = classify(data_walk("order12"), c);
  EXPECT_EQ(v.oracle.status, "exceeds");
  EXPECT_TRUE(v.inconsistencies.empty());
  // the elliptic routes alone may still agree on 12
  if (v.consolidated.status == "finite") EXPECT_EQ(v.consolidated.order, 12);
  c = Config{};
  c.degree_cap = 1;
  Verdict u = classify(data_walk("generic"), c);
  EXPECT_EQ(u.oracle.status, "resource_limit");
  EXPECT_EQ(u.consolidated.status, "undecided");
  EXPECT_EQ(u.exit_code(), 4);
}

TEST(Classify, TransposeGivesTheSameVerdict) {
  for (const auto& [name, w] : data_corpus()) {
    Verdict a = classify(w), b = classify(w.transposed());
    EXPECT_EQ(a.consolidated.status, b.consolidated.status) << name;
    EXPECT_EQ(a.consolidated.order, b.consolidated.order) << name;
  }
}

TEST(Report, RoundTrip) {
  for (const auto& [name, w] : data_corpus()) {
    Verdict v = classify(w);
    Verdict back = verdict_from_json(ojson::parse(report_json(v)));
    EXPECT_EQ(back, v) << name;
    EXPECT_EQ(report_json(back), report_json(v)) << name;
  }
}

TEST(Report, Deterministic) {
  Config c;
  c.seed = 12345;
  for (const char* name : {"gessel_order8", "generic", "order6_c"}) {
    EXPECT_EQ(report_json(classify(data_walk(name), c)), report_json(classify(data_walk(name), c)));
  }
}

TEST(Report, ExactValuesAreRationalStrings) {
  ojson j = ojson::parse(report_json(classify(data_walk("kreweras_weighted"))));
  EXPECT_EQ(j["criteria"][0]["name"], "order4");
  EXPECT_EQ(j["criteria"][0]["exact"], "-1/32");
  EXPECT_TRUE(j["elliptic"]["omega2"].is_string());
  std::string first;
  for (auto it = j.begin(); it != j.end(); ++it) {
    first = it.key();
    break;
  }
  EXPECT_EQ(first, "walk");
}

TEST(Report, InconsistencyEntriesCarryRoutesAndResiduals) {
  Verdict v = classify(data_walk("generic"));
  v.inconsistencies.push_back({{"oracle", "elliptic_scan"}, "orders disagree", {"|n w3 - k w2| = 1e-3"}});
  v.consolidated.status = "inconsistent";
  ojson j = ojson::parse(report_json(v));
  EXPECT_EQ(j["inconsistencies"][0]["routes"][1], "elliptic_scan");
  EXPECT_EQ(j["inconsistencies"][0]["residuals"][0], "|n w3 - k w2| = 1e-3");
  EXPECT_EQ(v.exit_code(), 3);
  EXPECT_EQ(verdict_from_json(j), v);
}

TEST(Report, TextSummary) {
  std::string t = report_text(classify(data_walk("simple")));
  EXPECT_NE(t.find("verdict: finite group of order 4 (oracle, det4)"), std::string::npos);
}

TEST(Classify, RandomWalksAreConsistent) {
  for (const auto& w : random_walks(61, 40)) {
    Verdict v = classify(w);
    EXPECT_TRUE(v.inconsistencies.empty()) << walk_digest(w);
    if (v.oracle.status == "finite" && v.consolidated.status == "finite") EXPECT_EQ(v.consolidated.order, v.oracle.order);
  }
}
