#include <gtest/gtest.h>

#include <sstream>

#include "tripois/catalog.hpp"
#include "tripois/error.hpp"
#include "tripois/serialization.hpp"

using namespace tripois;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(RegionJson, Kinds) {
  Region r = region_from_json(Json::parse(R"({"kind":"rectangle","corner":[0,0],"width":2,"height":3})"));
  EXPECT_DOUBLE_EQ(r.area(), 6.0);
  r = region_from_json(Json::parse(R"({"kind":"disk","center":[1,2],"radius":2})"));
  EXPECT_TRUE(r.is_disk());
  r = region_from_json(Json::parse(
      R"({"kind":"simple_polygon","vertices":[[0,0],[1,0],[1,0.5],[0.5,0.5],[0.5,1],[0,1]]})"));
  EXPECT_DOUBLE_EQ(r.area(), 0.75);
  EXPECT_FALSE(r.is_convex());
}

TEST(RegionJson, ErrorsNameTheField) {
  EXPECT_EQ(error_of([] { region_from_json(Json::parse(R"({"kind":"disk","center":[0,0]})")); }),
            "region.radius: missing");
  EXPECT_EQ(error_of([] {
              region_from_json(Json::parse(R"({"kind":"disk","center":[0,"a"],"radius":1})"));
            }),
            "region.center[1]: expected a number");
  EXPECT_EQ(error_of([] { region_from_json(Json::parse(R"({"kind":"blob"})")); }),
            "region.kind: unknown region kind 'blob'");
  EXPECT_NE(error_of([] {
              region_from_json(Json::parse(
                  R"({"kind":"convex_polygon","vertices":[[0,0],[1,0],[0.2,0.2],[0,1]]})"));
            }).find("region: "),
            std::string::npos);
}

TEST(MeasureJson, RoundTripEveryCatalogMeasure) {
  for (const auto& m : catalog::measures()) {
    const Json j = measure_to_json(m.measure);
    const Measure back = measure_from_json(j);
    EXPECT_EQ(measure_to_json(back), j) << m.name;
    EXPECT_EQ(density(back, {0.3, 0.4}), density(m.measure, {0.3, 0.4})) << m.name;
  }
}

TEST(MeasureJson, NestedErrorPath) {
  const Json j = Json::parse(R"({"kind":"mixture","weights":[0.5,0.5],"components":[
      {"kind":"gaussian","cov":[[1,0],[0,1]]},
      {"kind":"gaussian","cov":[[1,0.2],[0.3,1]]}]})");
  EXPECT_EQ(error_of([&] { measure_from_json(j); }), "measure.components[1].cov: not symmetric");
  const Json a = Json::parse(R"({"kind":"affine","A":[[1,2],[2,4]],"base":{"kind":"gaussian","cov":[[1,0],[0,1]]}})");
  EXPECT_EQ(error_of([&] { measure_from_json(a); }).rfind("measure.A: ", 0), 0u);
}

TEST(ConfigJson, ParseAndRoundTrip) {
  const Json j = Json::parse(R"({"measure":{"kind":"uniform","region":{"kind":"rectangle","corner":[0,0],"width":1,"height":1}},
      "n":200,"replicates":2000,"alphas":[0.5,1,2],"k_order":3,"seed":42})");
  const SimConfig cfg = config_from_json(j);
  EXPECT_EQ(cfg.n, 200u);
  EXPECT_EQ(cfg.replicates, 2000u);
  EXPECT_EQ(cfg.alphas, (std::vector<double>{0.5, 1, 2}));
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(config_to_json(config_from_json(config_to_json(cfg))), config_to_json(cfg));
  Json bad = j;
  bad["replicates"] = 0;
  EXPECT_EQ(error_of([&] { config_from_json(bad); }), "replicates: must be positive");
  bad = j;
  bad["n"] = -5;
  EXPECT_EQ(error_of([&] { config_from_json(bad); }), "n: must be non-negative");
  bad = j;
  bad.erase("alphas");
  EXPECT_EQ(error_of([&] { config_from_json(bad); }), "config.alphas: missing");
}

TEST(Csv, PointsRoundTripBitExact) {
  std::vector<Point> pts{{0.1, 1.0 / 3.0}, {-2.5e-300, 12345.678901234567}, {1e300, 0.0}};
  std::stringstream ss;
  write_points_csv(ss, pts);
  EXPECT_EQ(read_points_csv(ss), pts);
  std::stringstream bad("x,y\n1,2,3\n");
  EXPECT_THROW(read_points_csv(bad), InputError);
}

TEST(Csv, HitsFormat) {
  std::stringstream ss;
  write_hits_csv(ss, {{0, 1, 2, 0.1}});
  EXPECT_EQ(ss.str(), "i,j,k,area\n0,1,2,0.10000000000000001\n");
}

TEST(Csv, ReplicatesRoundTrip) {
  SimConfig cfg;
  cfg.n = 40;
  cfg.replicates = 5;
  cfg.alphas = {1.0, 2.0};
  cfg.k_order = 2;
  const SimResult r = run_simulation(cfg, 1);
  std::stringstream ss;
  write_replicates_csv(ss, r);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "replicate,delta1,delta2,T_alpha1,T_alpha2,diam1");
  const SimResult back = read_replicates_csv(ss, cfg);
  for (std::size_t i = 0; i < r.replicates.size(); ++i) {
    EXPECT_EQ(back.replicates[i].scaled, r.replicates[i].scaled);
    EXPECT_EQ(back.replicates[i].counts, r.replicates[i].counts);
    EXPECT_EQ(back.replicates[i].diameter, r.replicates[i].diameter);
  }
}

TEST(Json, KappaAndSummaryKeys) {
  const Json echo = measure_to_json(Measure::uniform(catalog::unit_square()));
  const Json k = kappa_to_json({2.0, 0.0, KappaMethod::kClosedForm, 0}, echo);
  EXPECT_EQ(k["method"], "closed_form");
  EXPECT_EQ(k["measure"], echo);
  EXPECT_EQ(tv_key(2.0), "tv_alpha2");
  EXPECT_EQ(tv_key(0.5), "tv_alpha0.5");
  // Doubles survive a dump/parse cycle exactly.
  const double x = 0.1 + 0.2;
  EXPECT_EQ(Json::parse(Json(x).dump()).get<double>(), x);
}
