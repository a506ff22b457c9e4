#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "agewise/ageing.hpp"
#include "agewise/errors.hpp"
#include "oracles.hpp"

using namespace agewise;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// e falls from 2 to 1 on [0, 2], climbs back through the mean 2 at x = 4 and
// levels off at 3: DIMRL with turning point 2, NBWUE with change point 4.
MrlSpec dimrl_spec() {
  return MrlSpec{{{0.0, 2.0, SegmentKind::Affine, 2.0, -0.5},
                  {2.0, 6.0, SegmentKind::Affine, 0.0, 0.5},
                  {6.0, kInf, SegmentKind::Affine, 3.0, 0.0}}};
}

}  // namespace

TEST_CASE("validate_mrl: reference specs") {
  CHECK(validate_mrl(example_mrl_spec("example_3_4")).valid);
  CHECK(validate_mrl(example_mrl_spec("example_3_1")).valid);
  CHECK(validate_mrl(example_mrl_spec("example_3_3")).valid);
  CHECK(validate_mrl(constant_mrl(4.0)).valid);
  CHECK(validate_mrl(dimrl_spec()).valid);

  const MrlSpec bad{{{0.0, 1.0, SegmentKind::Affine, 2.0, -1.5},
                     {1.0, kInf, SegmentKind::Affine, 0.5, 0.0}}};
  const MrlValidityReport report = validate_mrl(bad);
  CHECK_FALSE(report.valid);
  CHECK(report.violates("V2"));
  CHECK_FALSE(report.violates("V1"));
  CHECK_FALSE(report.violates("V3"));
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations.front().location >= 0.0);
  CHECK(report.violations.front().location <= 1.0);
  CHECK(report.summary().find("V2") != std::string::npos);
}

TEST_CASE("validate_mrl: each condition is detected") {
  SUBCASE("structure") {
    CHECK(validate_mrl(MrlSpec{}).violates("STRUCTURE"));
    CHECK(validate_mrl(MrlSpec{{{1.0, kInf, SegmentKind::Affine, 1.0, 0.0}}}).violates("STRUCTURE"));
    const MrlSpec gap{{{0.0, 1.0, SegmentKind::Affine, 1.0, 0.0},
                       {2.0, kInf, SegmentKind::Affine, 1.0, 0.0}}};
    CHECK(validate_mrl(gap).violates("STRUCTURE"));
    const MrlSpec early_inf{{{0.0, kInf, SegmentKind::Affine, 1.0, 0.0},
                             {1.0, kInf, SegmentKind::Affine, 1.0, 0.0}}};
    CHECK(validate_mrl(early_inf).violates("STRUCTURE"));
  }
  SUBCASE("V1 positivity") {
    CHECK(validate_mrl(MrlSpec{{{0.0, kInf, SegmentKind::Affine, -1.0, 0.0}}}).violates("V1"));
    CHECK(validate_mrl(MrlSpec{{{0.0, kInf, SegmentKind::Reciprocal, 1.0, 1.0}}}).violates("V1"));
  }
  SUBCASE("V3 continuity") {
    const MrlSpec jump{{{0.0, 1.0, SegmentKind::Affine, 2.0, 0.0},
                        {1.0, kInf, SegmentKind::Affine, 3.0, 0.0}}};
    const auto r = validate_mrl(jump);
    CHECK(r.violates("V3"));
    CHECK(r.violations.front().location == 1.0);
  }
  SUBCASE("V4 tail divergence") {
    const MrlSpec cut{{{0.0, 5.0, SegmentKind::Affine, 2.0, 0.0}}};
    CHECK(validate_mrl(cut).violates("V4"));
    const MrlSpec falling{{{0.0, kInf, SegmentKind::Affine, 2.0, -0.5}}};
    CHECK(validate_mrl(falling).violates("V4"));
    const MrlSpec vanishing{{{0.0, 1.0, SegmentKind::Affine, 2.0, 0.0},
                             {1.0, kInf, SegmentKind::Reciprocal, 0.0, 2.0}}};
    CHECK(validate_mrl(vanishing).violates("V4"));
    // Terminating where e reaches 0 is a legitimate finite support.
    CHECK(validate_mrl(MrlSpec{{{0.0, 10.0, SegmentKind::Affine, 5.0, -0.5}}}).valid);
  }
  SUBCASE("V2 on a reciprocal segment near its left knot") {
    const MrlSpec steep{{{0.0, 0.5, SegmentKind::Affine, 5.0, -1.0},
                         {0.5, kInf, SegmentKind::Reciprocal, 3.5, 0.5}}};
    // e' = -b/x^2 = -2 at x = 0.5.
    const auto r = validate_mrl(steep);
    CHECK(r.violates("V2"));
  }
}

TEST_CASE("classify_crossing: reference classifications") {
  const ClassVerdict ex31 = classify_crossing(catalog("example_3_1"));
  CHECK(ex31.label == AgeingClass::Nwbue);
  REQUIRE(ex31.change_point);
  CHECK(std::abs(*ex31.change_point - 10.0) <= 1e-6);
  CHECK(ex31.mu == doctest::Approx(5.0));
  REQUIRE(ex31.crossings.size() == 1);
  CHECK(ex31.crossings.front() == *ex31.change_point);

  const ClassVerdict ex33 = classify_crossing(catalog("example_3_3"));
  CHECK(ex33.label == AgeingClass::Nwue);
  CHECK_FALSE(ex33.change_point);

  const ClassVerdict w = classify_crossing(weibull(2.0, 1.0));
  CHECK(w.label == AgeingClass::Nbue);
  CHECK_FALSE(w.change_point);

  CHECK(classify_crossing(exponential(3.0)).label == AgeingClass::Exponential);

  const ClassVerdict ex34 = classify_crossing(catalog("example_3_4"));
  CHECK(ex34.label == AgeingClass::Nwbue);
  REQUIRE(ex34.change_point);
  CHECK(std::abs(*ex34.change_point - 3.0) <= 1e-6);
}

TEST_CASE("classify_crossing: NBWUE dual") {
  const ClassVerdict v = classify_crossing(from_mrl(dimrl_spec()));
  CHECK(v.label == AgeingClass::Nbwue);
  REQUIRE(v.change_point);
  CHECK(std::abs(*v.change_point - 4.0) <= 1e-6);
}

TEST_CASE("classify_crossing: horizon auto-extension and options") {
  ScanOptions short_horizon;
  short_horizon.horizon = 5.0;  // survival(5) is far above 1e-9
  short_horizon.grid_n = 1024;
  const ClassVerdict v = classify_crossing(catalog("example_3_1"), short_horizon);
  CHECK(v.horizon > 60.0);
  CHECK(v.label == AgeingClass::Nwbue);

  const auto d = catalog("example_3_1");
  CHECK(d.survival(default_horizon(d)) < 1e-9);
  CHECK(d.survival(default_horizon(d) * (1.0 - 1e-5)) >= 1e-9);
}

TEST_CASE("classify_crossing: scale equivariance") {
  const auto d = catalog("example_3_1");
  const ClassVerdict base = classify_crossing(d);
  const ClassVerdict scaled = classify_crossing(d.scaled(2.0));
  CHECK(scaled.label == base.label);
  REQUIRE(scaled.change_point);
  CHECK(std::abs(*scaled.change_point - 20.0) <= 2e-6);

  for (double c : {0.25, 3.0}) {
    for (const char* name : {"example_3_3", "example_3_4"}) {
      const auto e = catalog(name);
      const ClassVerdict a = classify_crossing(e, {0.0, 1024, kSignTol});
      const ClassVerdict b = classify_crossing(e.scaled(c), {0.0, 1024, kSignTol});
      CHECK(a.label == b.label);
      if (a.change_point) CHECK(*b.change_point == doctest::Approx(c * *a.change_point).epsilon(1e-8));
    }
  }
}

TEST_CASE("classify_crossing: verdict agrees with the MRL on the grid") {
  const std::vector<LifeDistribution> ds{exponential(1.0), weibull(1.5), weibull(3.0),
                                         catalog("example_3_3"), catalog("example_3_1")};
  for (const auto& d : ds) {
    const ClassVerdict v = classify_crossing(d, {0.0, 512, kSignTol});
    const double tol = 1e-9 * d.mean();
    bool all_below = true;
    bool all_above = true;
    for (int i = 0; i < 512; ++i) {
      const double x = v.horizon * i / 511.0;
      const double e = mrl_of(d, x);
      all_below = all_below && e <= d.mean() + tol;
      all_above = all_above && e >= d.mean() - tol;
    }
    const bool nbue = v.label == AgeingClass::Nbue || v.label == AgeingClass::Exponential;
    const bool nwue = v.label == AgeingClass::Nwue || v.label == AgeingClass::Exponential;
    CHECK(nbue == all_below);
    CHECK(nwue == all_above);
  }
}

TEST_CASE("classify_mrl_shape: reference shapes") {
  const MrlShapeVerdict ex33 = classify_mrl_shape(catalog("example_3_3"));
  CHECK(ex33.label == MrlShape::Idmrl);
  REQUIRE(ex33.turning_point);
  CHECK(std::abs(*ex33.turning_point - 2.0) <= 1e-6);

  const MrlShapeVerdict expo = classify_mrl_shape(exponential(1.0));
  CHECK(expo.label == MrlShape::Constant);
  CHECK_FALSE(expo.turning_point);

  // Golden value recorded from the implementation: e rises on [0, 1) and
  // falls afterwards, so the turning point snaps to the knot at 1.
  const MrlShapeVerdict ex34 = classify_mrl_shape(catalog("example_3_4"));
  CHECK(ex34.label == MrlShape::Idmrl);
  REQUIRE(ex34.turning_point);
  CHECK(*ex34.turning_point == 1.0);

  CHECK(classify_mrl_shape(weibull(2.0)).label == MrlShape::Decreasing);

  const MrlShapeVerdict dimrl = classify_mrl_shape(from_mrl(dimrl_spec()));
  CHECK(dimrl.label == MrlShape::Dimrl);
  REQUIRE(dimrl.turning_point);
  CHECK(*dimrl.turning_point == 2.0);
}

TEST_CASE("classify_mrl_shape: turning point off the knot grid") {
  const auto d = catalog("example_3_3").scaled(1.0 + 1e-7);
  const MrlShapeVerdict v = classify_mrl_shape(d);
  CHECK(v.label == MrlShape::Idmrl);
  REQUIRE(v.turning_point);
  CHECK(std::abs(*v.turning_point - 2.0 * (1.0 + 1e-7)) <= 1e-9);
}

TEST_CASE("resolve_idmrl: reference resolutions") {
  const auto ex33 = catalog("example_3_3");
  const ClassVerdict r33 = resolve_idmrl(ex33, classify_mrl_shape(ex33));
  CHECK(r33.label == AgeingClass::Nwue);
  CHECK_FALSE(r33.change_point);

  const auto ex34 = catalog("example_3_4");
  const ClassVerdict r34 = resolve_idmrl(ex34, classify_mrl_shape(ex34));
  CHECK(r34.label == AgeingClass::Nwbue);
  REQUIRE(r34.change_point);
  CHECK(std::abs(*r34.change_point - 3.0) <= 1e-6);

  const auto expo = exponential(1.0);
  CHECK_THROWS_AS(resolve_idmrl(expo, classify_mrl_shape(expo)), InvalidArgument);
  MrlShapeVerdict disguised;
  disguised.label = MrlShape::Idmrl;
  CHECK_THROWS_AS(resolve_idmrl(expo, disguised), InvalidArgument);
}

TEST_CASE("resolve_idmrl agrees with classify_crossing") {
  std::vector<LifeDistribution> ds;
  for (const char* name : {"example_3_1", "example_3_3", "example_3_4"}) {
    ds.push_back(catalog(name));
    ds.push_back(from_mrl(example_mrl_spec(name)));
  }
  ds.push_back(from_mrl(dimrl_spec()));
  for (const auto& d : ds) {
    const MrlShapeVerdict shape = classify_mrl_shape(d);
    REQUIRE((shape.label == MrlShape::Idmrl || shape.label == MrlShape::Dimrl));
    const ClassVerdict resolved = resolve_idmrl(d, shape);
    const ClassVerdict crossing = classify_crossing(d);
    CHECK(resolved.label == crossing.label);
    CHECK(resolved.change_point.has_value() == crossing.change_point.has_value());
    if (resolved.change_point && crossing.change_point) {
      CHECK(std::abs(*resolved.change_point - *crossing.change_point) <= 1e-6);
    }
  }
}

TEST_CASE("label strings") {
  CHECK(to_string(AgeingClass::Nwbue) == "NWBUE");
  CHECK(to_string(AgeingClass::Exponential) == "EXPONENTIAL");
  CHECK(to_string(MrlShape::Idmrl) == "IDMRL");
  CHECK(to_string(MrlShape::Constant) == "CONSTANT");
}
