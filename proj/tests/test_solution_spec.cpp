#include <gtest/gtest.h>

#include <filesystem>

#include "exactpde/errors.hpp"
#include "exactpde/solution_spec.hpp"
#include "support.hpp"

using namespace exactpde;
using testing_support::source_path;

TEST(SolutionSpec, Defaults) {
  const SolutionSpec s = parse_solution_spec(R"({"family": "mhd_C", "functions": {"F": "w^2"}})");
  EXPECT_FALSE(s.geo);
  EXPECT_EQ(s.tolerance, 1e-8);
  EXPECT_EQ(s.grid.size(), 625u);
  EXPECT_EQ(s.grid.axis(Var::z).min, -1.0);
  EXPECT_EQ(s.grid.axis(Var::z).count, 5);
  const SolutionSpec a = parse_solution_spec(R"({"family": "geo_A", "constants": {"k": 1}, "functions": {"theta": "t"}})");
  EXPECT_EQ(a.tolerance, 1e-7);
  EXPECT_EQ(std::get<GeoFamilyA>(a.instance).quadrature_tolerance, 1e-12);
  const SolutionSpec b = parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}})");
  EXPECT_EQ(std::get<GeoFamilyB>(b.instance).series_terms, 40);
}

TEST(SolutionSpec, ConstantsMayBeExpressions) {
  const SolutionSpec s = parse_solution_spec(
      R"({"family": "geo_A", "constants": {"k": "2*pi"}, "functions": {"theta": 0},
          "modes": [{"a": 1, "b": "1/4", "c": "pi/2"}]})");
  const auto& a = std::get<GeoFamilyA>(s.instance);
  EXPECT_DOUBLE_EQ(a.k, 2 * M_PI);
  EXPECT_DOUBLE_EQ(a.modes.at(0).b, 0.25);
  EXPECT_DOUBLE_EQ(a.modes.at(0).d, 1.0);
}

TEST(SolutionSpec, SchemaErrors) {
  EXPECT_THROW(parse_solution_spec("{"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_Z"})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B"})"), ConfigError);  // k missing
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "equation": "mhd", "constants": {"k": 1}})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}, "extra": 1})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}, "grid": {"z": [0, 1, 2]}})"),
               ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}, "grid": {"x": [0, 1]}})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}, "grid": {"x": [1, 0, 3]}})"),
               ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_B", "constants": {"k": 1}, "tolerance": -1})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "mhd_B", "constants": {"case": 1.5, "a1": 1, "a2": 1}})"),
               ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "mhd_C", "variant": "curved"})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "mhd_A", "transforms": [{"type": "scale"}]})"), ConfigError);
  EXPECT_THROW(parse_solution_spec(R"({"family": "mhd_A", "transforms": [{"type": "shear_x", "sigma": "x"}]})"),
               ConfigError);
  EXPECT_THROW(load_solution_spec(source_path("tests/golden/no_such_file.json")), ConfigError);
}

TEST(SolutionSpec, ExpressionErrorsNameTheSlot) {
  try {
    parse_solution_spec(R"({"family": "geo_A", "constants": {"k": 1}, "functions": {"theta": "sin("}})");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("functions.theta"), std::string::npos);
    EXPECT_NE(what.find("byte 4"), std::string::npos);
  }
  EXPECT_THROW(parse_solution_spec(R"({"family": "geo_A", "constants": {"k": 1}, "functions": {"theta": "x"}})"),
               ConfigError);
}

TEST(SolutionSpec, ConstraintErrorsComeFromBuilding) {
  const SolutionSpec s = parse_solution_spec(
      R"({"family": "geo_A", "constants": {"k": 1, "c": 0, "d": 0}, "functions": {"theta": "t"}})");
  EXPECT_THROW(build_solution(s), ParameterError);
}

TEST(SolutionSpec, TransformsApplyInOrder) {
  const BuiltSolution s = build_solution(parse_solution_spec(
      R"({"family": "geo_field", "constants": {"k": 0}, "functions": {"H": "x"},
          "transforms": [{"type": "translate", "b": 1}, {"type": "gauge", "alpha": "1", "beta": "t"}]})"));
  ASSERT_EQ(s.transforms.size(), 2u);
  // H(t, x + 1, y) + t
  EXPECT_DOUBLE_EQ(s.H->value({2.0, 3.0, 5.0, 0.0}), 4.0 + 2.0);
}

TEST(SolutionSpec, ShippedConfigsVerify) {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(source_path("configs"))) {
    if (entry.path().extension() != ".json") continue;
    const BuiltSolution s = build_solution(load_solution_spec(entry.path().string()));
    const ResidualReport r = verify(s);
    EXPECT_TRUE(r.passed) << entry.path() << "\n" << format_report(r);
    EXPECT_GE(r.evaluated, 625u) << entry.path();
    ++n;
  }
  EXPECT_GE(n, 15);
}

TEST(SolutionSpec, SampleOmitsExcludedPoints) {
  const BuiltSolution s = testing_support::load("tests/golden/log_origin.json");
  const SampleTable t = sample(s);
  EXPECT_EQ(t.grid_size, 18u);
  EXPECT_EQ(t.skipped, 2u);
  EXPECT_EQ(t.rows.size(), 16u);
  for (const auto& row : t.rows) EXPECT_FALSE(row[1] == 0.0 && row[2] == 0.0);
}
