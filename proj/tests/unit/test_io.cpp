#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "doctest.h"
#include "pmu/config.hpp"
#include "pmu/csv.hpp"
#include "pmu/error.hpp"
#include "pmu/report.hpp"
#include "support.hpp"

using namespace pmu;

namespace {

FormatIssue issue_of(auto&& fn) {
  try {
    fn();
  } catch (const FormatError& e) {
    return e.issue();
  }
  FAIL("expected a format error");
  return FormatIssue::kRaggedRows;
}

}  // namespace

TEST_CASE("dense CSV") {
  CHECK(parse_dense_csv("1,2\n3,4") == DenseMatrix{{1, 2}, {3, 4}});
  CHECK(parse_dense_csv("1, 2\r\n 3 ,4\n\n") == DenseMatrix{{1, 2}, {3, 4}});
  CHECK(parse_dense_csv("-1.5e3,0\n") == DenseMatrix{{-1500, 0}});

  CHECK(issue_of([] { parse_dense_csv("1,2\n3"); }) == FormatIssue::kRaggedRows);
  CHECK(issue_of([] { parse_dense_csv("1,x\n3,4"); }) == FormatIssue::kNonNumeric);
  CHECK(issue_of([] { parse_dense_csv("1,inf"); }) == FormatIssue::kNonNumeric);
  CHECK(issue_of([] { parse_dense_csv("1,\n3,4"); }) == FormatIssue::kMissingValue);
  CHECK(issue_of([] { parse_dense_csv(""); }) == FormatIssue::kRaggedRows);

  try {
    parse_dense_csv("1,2\n3,abc", "data.csv");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("data.csv:2:2") != std::string::npos);
  }
}

TEST_CASE("observed CSV with blanks and NaN") {
  const ObservedMatrix o = parse_observed_csv("1,\n3,4", MissingPolicy::kEmptyOrNaN);
  CHECK(o.mask() == MaskMatrix{{1, 0}, {1, 1}});
  CHECK(o.values() == DenseMatrix{{1, 0}, {3, 4}});

  const ObservedMatrix n = parse_observed_csv("NaN,2\n0,4", MissingPolicy::kEmptyOrNaN);
  CHECK(n.mask() == MaskMatrix{{0, 1}, {1, 1}});
  // A literal zero is a measurement.
  CHECK(n.mask().observed(1, 0));

  CHECK(issue_of([] { parse_observed_csv("1,\n3,4", MissingPolicy::kNone); }) ==
        FormatIssue::kMissingValue);
}

TEST_CASE("sidecar mask") {
  const MaskMatrix ones(2, 2, 1);
  const ObservedMatrix plain = parse_observed_csv("1,2\n3,4", MissingPolicy::kNone);
  CHECK(parse_observed_csv("1,2\n3,4", MissingPolicy::kNone, &ones) == plain);

  const MaskMatrix mask{{1, 0}, {0, 1}};
  const ObservedMatrix o = parse_observed_csv("1,99\n,4", MissingPolicy::kNone, &mask);
  CHECK(o.values() == DenseMatrix{{1, 0}, {0, 4}});
  CHECK(o.mask() == mask);

  CHECK(issue_of([&] { parse_observed_csv("1,2,3\n3,4,5", MissingPolicy::kNone, &mask); }) ==
        FormatIssue::kMaskShapeMismatch);
  CHECK(issue_of([&] { parse_observed_csv(",2\n3,4", MissingPolicy::kEmptyOrNaN, &mask); }) ==
        FormatIssue::kMissingValue);

  CHECK(parse_mask_csv("1,0\n0,1") == mask);
  CHECK(issue_of([] { parse_mask_csv("1,2\n0,1"); }) == FormatIssue::kMaskValue);
  CHECK(issue_of([] { parse_mask_csv("1,0.5"); }) == FormatIssue::kMaskValue);
  CHECK(issue_of([] { parse_mask_csv("1,0\n1"); }) == FormatIssue::kRaggedRows);
}

TEST_CASE("files") {
  testing::TempDir dir;
  const auto x = testing::random_matrix(13, 7, 3, -1e6, 1e6);
  write_matrix_csv(x, dir / "x.csv");
  CHECK(read_dense_csv(dir / "x.csv") == x);

  const auto m = testing::random_mask(13, 7, 0.5, 4);
  write_mask_csv(m, dir / "m.csv");
  CHECK(read_mask_csv(dir / "m.csv") == m);

  const ObservedMatrix o = read_observed_csv(dir / "x.csv", MissingPolicy::kNone, dir / "m.csv");
  CHECK(o == ObservedMatrix(x, m));

  CHECK_THROWS_AS(read_dense_csv(dir / "absent.csv"), IoError);
  CHECK_THROWS_AS(write_matrix_csv(x, dir / "no" / "such" / "dir.csv"), IoError);
  try {
    read_dense_csv(dir / "absent.csv");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("absent.csv") != std::string::npos);
  }
}

TEST_CASE("number formatting round-trips every finite double") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 100000; ++i) {
    std::uint64_t bits = gen();
    double v;
    std::memcpy(&v, &bits, sizeof v);
    if (!std::isfinite(v)) continue;
    const DenseMatrix back = parse_dense_csv(format_number(v));
    CHECK(std::memcmp(back.eigen().data(), &v, sizeof v) == 0);
  }
  for (double v : {0.0, -0.0, 1.0, 0.1, 1e-300, 5e-324, std::numeric_limits<double>::max(),
                   -std::numeric_limits<double>::min()}) {
    const DenseMatrix back = parse_dense_csv(format_number(v));
    CHECK(std::memcmp(back.eigen().data(), &v, sizeof v) == 0);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_csv(DenseMatrix{{1, 2.5}, {-3, 0}}) == "1,2.5\n-3,0\n");
  CHECK(format_csv(MaskMatrix{{1, 0}}) == "1,0\n");
}

TEST_CASE("key=value configuration") {
  const KeyValues kv = parse_key_values("# comment\nrows = 300\n\ncols=20 # trailing\nevent=off\n");
  CHECK(kv.at("rows") == "300");
  CHECK(kv.at("cols") == "20");
  CHECK_THROWS_AS(parse_key_values("rows 300"), ParameterError);
  CHECK_THROWS_AS(parse_key_values("=3"), ParameterError);

  const ScenarioSpec s = scenario_from(kv);
  CHECK(s.rows == 300);
  CHECK(s.cols == 20);
  CHECK(!s.event);
  CHECK(s.noise_var == 0.001);

  const ScenarioSpec roundtrip = scenario_from(to_key_values(ScenarioSpec{}));
  CHECK(roundtrip.rows == 1800);
  CHECK(roundtrip.event);
  CHECK(roundtrip.event->onset == 4);
  CHECK(generate_synthetic(roundtrip) == generate_synthetic(ScenarioSpec{}));

  CHECK_THROWS_AS(scenario_from({{"rows", "abc"}}), ParameterError);
  CHECK_THROWS_AS(scenario_from({{"noise_var", "-1"}}), ParameterError);
  CHECK_THROWS_AS(require_known_keys({{"rhoo", "1"}}), ParameterError);

  const MethodSettings m = settings_from(
      {{"rho", "0.01"}, {"eps", "1e-6"}, {"als_rank", "5"}, {"reshape", "n=4"}, {"init_seed", "9"}});
  CHECK(m.admm.rho == 0.01);
  CHECK(*m.admm.eps == 1e-6);
  CHECK(m.als.rank == 5);
  CHECK(m.reshape.n_star == 4);
  CHECK(m.admm.init_seed == 9);
  CHECK(m.als.init_seed == 9);
  CHECK(!settings_from({{"eps", "auto"}}).admm.eps);
  CHECK_THROWS_AS(settings_from({{"rho", "-1"}}), ParameterError);
  CHECK_THROWS_AS(settings_from({{"clamp", "maybe"}}), ParameterError);

  const BenchmarkGrid g = grid_from({{"probabilities", "0.5,0.7"},
                                     {"methods", "als,persistent"},
                                     {"trials", "7"},
                                     {"regime", "burst"},
                                     {"burst_channels", "1-3,7"},
                                     {"burst_start", "5"},
                                     {"burst_end", "9"}});
  CHECK(g.probabilities == std::vector<double>{0.5, 0.7});
  CHECK(g.methods == std::vector<Method>{Method::kAls, Method::kPersistent});
  CHECK(g.trials == 7);
  CHECK(g.regime == MaskRegime::kBurst);
  CHECK(g.burst.channels == std::vector<Index>{1, 2, 3, 7});
  CHECK(g.burst.t_start == 5);
  CHECK_THROWS_AS(grid_from({{"trials", "0"}}), ParameterError);
  CHECK_THROWS_AS(grid_from({{"bogus", "1"}}), ParameterError);
  CHECK_THROWS_AS(parse_index_list("5-3", "x"), ParameterError);
}

TEST_CASE("run report") {
  RunReport r;
  r.method = "admm";
  r.config = {{"rho", "0.00075"}, {"reshape", "auto"}};
  r.converged = true;
  r.iterations = 97;
  r.final_residual = 0.0123;
  r.elapsed_ms = 812.5;

  const std::string text = format_report(r);
  CHECK(text.starts_with("schema_version=1\n"));
  CHECK(text.find("iterations=97\n") != std::string::npos);
  CHECK(text.find("elapsed_ms=812.5\n") != std::string::npos);
  CHECK(text.find("mae=") == std::string::npos);
  CHECK(text.find("reshape_n_star") == std::string::npos);

  r.mae = 0.025;
  r.plan = ReshapePlan{1800, 86, 20, 90};
  const RunReport back = parse_report(format_report(r));
  CHECK(back.method == "admm");
  CHECK(back.converged);
  CHECK(back.iterations == 97);
  CHECK(back.final_residual == 0.0123);
  CHECK(back.elapsed_ms == 812.5);
  REQUIRE(back.mae);
  CHECK(*back.mae == 0.025);
  REQUIRE(back.plan);
  CHECK(*back.plan == ReshapePlan{1800, 86, 20, 90});
  CHECK(back.config.size() == 2);

  CHECK_THROWS_AS(parse_report("schema_version=2\nmethod=admm\n"), ParameterError);
  CHECK_THROWS_AS(parse_report("schema_version=1\n"), ParameterError);

  testing::TempDir dir;
  write_report(r, dir / "run.txt");
  CHECK(read_text_file(dir / "run.txt") == format_report(r));
}
