#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "possplit/harness.hpp"
#include "support/matrix_oracle.hpp"

using namespace possplit;
using oracle::Mat2;

namespace {

const Mat2 kA0{{-1.0, 0.7, 0.4, -2.0}};
const Mat2 kA1{{0.0, 1.3, -1.1, 0.2}};

BenchmarkProblem<RealVec> matrix_problem() {
  BenchmarkProblem<RealVec> prob;
  prob.id = "matrix";
  prob.flows.flow0 = [](double h, const RealVec& u) { return oracle::expm(h * kA0).apply(u); };
  prob.flows.flow1 = [](double h, const RealVec& u) { return oracle::expm(h * kA1).apply(u); };
  prob.initial = RealVec{1.0, -0.7};
  prob.exact = [](double t) {
    return oracle::expm(t * (kA0 + kA1)).apply(RealVec{1.0, -0.7});
  };
  prob.error_scale = 1.0;
  return prob;
}

Trajectory<RealVec> constant_trajectory(double value, std::size_t steps, double h) {
  Trajectory<RealVec> traj;
  for (std::size_t n = 0; n <= steps; ++n) {
    traj.times.push_back(static_cast<double>(n) * h);
    traj.states.push_back(RealVec{value});
    traj.norms.push_back(std::abs(value));
  }
  return traj;
}

}  // namespace

TEST_CASE("global errors") {
  SECTION("a trajectory equal to the exact solution has zero error") {
    const auto traj = constant_trajectory(2.0, 5, 0.1);
    const auto e = global_errors(traj, [](double) { return RealVec{2.0}; });
    CHECK(e.e_abs == 0.0);
    CHECK(e.e_rel == 0.0);
  }
  SECTION("a single relative bump of 1e-3 is picked up exactly") {
    auto traj = constant_trajectory(2.0, 5, 0.1);
    traj.states[3] = RealVec{2.0 * (1.0 + 1e-3)};
    const auto e = global_errors(traj, [](double) { return RealVec{2.0}; });
    CHECK(e.e_rel == Catch::Approx(1e-3).epsilon(1e-12));
    CHECK(e.e_abs == Catch::Approx(2e-3).epsilon(1e-12));
  }
  SECTION("vanishing exact states are left out of the relative maximum") {
    auto traj = constant_trajectory(1.0, 2, 0.1);
    const auto e = global_errors(traj, [](double t) { return RealVec{t == 0.0 ? 0.0 : 1.0}; });
    CHECK(e.e_abs == 1.0);   // the t = 0 mismatch still counts absolutely
    CHECK(e.e_rel == 0.0);   // but not relatively
  }
  SECTION("errors are monotone under trajectory truncation") {
    const auto prob = matrix_problem();
    const auto method = make_method(solve_symmetric(1), prob.flows);
    auto traj = integrate(method, prob.initial, 0.2, 10);
    const auto full = global_errors(traj, prob.exact);
    while (traj.states.size() > 1) {
      traj.states.pop_back();
      traj.times.pop_back();
      traj.norms.pop_back();
      const auto prefix = global_errors(traj, prob.exact);
      CHECK(prefix.e_abs <= full.e_abs);
      CHECK(prefix.e_rel <= full.e_rel);
    }
  }
}

TEST_CASE("slope fitting") {
  SECTION("an exact power law is recovered to 1e-12") {
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.2, 0.1, 0.05, 0.025, 0.0125}) pts.push_back({h, 3.0 * std::pow(h, 4)});
    const auto fit = fit_order(pts);
    CHECK(fit.slope == Catch::Approx(4.0).margin(1e-12));
    CHECK(fit.points_used == 5);
    CHECK(fit.h_lo == 0.0125);
    CHECK(fit.h_hi == 0.2);
  }
  SECTION("floor-contaminated points are dropped and the slope survives") {
    std::vector<std::pair<double, double>> pts;
    for (double h = 0.2; h > 1e-4; h /= 2) pts.push_back({h, 3.0 * std::pow(h, 4) + 1e-13});
    const auto fit = fit_order(pts);
    CHECK(fit.slope == Catch::Approx(4.0).margin(0.05));
  }
  SECTION("fewer than three usable points is an error") {
    std::vector<std::pair<double, double>> one = {{0.1, 1e-4}};
    CHECK_THROWS_AS(fit_order(one), InsufficientData);
    std::vector<std::pair<double, double>> coarse = {{0.4, 0.5}, {0.2, 0.2}, {0.1, 0.09}};
    CHECK_THROWS_AS(fit_order(coarse), InsufficientData);  // all above the cap
  }
}

TEST_CASE("step-count validation") {
  CHECK(checked_step_count(10.0, 0.1) == 100);
  CHECK(checked_step_count(4.0, 0.025) == 160);
  CHECK_THROWS_AS(checked_step_count(10.0, 0.3), UsageError);
  CHECK_THROWS_AS(checked_step_count(1.0, -0.1), UsageError);
}

TEST_CASE("decay monitor") {
  SECTION("constant norm, rate zero: no violations") {
    const auto traj = constant_trajectory(1.5, 8, 0.25);
    CHECK(decay_monitor(traj, 0.0).empty());
  }
  SECTION("constant norm, rate one: every positive step violates") {
    const auto traj = constant_trajectory(1.5, 8, 0.25);
    const auto violations = decay_monitor(traj, 1.0);
    REQUIRE(violations.size() == 8);
    CHECK(violations.front().step == 1);
    CHECK(violations.back().step == 8);
    CHECK(violations.front().bound < violations.front().norm_value);
  }
  SECTION("empty trajectories are rejected") {
    Trajectory<RealVec> empty;
    CHECK_THROWS_AS(decay_monitor(empty, 1.0), UsageError);
  }
}

TEST_CASE("convergence study on the matrix problem") {
  const auto prob = matrix_problem();
  const std::vector<int> orders = {2, 4};
  const std::vector<double> hs = {0.2, 0.1, 0.05, 0.025};
  const auto reports = convergence_study<RealVec>(prob, Variant::Symmetric, orders, hs, 2.0);
  REQUIRE(reports.size() == 2);
  for (const auto& rep : reports) {
    REQUIRE(rep.rows.size() == hs.size());
    REQUIRE(rep.fit.has_value());
    CHECK(rep.fit->slope == Catch::Approx(rep.order).margin(0.4));
    // halving h shrinks the error
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
      CHECK(rep.rows[i].e_abs < rep.rows[i - 1].e_abs);
  }
  SECTION("study results are independent of run-level parallelism") {
    const auto parallel =
        convergence_study<RealVec>(prob, Variant::Symmetric, orders, hs, 2.0, true);
    for (std::size_t i = 0; i < reports.size(); ++i)
      for (std::size_t j = 0; j < reports[i].rows.size(); ++j) {
        CHECK(parallel[i].rows[j].e_abs == reports[i].rows[j].e_abs);
        CHECK(parallel[i].rows[j].e_rel == reports[i].rows[j].e_rel);
      }
  }
  SECTION("usage errors") {
    const std::vector<int> odd = {3};
    CHECK_THROWS_AS(
        convergence_study<RealVec>(prob, Variant::Symmetric, odd, hs, 2.0),
        UsageError);
    const std::vector<double> bad_h = {0.3};
    CHECK_THROWS_AS(
        convergence_study<RealVec>(prob, Variant::Symmetric, orders, bad_h, 2.0),
        UsageError);
  }
}

TEST_CASE("study outputs") {
  const auto prob = matrix_problem();
  const std::vector<int> orders = {2};
  const std::vector<double> hs = {0.2, 0.1, 0.05};
  const auto reports = convergence_study<RealVec>(prob, Variant::Symmetric, orders, hs, 1.0);

  const std::string csv = study_csv(reports);
  CHECK(csv.rfind("problem,variant,order,h,e_abs,e_rel\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
  CHECK(csv.find("matrix,sym,2,") != std::string::npos);
  CHECK(csv == study_csv(reports));  // deterministic

  const std::string rep = report_csv(reports);
  CHECK(rep.rfind("order,slope,h_lo,h_hi,points\n", 0) == 0);
  CHECK(rep.find("2,") != std::string::npos);

  const std::string plot = study_gnuplot("study.csv", reports);
  CHECK(plot.find("set logscale xy") != std::string::npos);
  CHECK(plot.find("'study.csv'") != std::string::npos);

  SECTION("atomic write round-trips bytes") {
    const auto path = std::filesystem::temp_directory_path() / "possplit_test_study.csv";
    atomic_write(path, csv);
    std::ifstream in(path, std::ios::binary);
    std::string read_back((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    CHECK(read_back == csv);
    CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove(path);
  }
}

TEST_CASE("17-digit formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 123456.789, 1e-300, -0.0125}) {
    const std::string s = fmt17(x);
    CHECK(std::stod(s) == x);
  }
}
