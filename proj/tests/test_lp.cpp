#include <gtest/gtest.h>

#include "bess/lp.hpp"
#include "lp_oracle.hpp"

#include <random>
#include <sstream>

using namespace bess;
using lp::LpStatus;
using lp::Relation;

TEST(SolveLp, SingleUpperBoundActive)
{
  // max x s.t. x <= 1, x >= 0 written as min -x.
  lp::SparseLp p;
  p.add_variable(0.0, lp::kInf, -1.0);
  const int r = p.add_row(Relation::less_equal, 1.0);
  p.add_entry(r, 0, 1.0);
  const auto sol = lp::solve_lp(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-12);
  EXPECT_NEAR(sol.objective_value, -1.0, 1e-12);
}

TEST(SolveLp, ContradictoryRowsAreInfeasible)
{
  lp::SparseLp p;
  p.add_variable(-lp::kInf, lp::kInf, 1.0);
  p.add_entry(p.add_row(Relation::greater_equal, 1.0), 0, 1.0);
  p.add_entry(p.add_row(Relation::less_equal, 0.0), 0, 1.0);
  EXPECT_EQ(lp::solve_lp(p).status, LpStatus::infeasible);
}

TEST(SolveLp, UnboundedDirection)
{
  lp::SparseLp p;
  p.add_variable(0.0, lp::kInf, -1.0);
  p.add_variable(0.0, lp::kInf, 0.0);
  const int r = p.add_row(Relation::less_equal, 1.0);
  p.add_entry(r, 0, 1.0);
  p.add_entry(r, 1, -1.0);
  EXPECT_EQ(lp::solve_lp(p).status, LpStatus::unbounded);
}

TEST(SolveLp, FreeVariablesAndEqualities)
{
  // min x + y s.t. x - y = 2, x + 2y >= 1, x,y free -> y = -1/3, x = 5/3.
  lp::SparseLp p;
  p.add_variable(-lp::kInf, lp::kInf, 1.0);
  p.add_variable(-lp::kInf, lp::kInf, 1.0);
  const int r0 = p.add_row(Relation::equal, 2.0);
  p.add_entry(r0, 0, 1.0);
  p.add_entry(r0, 1, -1.0);
  const int r1 = p.add_row(Relation::greater_equal, 1.0);
  p.add_entry(r1, 0, 1.0);
  p.add_entry(r1, 1, 2.0);
  const auto sol = lp::solve_lp(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.x[0], 5.0 / 3.0, 1e-10);
  EXPECT_NEAR(sol.x[1], -1.0 / 3.0, 1e-10);
}

TEST(SolveLp, DuplicateEntriesAreSummed)
{
  lp::SparseLp p;
  p.add_variable(0.0, lp::kInf, -1.0);
  const int r = p.add_row(Relation::less_equal, 3.0);
  p.add_entry(r, 0, 1.0);
  p.add_entry(r, 0, 2.0);
  const auto sol = lp::solve_lp(p);
  ASSERT_EQ(sol.status, LpStatus::optimal);
  EXPECT_NEAR(sol.x[0], 1.0, 1e-12);
}

TEST(SolveLp, IterationLimitReturnsIterate)
{
  std::mt19937_64 rng(3);
  auto p = oracle::random_bounded_lp(rng, 6, 10, false);
  lp::SolverOptions opts;
  opts.max_iterations = 1;
  const auto sol = lp::solve_lp(p, opts);
  if (sol.status == LpStatus::iteration_limit) EXPECT_EQ(sol.x.size(), 6u);
}

TEST(SolveLp, RejectsMalformedProblem)
{
  lp::SparseLp p;
  p.add_variable(1.0, 0.0, 0.0);
  EXPECT_THROW(lp::solve_lp(p), std::invalid_argument);
}

TEST(SolveLp, MatchesVertexEnumerationOnRandomInstances)
{
  std::mt19937_64 rng(20240611);
  for (int k = 0; k < 60; ++k) {
    auto p = oracle::random_bounded_lp(rng, 5, 8, k % 4 == 0);
    const auto expected = oracle::vertex_enumeration_optimum(p);
    ASSERT_TRUE(expected.has_value()) << "instance " << k;
    const auto sol = lp::solve_lp(p);
    ASSERT_EQ(sol.status, LpStatus::optimal) << "instance " << k;
    EXPECT_NEAR(sol.objective_value, *expected, 1e-6 * std::max(1.0, std::abs(*expected))) << "instance " << k;
    EXPECT_TRUE(lp::check_solution(p, sol.x, 1e-7).empty()) << "instance " << k;
  }
}

TEST(SolveLp, FeasiblePerturbationsNeverImprove)
{
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd(0.0, 0.05);
  for (int k = 0; k < 20; ++k) {
    auto p = oracle::random_bounded_lp(rng, 6, 10, false);
    const auto sol = lp::solve_lp(p);
    ASSERT_EQ(sol.status, LpStatus::optimal);
    int tried = 0;
    for (int s = 0; s < 200 && tried < 40; ++s) {
      auto x = sol.x;
      for (auto& v : x)
        v += nd(rng);
      if (!lp::check_solution(p, x, 0.0).empty()) continue;
      ++tried;
      EXPECT_GE(p.evaluate_objective(x), sol.objective_value - 1e-9);
    }
  }
}

TEST(SolveLp, ObjectiveScalingKeepsArgmin)
{
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto p = oracle::random_bounded_lp(rng, 6, 9, k % 3 == 0);
    const auto base = lp::solve_lp(p);
    ASSERT_EQ(base.status, LpStatus::optimal);
    for (double s : {0.01, 3.0, 250.0}) {
      auto q = p;
      for (auto& c : q.objective)
        c *= s;
      const auto scaled = lp::solve_lp(q);
      ASSERT_EQ(scaled.status, LpStatus::optimal);
      EXPECT_NEAR(scaled.objective_value, s * base.objective_value,
                  1e-8 * std::max(1.0, std::abs(s * base.objective_value)));
      for (int j = 0; j < p.n_vars(); ++j)
        EXPECT_NEAR(scaled.x[j], base.x[j], 1e-6);
    }
  }
}

TEST(SolveLp, DeterministicIterates)
{
  std::mt19937_64 rng(99);
  auto p = oracle::random_bounded_lp(rng, 6, 10, true);
  const auto a = lp::solve_lp(p);
  const auto b = lp::solve_lp(p);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.objective_value, b.objective_value);
}

TEST(SolveLp, WarmStartFromOptimalBasisNeedsNoPivots)
{
  std::mt19937_64 rng(17);
  auto p = oracle::random_bounded_lp(rng, 6, 10, false);
  const auto cold = lp::solve_lp(p);
  ASSERT_EQ(cold.status, LpStatus::optimal);
  const auto warm = lp::solve_lp(p, {}, &cold.basis);
  ASSERT_EQ(warm.status, LpStatus::optimal);
  EXPECT_TRUE(warm.warm_started);
  EXPECT_EQ(warm.iterations, 0);
  EXPECT_NEAR(warm.objective_value, cold.objective_value, 1e-12);
}

TEST(SolveLp, BadWarmStartFallsBackToCrash)
{
  std::mt19937_64 rng(23);
  auto p = oracle::random_bounded_lp(rng, 4, 6, false);
  lp::Basis bogus;
  bogus.status.assign(p.n_vars() + p.n_rows(), lp::VarStatus::basic);
  const auto sol = lp::solve_lp(p, {}, &bogus);
  EXPECT_EQ(sol.status, LpStatus::optimal);
  EXPECT_FALSE(sol.warm_started);
}

TEST(CheckSolution, FeasiblePointHasEmptyReport)
{
  lp::SparseLp p;
  p.add_variable(0.0, 2.0, 0.0);
  p.add_entry(p.add_row(Relation::less_equal, 1.5), 0, 1.0);
  const std::vector<double> x{1.0};
  EXPECT_TRUE(lp::check_solution(p, x, 1e-7).empty());
}

TEST(CheckSolution, ReportsBoundExcess)
{
  lp::SparseLp p;
  p.add_variable(0.0, 2.0, 0.0);
  const std::vector<double> x{2.001};
  const auto report = lp::check_solution(p, x, 1e-7);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, lp::Violation::Kind::upper_bound);
  EXPECT_NEAR(report[0].residual, 1e-3, 1e-12);
}

TEST(CheckSolution, DimensionMismatchThrows)
{
  lp::SparseLp p;
  p.add_variable(0.0, 1.0, 0.0);
  const std::vector<double> x{0.0, 0.0};
  EXPECT_THROW(lp::check_solution(p, x, 1e-7), std::invalid_argument);
}

TEST(WriteMps, FixedFormatLayout)
{
  lp::SparseLp p;
  p.add_variable(0.0, 4.0, -1.0);
  p.add_variable(-lp::kInf, lp::kInf, 0.5);
  const int r = p.add_row(Relation::less_equal, 3.0);
  p.add_entry(r, 0, 1.0);
  p.add_entry(r, 1, 2.0);
  std::ostringstream os;
  lp::write_mps(p, os, "TINY");
  const std::string expected =
      "NAME          TINY\n"
      "ROWS\n"
      " N  COST\n"
      " L  R0000000\n"
      "COLUMNS\n"
      "    X0000000  COST                -1\n"
      "    X0000000  R0000000             1\n"
      "    X0000001  COST               0.5\n"
      "    X0000001  R0000000             2\n"
      "RHS\n"
      "    RHS       R0000000             3\n"
      "BOUNDS\n"
      " UP BND       X0000000             4\n"
      " FR BND       X0000001              \n"
      "ENDATA\n";
  EXPECT_EQ(os.str(), expected);
}
