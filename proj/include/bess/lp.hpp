/*
 * lp.hpp
 *
 * Sparse linear programs with bounded variables and the embedded
 * bounded-variable revised simplex solver used for every dispatch window.
 */

#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bess::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, equal, greater_equal };

struct Triplet {
  int row;
  int col;
  double coeff;
};

/// Minimisation LP: min c'x s.t. lower <= x <= upper, rows (A x) rel rhs.
/// Duplicate (row, col) triplets are summed when the problem is solved.
struct SparseLp {
  std::vector<double> lower, upper, objective;
  std::vector<Triplet> entries;
  std::vector<Relation> relation;
  std::vector<double> rhs;

  int n_vars() const { return static_cast<int>(objective.size()); }
  int n_rows() const { return static_cast<int>(rhs.size()); }

  int add_variable(double lo, double hi, double cost);
  int add_row(Relation rel, double rhs_value);
  void add_entry(int row, int col, double coeff);

  /// Row activities A x.
  std::vector<double> row_activity(std::span<const double> x) const;
  double evaluate_objective(std::span<const double> x) const;

  /// Structural problems (bad bounds, non-finite data, column out of range).
  std::vector<std::string> validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(LpStatus status);

/// Column status over the structural variables followed by one logical per row.
enum class VarStatus : unsigned char { basic, at_lower, at_upper, free_zero };

struct Basis {
  std::vector<VarStatus> status;  // n_vars + n_rows entries
  bool empty() const { return status.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  Basis basis;
  int iterations = 0;
  bool warm_started = false;  // the supplied basis was accepted
};

struct SolverOptions {
  double feas_tol = 1e-7;   // relative to max(1, |bound|)
  double opt_tol = 1e-9;    // reduced-cost tolerance
  double pivot_tol = 1e-9;
  int max_iterations = 200000;
  int refactor_interval = 64;
  int degenerate_before_bland = 50;
};

/// Adapter seam: anything that can solve a SparseLp from an optional basis.
class LpSolver {
 public:
  virtual ~LpSolver() = default;
  virtual LpSolution solve(const SparseLp& lp, const Basis* warm_start) = 0;
};

class SimplexSolver final : public LpSolver {
 public:
  explicit SimplexSolver(SolverOptions opts = {}) : opts_(opts) {}
  LpSolution solve(const SparseLp& lp, const Basis* warm_start) override;
  const SolverOptions& options() const { return opts_; }

 private:
  SolverOptions opts_;
};

LpSolution solve_lp(const SparseLp& lp, const SolverOptions& opts = {},
                    const Basis* warm_start = nullptr);

struct Violation {
  enum class Kind { lower_bound, upper_bound, row };
  Kind kind;
  int index;        // variable or row
  double residual;  // amount by which the bound/row is exceeded
};

/// Empty iff x is feasible within tol (absolute). Throws std::invalid_argument
/// when x has the wrong dimension.
std::vector<Violation> check_solution(const SparseLp& lp, std::span<const double> x,
                                      double tol);

/// Fixed-format MPS dump for cross-checking with external solvers.
void write_mps(const SparseLp& lp, std::ostream& out, const std::string& name = "WINDOW");

}  // namespace bess::lp
