/*
 * lp.cpp
 *
 * Bounded-variable revised simplex. Every row r gets a logical column s_r with
 * A x - s = 0, so the whole problem becomes "[A -I] z = 0, l <= z <= u" and the
 * row relations live in the bounds of s. The basis is held as a sparse LU
 * (Eigen SparseLU) plus a product-form eta file that is flushed on refactor.
 *
 * Phase 1 minimises the sum of bound violations of the basic variables, so any
 * starting basis (crash or warm) is acceptable as long as it is nonsingular.
 */

#include "bess/lp.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace bess::lp {

int SparseLp::add_variable(double lo, double hi, double cost)
{
  lower.push_back(lo);
  upper.push_back(hi);
  objective.push_back(cost);
  return n_vars() - 1;
}

int SparseLp::add_row(Relation rel, double rhs_value)
{
  relation.push_back(rel);
  rhs.push_back(rhs_value);
  return n_rows() - 1;
}

void SparseLp::add_entry(int row, int col, double coeff)
{
  entries.push_back({row, col, coeff});
}

std::vector<double> SparseLp::row_activity(std::span<const double> x) const
{
  std::vector<double> act(rhs.size(), 0.0);
  for (const auto& e : entries)
    act[e.row] += e.coeff * x[e.col];
  return act;
}

double SparseLp::evaluate_objective(std::span<const double> x) const
{
  double obj = 0.0;
  for (std::size_t j = 0; j < objective.size(); ++j)
    obj += objective[j] * x[j];
  return obj;
}

std::vector<std::string> SparseLp::validate() const
{
  std::vector<std::string> issues;
  const auto n = objective.size();
  if (lower.size() != n || upper.size() != n)
    issues.push_back("bound vectors do not match the number of variables");
  if (relation.size() != rhs.size())
    issues.push_back("relation and rhs vectors differ in length");
  for (std::size_t j = 0; j < std::min({n, lower.size(), upper.size()}); ++j) {
    if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
      issues.push_back("variable " + std::to_string(j) + " has lower > upper");
    if (lower[j] == kInf || upper[j] == -kInf)
      issues.push_back("variable " + std::to_string(j) + " has an infinite bound on the wrong side");
    if (!std::isfinite(objective[j]))
      issues.push_back("variable " + std::to_string(j) + " has a non-finite cost");
  }
  for (std::size_t i = 0; i < rhs.size(); ++i)
    if (!std::isfinite(rhs[i]))
      issues.push_back("row " + std::to_string(i) + " has a non-finite rhs");
  for (const auto& e : entries) {
    if (e.col < 0 || e.col >= n_vars() || e.row < 0 || e.row >= n_rows())
      issues.push_back("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                       ") out of range");
    else if (!std::isfinite(e.coeff))
      issues.push_back("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                       ") is not finite");
  }
  return issues;
}

std::string to_string(LpStatus status)
{
  switch (status) {
  case LpStatus::optimal: return "optimal";
  case LpStatus::infeasible: return "infeasible";
  case LpStatus::unbounded: return "unbounded";
  case LpStatus::iteration_limit: return "iteration-limit";
  }
  return "unknown";
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct Eta {
  int row;
  double pivot;
  std::vector<std::pair<int, double>> others;  // alpha_i for i != row
};

class Simplex {
public:
  Simplex(const SparseLp& lp, const SolverOptions& opts);
  LpSolution run(const Basis* warm);

private:
  enum class Bound { lower, upper };

  double tol_at(double bound) const { return opts_.feas_tol * std::max(1.0, std::abs(bound)); }
  bool is_logical(int j) const { return j >= n_; }

  template <class F>
  void for_column(int j, F&& f) const
  {
    if (j < n_) {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k)
        f(col_row_[k], col_val_[k]);
    }
    else {
      f(j - n_, -1.0);
    }
  }

  void crash_basis();
  bool install_basis(const Basis& basis);
  void place_nonbasic(int j, VarStatus hint);
  bool factorize();
  bool refresh();  // factorize + recompute basics
  void compute_basics();
  void ftran(Vec& v) const;
  void btran(Vec& v);
  int price(const Vec& y, bool bland, bool phase1, double& d_out) const;

  const SparseLp& lp_;
  SolverOptions opts_;
  int m_ = 0, n_ = 0;
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> lb_, ub_, cost_, x_;
  std::vector<VarStatus> st_;
  std::vector<int> head_, pos_;
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

Simplex::Simplex(const SparseLp& lp, const SolverOptions& opts) : lp_(lp), opts_(opts)
{
  n_ = lp.n_vars();
  m_ = lp.n_rows();

  // CSC of A with duplicates summed.
  std::vector<Triplet> sorted = lp.entries;
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  col_start_.assign(n_ + 1, 0);
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const auto& e = sorted[k];
    if (!col_row_.empty() && k > 0 && sorted[k - 1].col == e.col && sorted[k - 1].row == e.row) {
      col_val_.back() += e.coeff;
      continue;
    }
    col_row_.push_back(e.row);
    col_val_.push_back(e.coeff);
    col_start_[e.col + 1]++;
  }
  for (int j = 0; j < n_; ++j)
    col_start_[j + 1] += col_start_[j];

  const int total = n_ + m_;
  lb_.resize(total);
  ub_.resize(total);
  cost_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    lb_[j] = lp.lower[j];
    ub_[j] = lp.upper[j];
    cost_[j] = lp.objective[j];
  }
  for (int i = 0; i < m_; ++i) {
    const double b = lp.rhs[i];
    switch (lp.relation[i]) {
    case Relation::less_equal: lb_[n_ + i] = -kInf; ub_[n_ + i] = b; break;
    case Relation::greater_equal: lb_[n_ + i] = b; ub_[n_ + i] = kInf; break;
    case Relation::equal: lb_[n_ + i] = b; ub_[n_ + i] = b; break;
    }
  }
  x_.assign(total, 0.0);
  st_.assign(total, VarStatus::at_lower);
  head_.assign(m_, -1);
  pos_.assign(total, -1);
}

void Simplex::place_nonbasic(int j, VarStatus hint)
{
  const bool lo_ok = std::isfinite(lb_[j]);
  const bool hi_ok = std::isfinite(ub_[j]);
  VarStatus s = hint;
  if (s == VarStatus::at_lower && !lo_ok) s = hi_ok ? VarStatus::at_upper : VarStatus::free_zero;
  if (s == VarStatus::at_upper && !hi_ok) s = lo_ok ? VarStatus::at_lower : VarStatus::free_zero;
  if (s == VarStatus::free_zero && (lo_ok || hi_ok)) s = lo_ok ? VarStatus::at_lower : VarStatus::at_upper;
  st_[j] = s;
  pos_[j] = -1;
  x_[j] = s == VarStatus::at_lower ? lb_[j] : s == VarStatus::at_upper ? ub_[j] : 0.0;
}

void Simplex::crash_basis()
{
  for (int j = 0; j < n_; ++j)
    place_nonbasic(j, VarStatus::at_lower);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
    st_[n_ + i] = VarStatus::basic;
  }
}

bool Simplex::install_basis(const Basis& basis)
{
  if (static_cast<int>(basis.status.size()) != n_ + m_) return false;
  int count = 0;
  for (auto s : basis.status)
    count += s == VarStatus::basic;
  if (count != m_) return false;
  int r = 0;
  for (int j = 0; j < n_ + m_; ++j) {
    if (basis.status[j] == VarStatus::basic) {
      st_[j] = VarStatus::basic;
      head_[r] = j;
      pos_[j] = r++;
    }
    else {
      place_nonbasic(j, basis.status[j]);
    }
  }
  return true;
}

bool Simplex::factorize()
{
  etas_.clear();
  if (m_ == 0) return true;
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(m_) * 3);
  for (int r = 0; r < m_; ++r)
    for_column(head_[r], [&](int row, double v) { trips.emplace_back(row, r, v); });
  SpMat B(m_, m_);
  B.setFromTriplets(trips.begin(), trips.end());
  B.makeCompressed();
  lu_.analyzePattern(B);
  lu_.factorize(B);
  if (lu_.info() != Eigen::Success) return false;

  // Reject numerically singular bases: solve against a known vector.
  Vec probe = Vec::Ones(m_);
  Vec rhs = B * probe;
  Vec sol = lu_.solve(rhs);
  if (!sol.allFinite() || (sol - probe).lpNorm<Eigen::Infinity>() > 1e-6) return false;
  return true;
}

void Simplex::compute_basics()
{
  if (m_ == 0) return;
  Vec rhs = Vec::Zero(m_);
  for (int j = 0; j < n_ + m_; ++j) {
    if (st_[j] == VarStatus::basic || x_[j] == 0.0) continue;
    const double xj = x_[j];
    for_column(j, [&](int row, double v) { rhs[row] -= v * xj; });
  }
  ftran(rhs);
  for (int r = 0; r < m_; ++r)
    x_[head_[r]] = rhs[r];
}

bool Simplex::refresh()
{
  if (!factorize()) return false;
  compute_basics();
  return true;
}

void Simplex::ftran(Vec& v) const
{
  v = lu_.solve(v).eval();
  for (const auto& eta : etas_) {
    const double vr = v[eta.row] / eta.pivot;
    v[eta.row] = vr;
    if (vr == 0.0) continue;
    for (const auto& [i, a] : eta.others)
      v[i] -= a * vr;
  }
}

void Simplex::btran(Vec& v)
{
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = v[it->row];
    for (const auto& [i, a] : it->others)
      s -= a * v[i];
    v[it->row] = s / it->pivot;
  }
  v = lu_.transpose().solve(v).eval();
}

int Simplex::price(const Vec& y, bool bland, bool phase1, double& d_out) const
{
  int best = -1;
  double best_score = 0.0;
  for (int j = 0; j < n_ + m_; ++j) {
    const VarStatus s = st_[j];
    if (s == VarStatus::basic) continue;
    if (lb_[j] == ub_[j]) continue;
    // Phase-1 costs are zero on nonbasic columns.
    double d = phase1 ? 0.0 : cost_[j];
    for_column(j, [&](int row, double v) { d -= y[row] * v; });
    bool eligible = false;
    switch (s) {
    case VarStatus::at_lower: eligible = d < -opts_.opt_tol; break;
    case VarStatus::at_upper: eligible = d > opts_.opt_tol; break;
    case VarStatus::free_zero: eligible = std::abs(d) > opts_.opt_tol; break;
    case VarStatus::basic: break;
    }
    if (!eligible) continue;
    if (bland) {
      d_out = d;
      return j;
    }
    if (std::abs(d) > best_score) {
      best_score = std::abs(d);
      best = j;
      d_out = d;
    }
  }
  return best;
}

LpSolution Simplex::run(const Basis* warm)
{
  LpSolution sol;

  bool warm_ok = warm != nullptr && install_basis(*warm) && refresh();
  if (!warm_ok) {
    crash_basis();
    if (!refresh()) throw std::runtime_error("simplex: logical basis failed to factorize");
  }
  sol.warm_started = warm_ok;

  bool fresh = true;
  bool bland = false;
  int degenerate_run = 0;
  int recoveries = 0;
  int iter = 0;
  Vec cb(m_), y(m_), alpha(m_);

  auto recover = [&]() {
    // Numerical trouble: restart from the logical basis, keeping iteration count.
    ++recoveries;
    crash_basis();
    if (!refresh()) throw std::runtime_error("simplex: logical basis failed to factorize");
    fresh = true;
  };

  sol.status = LpStatus::iteration_limit;
  for (; iter < opts_.max_iterations; ++iter) {
    if (static_cast<int>(etas_.size()) >= opts_.refactor_interval) {
      if (!refresh()) {
        if (recoveries > 3) break;
        recover();
      }
      fresh = true;
    }

    // Phase selection from the current basic values.
    bool phase1 = false;
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      double c = 0.0;
      if (x_[j] < lb_[j] - tol_at(lb_[j])) c = -1.0;
      else if (x_[j] > ub_[j] + tol_at(ub_[j])) c = 1.0;
      if (c != 0.0) phase1 = true;
      cb[r] = c;
    }
    if (!phase1)
      for (int r = 0; r < m_; ++r)
        cb[r] = cost_[head_[r]];
    y = cb;
    if (m_ > 0) btran(y);

    double dq = 0.0;
    const int q = price(y, bland, phase1, dq);

    if (q < 0) {
      if (!fresh) {
        if (!refresh()) {
          if (recoveries > 3) break;
          recover();
        }
        fresh = true;
        continue;
      }
      sol.status = phase1 ? LpStatus::infeasible : LpStatus::optimal;
      break;
    }

    const double dir = dq < 0.0 ? 1.0 : -1.0;
    alpha.setZero();
    for_column(q, [&](int row, double v) { alpha[row] = v; });
    if (m_ > 0) ftran(alpha);

    // Ratio test. Harris two-pass unless Bland mode is active.
    double theta = kInf;
    int leave = -1;
    Bound leave_bound = Bound::lower;
    const bool has_flip = std::isfinite(lb_[q]) && std::isfinite(ub_[q]);
    const double flip_len = has_flip ? ub_[q] - lb_[q] : kInf;

    auto limit = [&](int r, bool relaxed, double& t, Bound& b) -> bool {
      const double a = alpha[r];
      if (std::abs(a) < opts_.pivot_tol) return false;
      const int j = head_[r];
      const double rate = -dir * a;  // d x_j / d theta
      const double xj = x_[j];
      if (rate < 0.0) {
        double target;
        if (xj > ub_[j] + tol_at(ub_[j])) { target = ub_[j]; b = Bound::upper; }
        else if (xj >= lb_[j] - tol_at(lb_[j]) && std::isfinite(lb_[j])) { target = lb_[j]; b = Bound::lower; }
        else return false;
        if (relaxed) target -= tol_at(target);
        t = (xj - target) / -rate;
      }
      else {
        double target;
        if (xj < lb_[j] - tol_at(lb_[j])) { target = lb_[j]; b = Bound::lower; }
        else if (xj <= ub_[j] + tol_at(ub_[j]) && std::isfinite(ub_[j])) { target = ub_[j]; b = Bound::upper; }
        else return false;
        if (relaxed) target += tol_at(target);
        t = (target - xj) / rate;
      }
      t = std::max(t, 0.0);
      return true;
    };

    if (bland) {
      for (int r = 0; r < m_; ++r) {
        double t;
        Bound b;
        if (!limit(r, false, t, b)) continue;
        if (t < theta || (t == theta && leave >= 0 && head_[r] < head_[leave])) {
          theta = t;
          leave = r;
          leave_bound = b;
        }
      }
    }
    else {
      double theta_relaxed = kInf;
      for (int r = 0; r < m_; ++r) {
        double t;
        Bound b;
        if (limit(r, true, t, b)) theta_relaxed = std::min(theta_relaxed, t);
      }
      double best_pivot = 0.0;
      if (std::isfinite(theta_relaxed)) {
        for (int r = 0; r < m_; ++r) {
          double t;
          Bound b;
          if (!limit(r, false, t, b) || t > theta_relaxed) continue;
          if (std::abs(alpha[r]) > best_pivot) {
            best_pivot = std::abs(alpha[r]);
            theta = t;
            leave = r;
            leave_bound = b;
          }
        }
      }
    }

    if (flip_len <= theta) {
      theta = flip_len;
      leave = -1;
    }
    if (!std::isfinite(theta)) {
      if (phase1) {
        // Cannot happen in exact arithmetic; treat as numerical drift.
        if (recoveries > 3) break;
        recover();
        continue;
      }
      sol.status = LpStatus::unbounded;
      break;
    }

    // Apply the step.
    if (theta != 0.0) {
      x_[q] += dir * theta;
      for (int r = 0; r < m_; ++r)
        if (alpha[r] != 0.0) x_[head_[r]] -= dir * theta * alpha[r];
    }
    fresh = false;
    if (theta <= 1e-12) {
      if (++degenerate_run > opts_.degenerate_before_bland) bland = true;
    }
    else {
      degenerate_run = 0;
      bland = false;
    }

    if (leave < 0) {
      const bool to_upper = dir > 0.0;
      st_[q] = to_upper ? VarStatus::at_upper : VarStatus::at_lower;
      x_[q] = to_upper ? ub_[q] : lb_[q];
      continue;
    }

    const int j_out = head_[leave];
    const bool fixed = lb_[j_out] == ub_[j_out];
    if (leave_bound == Bound::lower || fixed) {
      st_[j_out] = VarStatus::at_lower;
      x_[j_out] = lb_[j_out];
    }
    else {
      st_[j_out] = VarStatus::at_upper;
      x_[j_out] = ub_[j_out];
    }
    pos_[j_out] = -1;
    head_[leave] = q;
    pos_[q] = leave;
    st_[q] = VarStatus::basic;

    Eta eta{leave, alpha[leave], {}};
    for (int r = 0; r < m_; ++r)
      if (r != leave && std::abs(alpha[r]) > 1e-14) eta.others.emplace_back(r, alpha[r]);
    etas_.push_back(std::move(eta));
  }

  sol.iterations = iter;
  sol.x.assign(x_.begin(), x_.begin() + n_);
  sol.objective_value = lp_.evaluate_objective(sol.x);
  sol.basis.status = st_;
  return sol;
}

}  // namespace

LpSolution SimplexSolver::solve(const SparseLp& lp, const Basis* warm_start)
{
  if (auto issues = lp.validate(); !issues.empty())
    throw std::invalid_argument("invalid LP: " + issues.front());
  Simplex simplex(lp, opts_);
  return simplex.run(warm_start);
}

LpSolution solve_lp(const SparseLp& lp, const SolverOptions& opts, const Basis* warm_start)
{
  SimplexSolver solver(opts);
  return solver.solve(lp, warm_start);
}

std::vector<Violation> check_solution(const SparseLp& lp, std::span<const double> x, double tol)
{
  if (static_cast<int>(x.size()) != lp.n_vars())
    throw std::invalid_argument("check_solution: x has " + std::to_string(x.size()) +
                                " entries, LP has " + std::to_string(lp.n_vars()) + " variables");
  std::vector<Violation> out;
  for (int j = 0; j < lp.n_vars(); ++j) {
    if (x[j] < lp.lower[j] - tol) out.push_back({Violation::Kind::lower_bound, j, lp.lower[j] - x[j]});
    if (x[j] > lp.upper[j] + tol) out.push_back({Violation::Kind::upper_bound, j, x[j] - lp.upper[j]});
  }
  const auto act = lp.row_activity(x);
  for (int i = 0; i < lp.n_rows(); ++i) {
    double excess = 0.0;
    switch (lp.relation[i]) {
    case Relation::less_equal: excess = act[i] - lp.rhs[i]; break;
    case Relation::greater_equal: excess = lp.rhs[i] - act[i]; break;
    case Relation::equal: excess = std::abs(act[i] - lp.rhs[i]); break;
    }
    if (excess > tol) out.push_back({Violation::Kind::row, i, excess});
  }
  return out;
}

namespace {

std::string mps_number(double v)
{
  char buf[32];
  for (int prec = 12; prec > 0; --prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::string(buf).size() <= 12) return buf;
  }
  return buf;
}

std::string mps_name(char prefix, int index)
{
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%07d", prefix, index);
  return buf;
}

void mps_line(std::ostream& out, const std::string& f1, const std::string& f2, const std::string& f3,
              const std::string& f4)
{
  char buf[96];
  std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", f1.c_str(), f2.c_str(), f3.c_str(),
                f4.c_str());
  out << buf << '\n';
}

}  // namespace

void write_mps(const SparseLp& lp, std::ostream& out, const std::string& name)
{
  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  out << " N  COST\n";
  for (int i = 0; i < lp.n_rows(); ++i) {
    const char* kind = lp.relation[i] == Relation::less_equal  ? "L"
                       : lp.relation[i] == Relation::equal      ? "E"
                                                                : "G";
    out << ' ' << kind << "  " << mps_name('R', i) << '\n';
  }

  std::vector<Triplet> sorted = lp.entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Triplet& a, const Triplet& b) { return a.col < b.col; });
  out << "COLUMNS\n";
  std::size_t k = 0;
  for (int j = 0; j < lp.n_vars(); ++j) {
    const auto col = mps_name('X', j);
    if (lp.objective[j] != 0.0 || k >= sorted.size() || sorted[k].col != j)
      mps_line(out, "", col, "COST", mps_number(lp.objective[j]));
    for (; k < sorted.size() && sorted[k].col == j; ++k)
      mps_line(out, "", col, mps_name('R', sorted[k].row), mps_number(sorted[k].coeff));
  }

  out << "RHS\n";
  for (int i = 0; i < lp.n_rows(); ++i)
    if (lp.rhs[i] != 0.0) mps_line(out, "", "RHS", mps_name('R', i), mps_number(lp.rhs[i]));

  out << "BOUNDS\n";
  for (int j = 0; j < lp.n_vars(); ++j) {
    const auto col = mps_name('X', j);
    const double lo = lp.lower[j], hi = lp.upper[j];
    if (lo == hi) {
      mps_line(out, "FX", "BND", col, mps_number(lo));
      continue;
    }
    if (lo == -kInf && hi == kInf) {
      mps_line(out, "FR", "BND", col, "");
      continue;
    }
    if (lo == -kInf) mps_line(out, "MI", "BND", col, "");
    else if (lo != 0.0 || hi < 0.0) mps_line(out, "LO", "BND", col, mps_number(lo));
    if (hi != kInf) mps_line(out, "UP", "BND", col, mps_number(hi));
  }
  out << "ENDATA\n";
}

}  // namespace bess::lp
