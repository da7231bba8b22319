// Two-phase primal simplex on a dense tableau, specialized to the box
// relaxations built in this project: maximize c.y over y in [0,1]^n subject to
// two-sided rows. Sides that cannot bind on the box are dropped, y_j <= 1
// enters as ordinary rows, and the pivot inner loops run on the kernels
// module's axpy/scale.

#include <algorithm>
#include <cmath>
#include <vector>

#include "smax/errors.hpp"
#include "smax/kernels.hpp"
#include "smax/relaxation.hpp"

namespace smax {

namespace {

enum Rel { kLe, kGe, kEq };

struct StdRow {
  std::vector<double> a;  // dense over structural variables
  double b = 0.0;
  Rel rel = kLe;
};

class Tableau {
 public:
  Tableau(std::vector<StdRow> rows, const std::vector<double>& objective, double tol)
      : tol_(tol), n_(static_cast<int>(objective.size())), rows_std_(std::move(rows)) {
    m_ = static_cast<int>(rows_std_.size());
    for (auto& row : rows_std_)
      if (row.b < 0) {
        for (double& v : row.a) v = -v;
        row.b = -row.b;
        row.rel = row.rel == kLe ? kGe : (row.rel == kGe ? kLe : kEq);
      }
    int slacks = 0;
    for (const auto& row : rows_std_) slacks += row.rel != kEq ? 1 : 0;
    art_begin_ = n_ + slacks;
    int arts = 0;
    for (const auto& row : rows_std_) arts += row.rel != kLe ? 1 : 0;
    cols_ = art_begin_ + arts + 1;  // + rhs
    rhs_ = cols_ - 1;

    t_.assign(static_cast<size_t>(m_) * cols_, 0.0);
    basis_.assign(m_, -1);
    int slack_next = n_;
    int art_next = art_begin_;
    for (int i = 0; i < m_; ++i) {
      double* r = row(i);
      for (int j = 0; j < n_; ++j) r[j] = rows_std_[i].a[j];
      r[rhs_] = rows_std_[i].b;
      switch (rows_std_[i].rel) {
        case kLe:
          r[slack_next] = 1.0;
          basis_[i] = slack_next++;
          break;
        case kGe:
          r[slack_next++] = -1.0;
          r[art_next] = 1.0;
          basis_[i] = art_next++;
          artificial_rows_.push_back(i);
          break;
        case kEq:
          r[art_next] = 1.0;
          basis_[i] = art_next++;
          artificial_rows_.push_back(i);
          break;
      }
    }
    // Slack columns of >= rows were assigned in order; fix up the counter gap.
    (void)slack_next;
    obj_.assign(cols_, 0.0);
    objective_ = objective;
  }

  /// Returns false when phase 1 ends with positive infeasibility.
  bool run_phase1() {
    if (artificial_rows_.empty()) return true;
    // Maximize -sum(artificials): w-row starts as +1 per artificial column,
    // then the basic artificial rows are eliminated so their reduced costs
    // are exactly zero.
    std::fill(obj_.begin(), obj_.end(), 0.0);
    for (int j = art_begin_; j < rhs_; ++j) obj_[j] = 1.0;
    double scale = 1.0;
    for (int i : artificial_rows_) {
      kernels::axpy(obj_.data(), row(i), -1.0, cols_);
      obj_[basis_[i]] = 0.0;
      scale += std::abs(row(i)[rhs_]);
    }
    ban_artificials_ = true;  // once out of the basis they never come back
    iterate();
    if (obj_[rhs_] < -tol_ * scale) return false;
    drive_out_artificials();
    return true;
  }

  void run_phase2() {
    std::fill(obj_.begin(), obj_.end(), 0.0);
    for (int j = 0; j < n_; ++j) obj_[j] = -objective_[j];
    for (int i = 0; i < m_; ++i) {
      double f = obj_[basis_[i]];
      if (f != 0.0) {
        kernels::axpy(obj_.data(), row(i), -f, cols_);
        obj_[basis_[i]] = 0.0;
      }
    }
    ban_artificials_ = true;
    iterate();
  }

  std::vector<double> solution() const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = row_const(i)[rhs_];
    for (double& v : y) v = std::min(std::max(v, 0.0), 1.0);
    return y;
  }

  int iterations() const { return iterations_; }

 private:
  double* row(int i) { return t_.data() + static_cast<size_t>(i) * cols_; }
  const double* row_const(int i) const { return t_.data() + static_cast<size_t>(i) * cols_; }

  void iterate() {
    const int iter_cap = 500 + 40 * (m_ + cols_);
    int stalled = 0;
    double last_obj = obj_[rhs_];
    for (;;) {
      int enter = -1;
      if (bland_) {
        for (int j = 0; j < rhs_ && enter < 0; ++j) {
          if (ban_artificials_ && j >= art_begin_) continue;
          if (obj_[j] < -tol_) enter = j;
        }
      } else {
        double best = -tol_;
        for (int j = 0; j < rhs_; ++j) {
          if (ban_artificials_ && j >= art_begin_) continue;
          if (obj_[j] < best) {
            best = obj_[j];
            enter = j;
          }
        }
      }
      if (enter < 0) return;

      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        double a = row(i)[enter];
        if (a > tol_) {
          double ratio = row(i)[rhs_] / a;
          if (leave < 0 || ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0)
        throw SolverError("simplex: unbounded direction in a box program (numerical trouble)");

      pivot(leave, enter);
      if (++iterations_ > iter_cap)
        throw SolverError("simplex: iteration guard exceeded after " +
                          std::to_string(iterations_) + " pivots");
      if (obj_[rhs_] > last_obj + tol_ * (1.0 + std::abs(last_obj))) {
        stalled = 0;
        last_obj = obj_[rhs_];
      } else if (!bland_ && ++stalled >= 64) {
        bland_ = true;  // anti-cycling fallback
      }
    }
  }

  void pivot(int i, int j) {
    double* pr = row(i);
    kernels::scale(pr, 1.0 / pr[j], cols_);
    pr[j] = 1.0;
    for (int r = 0; r < m_; ++r) {
      if (r == i) continue;
      double f = row(r)[j];
      if (f != 0.0) {
        kernels::axpy(row(r), pr, -f, cols_);
        row(r)[j] = 0.0;
      }
    }
    double f = obj_[j];
    if (f != 0.0) {
      kernels::axpy(obj_.data(), pr, -f, cols_);
      obj_[j] = 0.0;
    }
    basis_[i] = j;
  }

  void drive_out_artificials() {
    for (int i = m_ - 1; i >= 0; --i) {
      if (basis_[i] < art_begin_) continue;
      int col = -1;
      for (int j = 0; j < art_begin_ && col < 0; ++j)
        if (std::abs(row(i)[j]) > tol_) col = j;
      if (col >= 0) {
        pivot(i, col);
      } else {
        // Redundant equation: remove the row entirely.
        if (i != m_ - 1) {
          std::copy(row_const(m_ - 1), row_const(m_ - 1) + cols_, row(i));
          basis_[i] = basis_[m_ - 1];
        }
        --m_;
        t_.resize(static_cast<size_t>(m_) * cols_);
        basis_.resize(m_);
      }
    }
  }

  double tol_;
  int n_;
  int m_ = 0;
  int cols_ = 0;
  int rhs_ = 0;
  int art_begin_ = 0;
  bool bland_ = false;
  bool ban_artificials_ = false;
  int iterations_ = 0;
  std::vector<StdRow> rows_std_;
  std::vector<double> t_;
  std::vector<double> obj_;
  std::vector<double> objective_;
  std::vector<int> basis_;
  std::vector<int> artificial_rows_;
};

}  // namespace

FractionalSolution solve(const RelaxProgram& program, double tol) {
  if (!(tol > 0)) throw InputError("solver tolerance must be positive");
  const int n = program.n;
  FractionalSolution out;
  if (n == 0) {
    out.status = SolveStatus::optimal;
    out.objective_value = program.objective_constant;
    return out;
  }

  std::vector<StdRow> rows;
  for (const auto& row : program.rows) {
    double attain_min = 0.0, attain_max = 0.0;
    for (auto [j, c] : row.coeffs) (c < 0 ? attain_min : attain_max) += c;
    if (row.coeffs.empty()) {
      if (row.lower > tol || row.upper < -tol) {
        out.status = SolveStatus::infeasible;
        return out;
      }
      continue;
    }
    std::vector<double> dense(n, 0.0);
    for (auto [j, c] : row.coeffs) dense[j] += c;
    const bool lower_finite = row.lower > -kInf;
    const bool upper_finite = row.upper < kInf;
    if (lower_finite && upper_finite && row.lower == row.upper) {
      if (!(attain_min == attain_max && attain_min == row.lower))
        rows.push_back({dense, row.lower, kEq});
      continue;
    }
    if (upper_finite && row.upper < attain_max) rows.push_back({dense, row.upper, kLe});
    if (lower_finite && row.lower > attain_min) rows.push_back({std::move(dense), row.lower, kGe});
  }
  for (int j = 0; j < n; ++j) {
    std::vector<double> dense(n, 0.0);
    dense[j] = 1.0;
    rows.push_back({std::move(dense), 1.0, kLe});
  }

  Tableau tableau(std::move(rows), program.objective, tol);
  if (!tableau.run_phase1()) {
    out.status = SolveStatus::infeasible;
    out.iterations = tableau.iterations();
    return out;
  }
  tableau.run_phase2();
  out.status = SolveStatus::optimal;
  out.y = tableau.solution();
  out.objective_value = program.objective_at(out.y);
  out.iterations = tableau.iterations();
  return out;
}

}  // namespace smax
