#include "subcut/exact_lp.hpp"

#include <stdexcept>

namespace subcut {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
      : rows_(a.size()), structural_(a.empty() ? 0 : a.front().size()) {
    columns_ = structural_ + rows_;
    t_.assign(rows_, std::vector<Rational>(columns_ + 1, 0));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (a[i].size() != structural_) throw std::invalid_argument("ragged constraint matrix");
      const bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
      t_[i][structural_ + i] = 1;
      t_[i][columns_] = flip ? Rational(-b[i]) : b[i];
      basis_[i] = structural_ + i;
    }
  }

  // Phase one: drive the artificial variables to zero.
  bool find_feasible_basis() {
    std::vector<Rational> cost(columns_, 0);
    for (std::size_t j = structural_; j < columns_; ++j) cost[j] = 1;
    price(cost);
    run(columns_);
    if (sgn(z_[columns_]) != 0) return false;

    // Pivot zero-level artificials out where a structural column allows it;
    // rows without one are redundant and stay inert.
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) continue;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (sgn(t_[i][j]) != 0) {
          pivot(i, j);
          break;
        }
      }
    }
    return true;
  }

  void optimize(const std::vector<Rational>& c) {
    std::vector<Rational> cost(columns_, 0);
    for (std::size_t j = 0; j < structural_; ++j) cost[j] = c[j];
    price(cost);
    run(structural_);
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(structural_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < structural_) x[basis_[i]] = t_[i][columns_];
    return x;
  }

 private:
  // Reduced costs for the current basis; z_[columns_] holds -objective.
  void price(const std::vector<Rational>& cost) {
    z_.assign(columns_ + 1, 0);
    for (std::size_t j = 0; j < columns_; ++j) z_[j] = cost[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j <= columns_; ++j) z_[j] -= cb * t_[i][j];
    }
  }

  // Bland's rule over columns [0, eligible).
  void run(std::size_t eligible) {
    while (true) {
      std::size_t enter = eligible;
      for (std::size_t j = 0; j < eligible; ++j) {
        if (sgn(z_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == eligible) return;

      std::size_t leave = rows_;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][columns_] / t_[i][enter];
        if (leave == rows_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_) throw std::domain_error("linear program is unbounded");
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= columns_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= f * t_[r][j];
    }
    if (!z_.empty() && sgn(z_[c]) != 0) {
      const Rational f = z_[c];
      for (std::size_t j = 0; j <= columns_; ++j)
        if (sgn(t_[r][j]) != 0) z_[j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t columns_ = 0;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> minimize_nonnegative(const std::vector<std::vector<Rational>>& a,
                                                          const std::vector<Rational>& b,
                                                          const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("row count mismatch between A and b");
  const std::size_t n = a.empty() ? c.size() : a.front().size();
  if (c.size() != n) throw std::invalid_argument("cost vector length mismatch");
  if (a.empty()) {
    for (const auto& cj : c)
      if (sgn(cj) < 0) throw std::domain_error("linear program is unbounded");
    return std::vector<Rational>(n, 0);
  }
  Tableau tableau(a, b);
  if (!tableau.find_feasible_basis()) return std::nullopt;
  tableau.optimize(c);
  return tableau.solution();
}

}  // namespace subcut
