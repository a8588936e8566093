#pragma once
// Exact rational simplex for problems in the form
//     maximize c.x  subject to  A x <= b,  x >= 0,  with b >= 0.
// The nonnegative right-hand side makes the slack basis feasible, so no
// phase-one is needed; every right-hand side in this library is a submeasure
// value.  Bland's rule keeps the pivoting finite and deterministic.

#include <cstddef>
#include <string>
#include <vector>

#include "subm/rational.hpp"

namespace subm {

struct LpProblem {
  std::vector<std::vector<Rat>> rows;  // m x n
  std::vector<Rat> rhs;                // m, all >= 0
  std::vector<Rat> objective;          // n
};

struct LpSolution {
  enum Status { Optimal, Unbounded };
  Status status = Optimal;
  Rat value;
  std::vector<Rat> x;     // n
  std::vector<Rat> dual;  // m, the multipliers read off the slack columns
  std::size_t pivots = 0;
};

inline LpSolution simplex_max(const LpProblem& p) {
  const std::size_t m = p.rows.size();
  const std::size_t n = p.objective.size();
  for (const auto& r : p.rows)
    if (r.size() != n) throw DomainError("simplex: ragged constraint matrix");
  if (p.rhs.size() != m) throw DomainError("simplex: rhs size mismatch");
  for (const auto& b : p.rhs)
    if (b < 0) throw DomainError("simplex: negative rhs; slack basis infeasible");

  // Tableau over columns [structurals | slacks | rhs].
  const std::size_t cols = n + m;
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1, Rat(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = p.rows[i][j];
    t[i][n + i] = 1;
    t[i][cols] = p.rhs[i];
  }
  std::vector<Rat> obj(cols + 1, Rat(0));
  for (std::size_t j = 0; j < n; ++j) obj[j] = -p.objective[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpSolution sol;
  for (;;) {
    // Bland: least improving column.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols) break;  // optimal

    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      sol.status = LpSolution::Unbounded;
      return sol;
    }

    ++sol.pivots;
    const Rat piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rat f = obj[enter];
      for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  sol.status = LpSolution::Optimal;
  sol.value = obj[cols];
  sol.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols];
  sol.dual.assign(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) sol.dual[i] = obj[n + i];
  return sol;
}

// Independent optimality check: x primal feasible, y dual feasible, and the
// two objectives agree.  By weak duality the agreement certifies optimality;
// everything is exact, so there is no tolerance to pick.
inline bool lp_check_optimal(const LpProblem& p, const std::vector<Rat>& x,
                             const std::vector<Rat>& y, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const std::size_t m = p.rows.size();
  const std::size_t n = p.objective.size();
  if (x.size() != n || y.size() != m) return fail("certificate size mismatch");
  for (std::size_t j = 0; j < n; ++j)
    if (x[j] < 0) return fail("primal variable negative");
  for (std::size_t i = 0; i < m; ++i) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < n; ++j) lhs += p.rows[i][j] * x[j];
    if (lhs > p.rhs[i]) return fail("primal constraint " + std::to_string(i) + " violated");
  }
  for (std::size_t i = 0; i < m; ++i)
    if (y[i] < 0) return fail("dual variable negative");
  for (std::size_t j = 0; j < n; ++j) {
    Rat lhs = 0;
    for (std::size_t i = 0; i < m; ++i) lhs += p.rows[i][j] * y[i];
    if (lhs < p.objective[j]) return fail("dual constraint " + std::to_string(j) + " violated");
  }
  Rat primal = 0, dual = 0;
  for (std::size_t j = 0; j < n; ++j) primal += p.objective[j] * x[j];
  for (std::size_t i = 0; i < m; ++i) dual += p.rhs[i] * y[i];
  if (primal != dual) return fail("objective gap: " + format_rat(primal) + " vs " + format_rat(dual));
  return true;
}

}  // namespace subm
