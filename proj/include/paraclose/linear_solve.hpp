#ifndef PARACLOSE_LINEAR_SOLVE_HPP
#define PARACLOSE_LINEAR_SOLVE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "paraclose/field.hpp"

namespace paraclose {

/// Dense exact system A x = b over a field. Rows are equations.
template <CoefficientField F>
struct LinearSystem {
  using Coeff = typename F::value_type;
  std::size_t unknowns = 0;
  std::vector<std::vector<Coeff>> rows;
  std::vector<Coeff> rhs;
};

/// Gaussian elimination, pivoting on the first nonzero entry of each column.
/// Free unknowns are set to zero. nullopt if the system is inconsistent.
template <CoefficientField F>
std::optional<std::vector<typename F::value_type>> solve_linear_system(const F& field, LinearSystem<F> sys) {
  using Coeff = typename F::value_type;
  const std::size_t n = sys.unknowns;
  const std::size_t m = sys.rows.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = row;
    while (piv < m && sys.rows[piv][col].is_zero()) ++piv;
    if (piv == m) continue;
    std::swap(sys.rows[piv], sys.rows[row]);
    std::swap(sys.rhs[piv], sys.rhs[row]);
    Coeff inv = field_inverse(sys.rows[row][col]);
    for (std::size_t j = col; j < n; ++j) sys.rows[row][j] = sys.rows[row][j] * inv;
    sys.rhs[row] = sys.rhs[row] * inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || sys.rows[r][col].is_zero()) continue;
      Coeff factor = sys.rows[r][col];
      for (std::size_t j = col; j < n; ++j) {
        if (!sys.rows[row][j].is_zero()) sys.rows[r][j] = sys.rows[r][j] - factor * sys.rows[row][j];
      }
      sys.rhs[r] = sys.rhs[r] - factor * sys.rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r) {
    if (!sys.rhs[r].is_zero()) return std::nullopt;
  }
  std::vector<Coeff> x(n, field.zero());
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = sys.rhs[r];
  return x;
}

}  // namespace paraclose

#endif  // PARACLOSE_LINEAR_SOLVE_HPP
