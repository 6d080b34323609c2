#include "tetroc/lp.hpp"

#include "tetroc/errors.hpp"


namespace tetroc {

namespace {

// Degenerate pivots in a row before Dantzig pricing hands over to Bland's rule.
constexpr std::size_t kStallLimit = 50;

}  // namespace

LpResult lp_maximize(const VectorX<Rational>& c, const MatrixX<Rational>& a, const Rational& box, PivotRule rule) {
  const Eigen::Index n = c.size();
  const Eigen::Index m = a.rows();
  if (a.cols() != n && m > 0) throw InterlockError("objective and constraint sizes differ");
  if (box <= 0) throw InterlockError("box bound must be positive");
  const Eigen::Index cols = m + 2 * n;  // y | u | w

  MatrixX<Rational> t = MatrixX<Rational>::Zero(n, cols);
  VectorX<Rational> rhs(n);
  std::vector<Eigen::Index> basis(n);
  VectorX<Rational> cost = VectorX<Rational>::Zero(cols);
  cost.tail(2 * n).setConstant(box);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int sign = c[i] < 0 ? -1 : 1;
    for (Eigen::Index r = 0; r < m; ++r)
      if (a(r, i) != 0) t(i, r) = -a(r, i) * sign;
    t(i, m + i) = sign;
    t(i, m + n + i) = -sign;
    rhs[i] = c[i] * sign;
    basis[i] = sign > 0 ? m + i : m + n + i;
  }

  // Reduced costs d = cost − c_Bᵀ T.
  VectorX<Rational> d = cost;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      if (t(i, j) != 0) d[j] -= cost[basis[i]] * t(i, j);

  std::size_t pivots = 0;
  std::size_t stalled = 0;  // consecutive degenerate pivots
  std::vector<Eigen::Index> nz;
  for (;;) {
    Eigen::Index enter = -1;
    if (rule == PivotRule::bland || stalled >= kStallLimit) {
      for (Eigen::Index j = 0; j < cols; ++j)
        if (d[j] < 0) {
          enter = j;
          break;
        }
    } else {
      for (Eigen::Index j = 0; j < cols; ++j)
        if (d[j] < 0 && (enter < 0 || d[j] < d[enter])) enter = j;
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Rational best;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (t(i, enter) <= 0) continue;
      Rational ratio = rhs[i] / t(i, enter);
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw InterlockError("dual simplex reported an unbounded ray; the primal box makes this impossible");

    const Rational piv = t(leave, enter);
    nz.clear();
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(leave, j) != 0) {
        t(leave, j) /= piv;
        nz.push_back(j);
      }
    }
    rhs[leave] /= piv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      const Rational f = t(i, enter);
      for (Eigen::Index j : nz) t(i, j) -= f * t(leave, j);
      rhs[i] -= f * rhs[leave];
    }
    if (d[enter] != 0) {
      const Rational f = d[enter];
      for (Eigen::Index j : nz) d[j] -= f * t(leave, j);
    }
    basis[leave] = enter;
    ++pivots;
    stalled = best == 0 ? stalled + 1 : 0;
  }

  LpResult result;
  result.pivots = pivots;
  result.x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) result.x[i] = box - d[m + i];
  result.optimum = c.dot(result.x);

  Rational dual = 0;
  for (Eigen::Index i = 0; i < n; ++i) dual += cost[basis[i]] * rhs[i];
  if (dual != result.optimum) throw InterlockError("simplex optimality certificate failed");
  for (Eigen::Index i = 0; i < n; ++i)
    if (abs(result.x[i]) > box) throw InterlockError("simplex optimiser violates the box");
  if (m > 0) {
    const VectorX<Rational> ax = a * result.x;
    for (Eigen::Index r = 0; r < m; ++r)
      if (ax[r] < 0) throw InterlockError("simplex optimiser violates a constraint row");
  }
  return result;
}

std::vector<VectorX<Rational>> nullspace(const MatrixX<Rational>& a) {
  const Eigen::Index n = a.cols();
  MatrixX<Rational> r = a;
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < n && row < r.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < r.rows(); ++i)
      if (r(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    r.row(p).swap(r.row(row));
    const Rational inv = 1 / r(row, col);
    for (Eigen::Index j = col; j < n; ++j)
      if (r(row, j) != 0) r(row, j) *= inv;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col) == 0) continue;
      const Rational f = r(i, col);
      for (Eigen::Index j = col; j < n; ++j)
        if (r(row, j) != 0) r(i, j) -= f * r(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  std::vector<VectorX<Rational>> basis;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    VectorX<Rational> v = VectorX<Rational>::Zero(n);
    v[f] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -r(static_cast<Eigen::Index>(k), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace tetroc
