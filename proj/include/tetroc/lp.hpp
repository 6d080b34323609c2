#pragma once

#include "tetroc/types.hpp"

#include <vector>

namespace tetroc {

struct LpResult {
  Rational optimum;
  VectorX<Rational> x;
  std::size_t pivots = 0;
};

enum class PivotRule {
  bland,    ///< smallest improving index; never cycles
  dantzig,  ///< most negative reduced cost, falling back to Bland after a run of degenerate pivots
};

/// Exact maximisation of cᵀx over {A x >= 0, −box <= x <= box}.
///
/// Solved through its dual, min box·Σ(u + w) s.t. −Aᵀy + u − w = c, with
/// y, u, w >= 0, whose slack basis is feasible without a phase one. The
/// primal optimiser is read off the simplex multipliers.
LpResult lp_maximize(const VectorX<Rational>& c, const MatrixX<Rational>& a, const Rational& box = 1,
                     PivotRule rule = PivotRule::dantzig);

/// Basis of {x : A x = 0} from the reduced row echelon form.
std::vector<VectorX<Rational>> nullspace(const MatrixX<Rational>& a);

}  // namespace tetroc
