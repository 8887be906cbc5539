#pragma once

#include "pfv/skew.hpp"

#include <vector>

namespace pfv {

/// Pfaffian by first-row expansion with memoization over index subsets.
/// Exact-arithmetic recursion; intended as the reference evaluator for
/// small dimensions (n <= 20 enforced, n <= 12 in practice).
/// Conventions: Pf of the empty matrix is 1, odd dimensions give 0.
double pfaffian_expand(const SkewMatrix& m);

/// Pfaffian via skew tridiagonalization with partial pivoting, O(n^3).
/// Row/column interchanges flip the sign; a zero pivot column gives 0.
double pfaffian_fast(const SkewMatrix& m);

/// Pfaffian of the principal submatrix picked by strictly increasing
/// 0-based indices; the index count must be even (empty selection -> 1).
double principal_pfaffian(const SkewMatrix& m, const std::vector<int>& indices);

}  // namespace pfv
