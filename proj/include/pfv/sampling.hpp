#pragma once

#include "pfv/skew.hpp"

#include <vector>

namespace pfv {

/// Strictly descending positive values with pairwise gaps >= min_gap and
/// smallest value >= base; used wherever a regular point of the cone is
/// needed without tolerance games.
std::vector<double> sample_descending(Rng& rng, int r, double min_gap = 0.2, double base = 0.3);

/// Unit-norm skew block of size m. rank_pairs < 0 gives a generic block;
/// otherwise exactly rank_pairs positive pairs (rank_pairs = 1 yields the
/// equal-pair spectrum (1, 1, 0, ...) of b b^T).
SkewMatrix sample_unit_normal_block(Rng& rng, int m, int rank_pairs = -1);

/// Random rank-2k matrix q * M(x) * q^T with Haar q in SO(n) and a
/// well-separated descending x of length k.
SkewMatrix sample_member(Rng& rng, int n, int k);

}  // namespace pfv
