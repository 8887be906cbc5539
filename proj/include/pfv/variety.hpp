#pragma once

#include "pfv/canonical.hpp"
#include "pfv/skew.hpp"

namespace pfv {

/// The cone of n x n skew-symmetric matrices of rank at most 2r.
/// Proper subvariety: 0 <= r <= floor(n/2) - 1.
struct VarietySpec {
  int n = 0;
  int r = 0;

  VarietySpec(int n_, int r_);

  /// Manifold dimension of the regular stratum: r(2r-1) + 2r(n-2r).
  int dimension() const { return r * (2 * r - 1) + 2 * r * (n - 2 * r); }
  /// Ambient codimension: (n-2r)(n-2r-1)/2.
  int codimension() const { return (n - 2 * r) * (n - 2 * r - 1) / 2; }
};

/// Membership by numerical rank: counts singular pairs above tol * x_1.
bool contains_rank(const VarietySpec& spec, const SkewMatrix& m, double tol = 1e-9);

/// Membership by the defining equations: every principal Pfaffian of
/// order 2r+2 must vanish below tol * (|m| / sqrt(r+1))^(r+1).
bool contains_pfaffian(const VarietySpec& spec, const SkewMatrix& m, double tol = 1e-9);

/// Nearest point of the cone (Eckart-Young on the canonical pairs:
/// all pairs beyond the first r are dropped). `unique` is false when
/// x_r and x_{r+1} collide within tol * x_1.
struct Projection {
  SkewMatrix point;
  bool unique = true;
};

Projection project(const VarietySpec& spec, const SkewMatrix& m, double tol = 1e-9);

/// Distance to the cone: sqrt(sum of squared pairs beyond the first r).
double distance(const VarietySpec& spec, const SkewMatrix& m);

/// Numerical rank 2k of m (the even-rank stratum the point sits on).
int stratum(const SkewMatrix& m, double tol = 1e-9);

}  // namespace pfv
