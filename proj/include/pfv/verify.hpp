#pragma once

#include "pfv/skew.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pfv {

enum class Verdict { pass, fail, unsupported_regime };

std::string verdict_name(Verdict v);

/// Machine-readable result of one verification suite run. The verdict is
/// pass exactly when violations == 0 and max_defect <= tolerance;
/// unsupported-regime is reserved for slicing suites invoked where the
/// bounding method does not apply (n - 2r < 3).
struct VerificationReport {
  int schema = 1;
  std::string suite;
  int n = 0;
  int r = 0;
  std::uint64_t seed = 0;
  long trials = 0;
  long violations = 0;
  double max_defect = 0.0;
  double tolerance = 0.0;
  double elapsed = 0.0;  // seconds, excluded from the canonical body
  Verdict verdict = Verdict::fail;
  std::string details;

  /// Full JSON object, elapsed included.
  std::string to_json() const;
  /// Deterministic JSON body: identical runs produce identical bytes
  /// (elapsed excluded).
  std::string canonical_body() const;
  /// 0 pass, 1 fail, 2 unsupported-regime.
  int exit_code() const;
};

/// Names of all suites, in canonical order.
const std::vector<std::string>& suite_names();

/// Per-suite defaults used when the caller passes trials <= 0 / tol <= 0.
long default_trials(const std::string& suite);
double default_tolerance(const std::string& suite);

/// Runs one named suite on the cone (n, r) with the given seed. Throws
/// std::invalid_argument for unknown suites or specs the suite cannot
/// run on (usage errors).
VerificationReport run_suite(const std::string& name, int n, int r, std::uint64_t seed,
                             long trials = -1, double tol = -1.0);

/// Plot-ready CSV sweeps. Column meanings are documented in # header
/// comment lines; numbers carry 17 significant digits.
struct SweepRequest {
  std::string kind;  // "composite" | "slope" | "wedge-det"
  int n = 5;
  int r = 1;
  std::uint64_t seed = 0;
  int points = 201;
  double tmax = -1.0;           // <= 0 picks a kind-specific default
  std::vector<double> c;        // composite: level labels (empty = sampled)
  std::vector<double> x;        // wedge-det: slice values (empty = {1})
  int rank_pairs = 1;           // wedge-det block: pair count, -1 generic
  bool member = true;           // slope: membership of the random query
  std::optional<SkewMatrix> base;       // slope: explicit query base
  std::optional<SkewMatrix> direction;  // slope: explicit query direction
};

void emit_sweep(const SweepRequest& req, std::ostream& out);

}  // namespace pfv
