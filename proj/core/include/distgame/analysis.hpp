#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distgame/dynamics.hpp"
#include "distgame/equilibrium.hpp"
#include "distgame/stability.hpp"
#include "distgame/support.hpp"

namespace distgame {

struct AnalysisOptions {
  std::vector<int> r_values{0};
  bool exact = false;  // exhaustive support enumeration vs seeded search
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int restarts = 100;
  int oracle_max_n = 14;     // full-enumeration cross-check cap
  int enumerate_max_n = 16;  // exact r >= 1 support scan cap
  int mis_max_n = 32;        // exact r = 0 enumeration cap
};

// One maximal support and what could be built on it.  Supports failing the
// outside condition are reported with the flags alone; classification runs
// only when the constructed strategy verifies, and the structural method
// only where it is backed.
struct SupportFinding {
  RegularSupport support;
  std::optional<ConstructedEquilibrium> equilibrium;
  std::optional<EquilibriumCertificate> certificate;
  std::optional<StabilityReport> spectral;
  std::optional<StabilityReport> structural;
  bool methods_agree = true;
};

struct OracleSummary {
  bool ran = false;
  int total = 0;    // distinct equilibria the full enumeration found
  int matched = 0;  // constructed equilibria present among them
  bool all_found = true;
};

struct AnalysisReport {
  int n = 0;
  int m = 0;
  double diag = 1.0;
  WeightScheme scheme = WeightScheme::unweighted;
  std::vector<int> r_values;
  bool exact = false;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::vector<SupportFinding> findings;  // lambda ascending, then r, nodes
  OracleSummary oracle;
};

// End-to-end pass: find maximal r-regular supports for each requested r,
// construct the weight-aware equilibrium on each valid one, verify it,
// classify it both ways where possible, and (exact mode, small networks)
// reconcile against the full enumeration oracle.
AnalysisReport analyze(const Network& net, const AnalysisOptions& opts = {});

enum class ReportFormat { json, text };

// json is deterministic byte-for-byte for a given report; text is a short
// human-readable summary.
std::string emit_report(const AnalysisReport& report, ReportFormat fmt);

}  // namespace distgame
