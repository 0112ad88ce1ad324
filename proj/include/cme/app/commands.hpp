#pragma once

#include "cme/app/config.hpp"
#include "cme/app/csv.hpp"

#include <iosfwd>

namespace cme::app {

/// derive_seed stream for the held-out test set of a consistency replicate.
inline constexpr std::uint64_t kTestSetStream = 2;

/// Columns: scenario, n, seed, lambda_n, surrogate_loss_fitted, eta_oracle.
/// One row per (n, seed), n-major.
CsvTable run_consistency(const ConsistencyConfig& cfg);

struct McmdResult {
  CsvTable curves;                  // seed, z, mcmd_same, mcmd_diff
  std::optional<CsvTable> witness;  // seed, z, x, witness_same, witness_diff
};

McmdResult run_mcmd(const McmdConfig& cfg, bool with_witness);

/// Columns: mode, seed, z, hscic_noise_or_ind, hscic_dep, hscic_dep_strong.
CsvTable run_hscic(const HscicConfig& cfg);

/// Columns: n, lambda_n, beta_stability, kappa2, generalization_gap, rate_bound.
CsvTable run_bounds(const BoundsConfig& cfg);

/// Runs a command on a resolved configuration, writes the CSV(s) and a
/// "<out>.config" sidecar holding the resolved configuration. With dry_run
/// the configuration is printed and nothing is computed. Returns the process
/// exit code.
int execute(Command command, const ConfigMap& resolved, bool dry_run, std::ostream& out,
            std::ostream& err);

}  // namespace cme::app
