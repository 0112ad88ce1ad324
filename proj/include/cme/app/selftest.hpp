#pragma once

#include "cme/app/config.hpp"

#include <iosfwd>

namespace cme::app {

/// Cross-checks closed forms against brute-force and Monte Carlo oracles on
/// small random instances. Prints one PASS/FAIL line per check and returns
/// true when all pass.
bool run_selftest(const SelftestConfig& cfg, std::ostream& out);

}  // namespace cme::app
