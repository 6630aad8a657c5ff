#pragma once

// Sign-off battery: nine named checks that rebuild the laboratory's anchor
// identities and both flagship experiments end to end, each against pinned
// tolerances.  The acceptance test binary and the CLI `verify` command print
// one pass/fail line per check and exit nonzero when anything fails.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace tlab {

struct AcceptanceCheck {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured values next to their thresholds
};

// Runs every check (a thrown exception fails that check, not the suite).
// mc_seed drives the Monte Carlo half of the battery; the pinned suite uses
// the default, other seeds are for robustness exploration.
std::vector<AcceptanceCheck> run_acceptance(std::uint64_t mc_seed = 42);

// Prints the table; returns 0 when every check passes, 1 otherwise.
int print_acceptance(std::ostream& out, std::uint64_t mc_seed = 42);

}  // namespace tlab
