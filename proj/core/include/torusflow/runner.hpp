#pragma once

#include <iosfwd>
#include <string>

#include "torusflow/config.hpp"

namespace torusflow {

/// Test hooks for cmd_check fault injection.
struct CheckFaults {
  bool break_neumann = false;  // perturb the ghost layer before the residual check
};

/// Executes the configured run, streaming diagnostics.csv, the config echo
/// and snapshots into out_dir. Returns the process exit status: 0 when the
/// run converged or reached t_final, 2 on abort.
int cmd_run(const RunConfig& cfg, const std::string& out_dir, std::ostream& log,
            std::ostream& err);

/// Runs the invariant battery on the configured problem and prints a
/// PASS/FAIL table. Returns 0 iff every check passed.
int cmd_check(const RunConfig& cfg, std::ostream& log,
              const CheckFaults& faults = {});

/// Convergence study against the manufactured solution for the configured
/// dimension; writes mms.csv into out_dir. Returns 0 iff every observed
/// order lies in the configured window (or the errors are exactly zero).
int cmd_mms(const RunConfig& cfg, int levels, const std::string& out_dir,
            std::ostream& log, std::ostream& err);

}  // namespace torusflow
