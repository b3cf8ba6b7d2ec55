#pragma once

#include <iosfwd>

namespace beamspec {

/// Runs the whole invariant battery (structured-matrix identities, reduction
/// of the reference condition, representation round-trips, symmetry and
/// reality checks, solution properties) and prints one PASS/FAIL line per
/// check. Returns the number of failures.
int run_verification(std::ostream& out);

}  // namespace beamspec
