#pragma once

#include <stdexcept>
#include <string>

namespace msfab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// solve_code_distance: 100*eps_in >= 1, no distance suppresses the error.
struct NoConvergence : Error {
    using Error::Error;
};

// solve_code_distance: required distance exceeds the configured cap.
struct DistanceOverflow : Error {
    using Error::Error;
};

// Design cannot reach the target output error (or violates a search constraint).
struct Infeasible : Error {
    using Error::Error;
};

// No level l <= l_max admits a feasible capacity ratio.
struct NoFeasibleLevel : Error {
    using Error::Error;
};

// Yield collapsed to zero while demand is nonzero; time diverges.
struct StarvedFactory : Error {
    using Error::Error;
};

struct EmptySchedule : Error {
    using Error::Error;
};

struct SchemaViolation : Error {
    using Error::Error;
};

struct VersionMismatch : Error {
    using Error::Error;
};

// Factories plus data qubits do not fit on the requested lattice.
struct DoesNotFit : Error {
    using Error::Error;
};

// A data tile is permanently enclosed; no braid can ever reach it.
struct UnroutableRequest : Error {
    using Error::Error;
};

}  // namespace msfab
