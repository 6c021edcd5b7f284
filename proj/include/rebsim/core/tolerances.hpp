#pragma once

namespace rebsim {

// Numerical tolerances used across the library. States are validated lazily
// (on request), not per operation, to keep sweep throughput high.
struct Tolerances {
    double hermiticity = 1e-10;        // max |rho - rho^dag| element
    double eigenvalue_floor = -1e-10;  // smallest admissible eigenvalue
    double trace_excess = 1e-9;        // trace may not exceed 1 by more than this
    double magnitude_unit = 1e-9;      // |r|^2+|t|^2+|l|^2 = 1 checks
    double kraus_completeness = 1e-9;
    double truncation_leakage = 1e-3;  // population allowed beyond the Fock cutoff
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace rebsim
