#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chebvar/experiment.hpp"
#include "chebvar/galois.hpp"

namespace chebvar {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct CheckOptions {
    /// Classification range for the identity checks (capped at 10^4).
    std::uint64_t x = 10'000;
    std::uint64_t seed = 0;
    ExperimentOptions experiment;
};

/// |a - b| <= rel * max(|a|, |b|) + abs_floor.
bool nearly_equal(double a, double b, double rel = 1e-9, double abs_floor = 1e-12);

/// Property battery run by the `check` subcommand: cycle-type partitions,
/// the theta partition identity, orthogonality reconstruction, agreement of
/// the two variance algorithms, monotonicity in Q, the psi-theta gap,
/// exact character orthogonality and the large sieve inequality.
std::vector<CheckResult> run_property_checks(const GaloisContext& ctx, const CheckOptions& options);

/// 100 seeded random vectors at Q = 20, N = 50 plus the Q = 1 equality case.
/// Deterministic for a given seed on every platform.
CheckResult large_sieve_battery(std::uint64_t seed);

}  // namespace chebvar
