#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace chebvar {

/// All primes up to `limit`, ascending, with their natural logarithms.
struct PrimeList {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;
    std::vector<double> logs;

    std::size_t size() const { return primes.size(); }
};

struct SieveOptions {
    /// Upper bound on the bytes the result plus sieve scratch may occupy.
    std::size_t memory_budget = std::size_t{2} << 30;
    std::size_t segment_bytes = std::size_t{1} << 18;
};

/// Segmented sieve of Eratosthenes over odd numbers. Scratch memory is
/// O(sqrt(limit) + segment). Throws ResourceError when the estimated output
/// size exceeds the budget.
PrimeList sieve_primes(std::uint64_t limit, const SieveOptions& options = {});

/// Upper bound on pi(x) (Rosser-Schoenfeld), used for allocation estimates.
std::uint64_t prime_count_upper_bound(std::uint64_t x);

}  // namespace chebvar
