#include "chebvar/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chebvar/errors.hpp"

namespace chebvar {

std::uint64_t prime_count_upper_bound(std::uint64_t x) {
    if (x < 2) return 0;
    if (x < 17) return 6;
    const double xd = static_cast<double>(x);
    return static_cast<std::uint64_t>(1.25506 * xd / std::log(xd)) + 1;
}

namespace {

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace

PrimeList sieve_primes(std::uint64_t limit, const SieveOptions& options) {
    PrimeList result;
    result.limit = limit;
    if (limit < 2) return result;

    const std::uint64_t estimate = prime_count_upper_bound(limit);
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const double needed = static_cast<double>(estimate) * (sizeof(std::uint64_t) + sizeof(double)) +
                          static_cast<double>(root) + static_cast<double>(options.segment_bytes);
    if (needed > static_cast<double>(options.memory_budget)) {
        throw ResourceError("sieve_primes: limit " + std::to_string(limit) + " needs about " +
                            std::to_string(static_cast<std::uint64_t>(needed)) +
                            " bytes, over the memory budget of " +
                            std::to_string(options.memory_budget));
    }
    if (root > 0xFFFFFFFFull) throw ResourceError("sieve_primes: limit too large");

    result.primes.reserve(estimate);
    result.primes.push_back(2);

    const auto base = small_primes(static_cast<std::uint32_t>(root));
    // Segment element i stands for the odd number low + 2i.
    const std::uint64_t span = std::max<std::size_t>(options.segment_bytes, 64) * 2;
    std::vector<char> composite;
    for (std::uint64_t low = 3; low <= limit; low += span) {
        const std::uint64_t high = std::min(limit, low + span - 1);
        const std::uint64_t count = (high - low) / 2 + 1;
        composite.assign(count, 0);
        for (std::size_t k = 1; k < base.size(); ++k) {
            const std::uint64_t p = base[k];
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            if ((start & 1) == 0) start += p;
            for (std::uint64_t m = start; m <= high; m += 2 * p) composite[(m - low) / 2] = 1;
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            if (!composite[i]) result.primes.push_back(low + 2 * i);
        }
    }

    result.logs.resize(result.primes.size());
    std::transform(result.primes.begin(), result.primes.end(), result.logs.begin(),
                   [](std::uint64_t p) { return std::log(static_cast<double>(p)); });
    return result;
}

}  // namespace chebvar
