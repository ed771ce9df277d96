#pragma once

#include <cstdint>
#include <vector>

namespace chebvar {

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Prime factorization with primes ascending. factor_integer(1) is empty.
/// Throws DomainError for n == 0.
Factorization factor_integer(std::uint64_t n);

/// Product of prime powers; throws OverflowError if it does not fit.
std::uint64_t expand(const Factorization& f);

std::uint64_t euler_phi(std::uint64_t n);

/// phi(0..n), with phi(0) = 0.
std::vector<std::uint64_t> totients_up_to(std::uint64_t n);

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b);

/// Smallest positive integer generating (Z/modulus)^*. The group must be
/// cyclic: modulus in {1, 2, 4, l^k, 2 l^k} for odd prime l.
std::uint64_t smallest_primitive_root(std::uint64_t modulus);

}  // namespace chebvar
