#pragma once

#include <cstdint>

#include "chebvar/arith.hpp"

namespace chebvar {

struct CyclotomicDiscriminant {
    int sign;                   // +1 or -1
    Factorization magnitude;    // prime factorization of |d|, primes ascending
};

/// Discriminant of Q(zeta_q):
///   (-1)^(phi(q)/2) q^phi(q) / prod_{l | q} l^(phi(q)/(l-1)).
/// Returned factored since |d| outgrows 64 bits quickly. Requires q >= 3.
CyclotomicDiscriminant cyclotomic_disc(std::uint64_t q);

}  // namespace chebvar
