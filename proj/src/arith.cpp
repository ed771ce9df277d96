#include "chebvar/arith.hpp"

#include <algorithm>
#include <numeric>

#include "chebvar/errors.hpp"

namespace chebvar {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a proven witness set below 3.3e24.
    for (auto a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

// Brent's variant of Pollard rho; n is odd, composite, and not a prime power
// of a small prime.
std::uint64_t pollard_brent(std::uint64_t n) {
    for (std::uint64_t c = 1;; ++c) {
        auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
        const std::uint64_t batch = 128;
        for (std::uint64_t r = 1; g == 1; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    const std::uint64_t d = pollard_brent(n);
    split(d, out);
    split(n / d, out);
}

}  // namespace

Factorization factor_integer(std::uint64_t n) {
    if (n == 0) throw DomainError("factor_integer: n must be positive");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            primes.push_back(p);
            n /= p;
        }
    }
    split(n, primes);
    std::sort(primes.begin(), primes.end());

    Factorization result;
    for (auto p : primes) {
        if (!result.empty() && result.back().prime == p)
            ++result.back().exponent;
        else
            result.push_back({p, 1});
    }
    return result;
}

std::uint64_t expand(const Factorization& f) {
    std::uint64_t n = 1;
    for (const auto& [p, e] : f) {
        for (unsigned i = 0; i < e; ++i) {
            if (__builtin_mul_overflow(n, p, &n))
                throw OverflowError("expand: product exceeds 64 bits");
        }
    }
    return n;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = n;
    for (const auto& [p, e] : factor_integer(n)) phi = phi / p * (p - 1);
    return phi;
}

std::vector<std::uint64_t> totients_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> phi(n + 1);
    std::iota(phi.begin(), phi.end(), std::uint64_t{0});
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (phi[p] != p) continue;
        for (std::uint64_t k = p; k <= n; k += p) phi[k] -= phi[k] / p;
    }
    return phi;
}

std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    std::uint64_t r;
    if (__builtin_mul_overflow(a / std::gcd(a, b), b, &r))
        throw OverflowError("lcm exceeds 64 bits");
    return r;
}

std::uint64_t smallest_primitive_root(std::uint64_t modulus) {
    if (modulus <= 2) return 1;
    if (modulus == 4) return 3;
    const std::uint64_t phi = euler_phi(modulus);
    const auto phi_factors = factor_integer(phi);
    for (std::uint64_t g = 2; g < modulus; ++g) {
        if (std::gcd(g, modulus) != 1) continue;
        bool generator = true;
        for (const auto& [r, e] : phi_factors) {
            if (powmod(g, phi / r, modulus) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw DomainError("smallest_primitive_root: unit group mod " + std::to_string(modulus) +
                      " is not cyclic");
}

}  // namespace chebvar
