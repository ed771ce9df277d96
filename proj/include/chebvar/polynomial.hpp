#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace chebvar {

/// Monic polynomial with 64-bit integer coefficients, stored lowest degree
/// first. Arithmetic that would leave the 64-bit range throws OverflowError.
class IntPolynomial {
public:
    /// Throws DomainError unless the list describes a monic polynomial of
    /// degree at least one (trailing zeros are not allowed).
    explicit IntPolynomial(std::vector<std::int64_t> ascending);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

    /// Exact discriminant, (-1)^(n(n-1)/2) Res(f, f').
    std::int64_t discriminant() const;

    std::string to_string() const;

    friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

private:
    std::vector<std::int64_t> coeffs_;
};

/// Cycle type of a permutation: its cycle lengths, kept sorted ascending.
class CycleType {
public:
    CycleType() = default;
    /// Throws DomainError on a non-positive part.
    explicit CycleType(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int degree() const;

    /// Cycle type of sigma^m given the cycle type of sigma: a d-cycle breaks
    /// into gcd(d, m) cycles of length d / gcd(d, m).
    CycleType power(std::uint64_t m) const;

    /// "1+2" style; parse accepts the same form (whitespace ignored).
    std::string to_string() const;
    static CycleType parse(std::string_view text);

    auto operator<=>(const CycleType&) const = default;

private:
    std::vector<int> parts_;
};

/// Degrees of the irreducible factors of f modulo p, found by distinct-degree
/// factorization. Throws RamifiedPrimeError when f mod p is not squarefree,
/// which for monic f is exactly when p divides disc(f).
CycleType ddf_cycle_type(const IntPolynomial& f, std::uint64_t p);

}  // namespace chebvar
