#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chebvar/polynomial.hpp"
#include "chebvar/sieve.hpp"

namespace chebvar {

/// Exact rational with positive denominator, always reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    static Rational parse(const std::string& text);  // "n/d" or "n"
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Everything the user supplies about L/Q. The group data is trusted input,
/// checked only for consistency.
struct ContextSpec {
    std::string name;
    std::vector<std::int64_t> polynomial;  // ascending, monic
    std::uint64_t group_order = 1;
    std::vector<CycleType> class_spec;
    Rational class_density{1, 1};
    std::uint64_t abelian_conductor = 1;
    std::optional<double> log_disc_L;
    std::map<std::uint64_t, bool> admissibility_overrides;

    friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

/// Validated extension data: the defining polynomial, the class C as a set of
/// cycle types, |C|/|G|, the discriminant and the primes dividing it.
class GaloisContext {
public:
    const ContextSpec& spec() const { return spec_; }
    const std::string& name() const { return spec_.name; }
    const IntPolynomial& polynomial() const { return poly_; }
    std::uint64_t group_order() const { return spec_.group_order; }
    const std::vector<CycleType>& class_spec() const { return spec_.class_spec; }
    Rational class_density() const { return spec_.class_density; }
    double density() const { return spec_.class_density.to_double(); }
    std::int64_t disc() const { return disc_; }
    const std::vector<std::uint64_t>& ramified_primes() const { return ramified_; }
    std::uint64_t abelian_conductor() const { return spec_.abelian_conductor; }
    /// User value, else log|disc f| (0 when |disc f| = 1).
    double log_disc_L() const;

    bool is_ramified(std::uint64_t p) const;
    bool in_class(const CycleType& t) const;

    /// Totally non-Abelian: every q is admissible.
    bool totally_non_abelian() const;

private:
    friend GaloisContext build_context(ContextSpec spec);
    GaloisContext(ContextSpec spec, IntPolynomial poly) : spec_(std::move(spec)), poly_(std::move(poly)) {}

    ContextSpec spec_;
    IntPolynomial poly_;
    std::int64_t disc_ = 0;
    std::vector<std::uint64_t> ramified_;
};

/// Throws DomainError (or OverflowError for an unrepresentable discriminant)
/// when the context data is inconsistent.
GaloisContext build_context(ContextSpec spec);

struct FrobeniusEntry {
    std::uint64_t p;
    double log_p;
    CycleType cycle_type;
    bool in_class;
};

struct FrobeniusTable {
    std::uint64_t x = 0;
    std::vector<FrobeniusEntry> entries;
    std::vector<std::uint64_t> skipped_ramified;

    /// The same classification restricted to p <= y (y <= x).
    FrobeniusTable truncated(std::uint64_t y) const;
};

/// Classifies every unramified p <= x. Work is split into contiguous ranges
/// across `workers` threads and merged in prime order, so the result does not
/// depend on the worker count.
FrobeniusTable classify_primes(const GaloisContext& ctx, std::uint64_t x, const PrimeList& primes,
                               unsigned workers = 1);

/// q is admissible when L and Q(zeta_q) are linearly disjoint. Decided by
/// gcd(q, m) = 1 for the abelian conductor m, unless overridden.
bool admissible_modulus(const GaloisContext& ctx, std::uint64_t q);

/// Fraction of classified primes whose Frobenius lies in C.
double chebotarev_fraction(const FrobeniusTable& table);

struct CycleTypeCount {
    CycleType cycle_type;
    std::size_t count;
    double fraction;
};

/// Empirical distribution of cycle types, sorted by cycle type.
std::vector<CycleTypeCount> cycle_type_frequencies(const FrobeniusTable& table);

}  // namespace chebvar
