#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "chebvar/arith.hpp"

namespace chebvar {

/// e^(2 pi i t) for an exact rational t = num/den in [0, 1).
class RootOfUnity {
public:
    RootOfUnity() = default;
    RootOfUnity(std::uint64_t num, std::uint64_t den);

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    bool is_one() const { return num_ == 0; }

    RootOfUnity operator*(const RootOfUnity& other) const;
    RootOfUnity conj() const;
    /// Exact for the fourth roots of unity.
    std::complex<double> to_complex() const;

    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// Exact test that a sum of roots of unity equals the integer n. With D the
/// common denominator and c_k the multiplicity of e(k/D), the sum equals n
/// iff sum c_k X^k - n is divisible by the cyclotomic polynomial Phi_D.
bool roots_sum_to(std::span<const RootOfUnity> roots, std::int64_t n);

/// Structure of (Z/qZ)^* as a product of cyclic groups with fixed generators:
/// the smallest primitive root for odd prime powers, -1 mod 4, and -1 and 5
/// mod 2^k for k >= 3. Discrete logarithm tables are built once.
class UnitGroup {
public:
    struct Generator {
        std::uint64_t residue;  // modulo the component modulus
        std::uint64_t order;
    };
    struct Component {
        std::uint64_t prime;
        unsigned exponent;
        std::uint64_t modulus;
        std::vector<Generator> generators;
        std::size_t first;                 // index of generators[0] in the flat list
        std::vector<std::uint32_t> dlog;   // residue -> packed logs, kNoLog for non-units
    };
    static constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

    explicit UnitGroup(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t size() const { return phi_; }
    /// Least common multiple of the generator orders.
    std::uint64_t exponent() const { return exponent_; }
    const std::vector<Component>& components() const { return components_; }
    std::size_t generator_count() const { return orders_.size(); }
    std::uint64_t generator_order(std::size_t i) const { return orders_[i]; }

    /// Discrete logs of a against every generator; false if gcd(a, q) > 1.
    bool logs(std::uint64_t a, std::span<std::uint64_t> out) const;

private:
    std::uint64_t q_;
    std::uint64_t phi_ = 1;
    std::uint64_t exponent_ = 1;
    std::vector<Component> components_;
    std::vector<std::uint64_t> orders_;
};

class DirichletCharacter {
public:
    /// exponents[i] in [0, order of generator i); chi(g_i) = e(exponents[i] / order_i).
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint64_t> exponents);

    std::uint64_t modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
    const std::vector<std::uint64_t>& component_exponents() const { return exponents_; }

    std::uint64_t order() const;
    bool is_principal() const;

    /// nullopt exactly when gcd(a, q) > 1.
    std::optional<RootOfUnity> value(std::uint64_t a) const;
    std::complex<double> operator()(std::uint64_t a) const;
    /// Values for every residue 0..q-1 (zero off the units).
    std::vector<std::complex<double>> value_table() const;

    DirichletCharacter conj() const;
    DirichletCharacter operator*(const DirichletCharacter& other) const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
        return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
    }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::uint64_t> exponents_;
};

/// Smallest q* | q such that chi is induced from a character mod q*.
std::uint64_t conductor(const DirichletCharacter& chi);

/// The primitive character mod conductor(chi) that induces chi.
DirichletCharacter induce_primitive(const DirichletCharacter& chi);

inline bool is_primitive(const DirichletCharacter& chi) { return conductor(chi) == chi.modulus(); }

/// All phi(q) characters mod q in mixed-radix order of their exponents; the
/// principal character comes first.
class CharacterGroup {
public:
    explicit CharacterGroup(std::uint64_t q);

    std::uint64_t modulus() const { return group_->modulus(); }
    std::size_t size() const { return characters_.size(); }
    const std::vector<DirichletCharacter>& characters() const { return characters_; }
    std::size_t principal_index() const { return 0; }
    const DirichletCharacter& principal() const { return characters_.front(); }

    /// Representatives of the characters mod q modulo the annihilator of the
    /// image of the Galois group of K(zeta_q)/K. Over K = Q the image is all
    /// of (Z/qZ)^*, so every character represents its own class.
    const std::vector<DirichletCharacter>& coset_representatives() const { return characters_; }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<DirichletCharacter> characters_;
};

inline CharacterGroup character_group(std::uint64_t q) { return CharacterGroup(q); }

struct LargeSieveResult {
    double lhs;
    double rhs;
};

/// lhs = sum_{q <= Q} q/phi(q) sum over primitive chi mod q of
///       |sum_{N0 < n <= N0+N} chi(n) a_n|^2,
/// rhs = (Q^2 + N - 1) sum |a_n|^2. a[i] is the coefficient of n = N0 + 1 + i.
LargeSieveResult large_sieve_check(std::uint64_t Q, std::uint64_t N0, std::uint64_t N,
                                   std::span<const std::complex<double>> a);

}  // namespace chebvar
