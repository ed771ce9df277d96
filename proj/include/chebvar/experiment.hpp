#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chebvar/characters.hpp"
#include "chebvar/galois.hpp"

namespace chebvar {

struct ExperimentOptions {
    unsigned workers = 1;
    std::size_t memory_budget = std::size_t{2} << 30;
    /// Cap on prime pairs enumerated by variance_pairpath.
    std::uint64_t pair_budget = 400'000'000;
};

/// theta(x; C, q, a) for every admissible q <= Q and every a in (Z/qZ)^*.
class ThetaTable {
public:
    struct Cell {
        std::uint64_t a;  // representative in [1, q]
        double theta;
    };

    std::uint64_t x() const { return x_; }
    std::uint64_t Q() const { return Q_; }
    /// Admissible moduli, ascending.
    const std::vector<std::uint64_t>& moduli() const { return moduli_; }
    bool contains(std::uint64_t q) const;
    std::span<const Cell> residues(std::uint64_t q) const;
    /// Throws DomainError when q is absent or gcd(a, q) > 1.
    double value(std::uint64_t q, std::uint64_t a) const;
    /// (|C|/|G|) x / phi(q).
    double main_term(std::uint64_t q) const;

private:
    friend ThetaTable theta_table(const GaloisContext&, const FrobeniusTable&, std::uint64_t,
                                  const ExperimentOptions&);
    std::uint64_t x_ = 0;
    std::uint64_t Q_ = 0;
    double density_ = 1.0;
    std::vector<std::uint64_t> moduli_;
    std::vector<std::uint64_t> phi_;      // parallel to moduli_
    std::vector<std::size_t> offsets_;    // moduli_.size() + 1 entries into cells_
    std::vector<Cell> cells_;
};

/// Buckets every in-C prime p not dividing q by p mod q, with compensated
/// sums. Throws ResourceError if the sum of phi(q) cells exceeds the budget.
ThetaTable theta_table(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                       const ExperimentOptions& options = {});

struct TwistedError {
    DirichletCharacter chi;
    std::complex<double> value;
};

/// E(x; delta_C (x) chi): sum of chi(p) log p over in-C primes, minus
/// (|C|/|G|) x when chi is principal.
TwistedError twisted_error(const GaloisContext& ctx, const FrobeniusTable& table, const DirichletCharacter& chi);

/// theta(x; C, q, a) rebuilt from the twisted errors via orthogonality:
/// main term + (1/phi(q)) sum_chi conj(chi(a)) E(chi).
double reconstruct_theta(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t q,
                         std::uint64_t a, const CharacterGroup& group);

/// Per-modulus contributions sum_a (theta(x;C,q,a) - main)^2, indexed by q
/// (index 0 unused, inadmissible q hold 0). Computed by residue bucketing.
std::vector<double> variance_terms_bucketed(const GaloisContext& ctx, const FrobeniusTable& table,
                                            std::uint64_t Q, const ExperimentOptions& options = {});

/// V(x, Q) summed over admissible q <= Q in increasing q.
double variance_bucketed(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                         const ExperimentOptions& options = {});

/// Same quantity by switching divisors: sum_a theta^2 is expanded over prime
/// pairs whose difference q divides. Quadratic in pi(x); throws
/// ResourceError above options.pair_budget.
std::vector<double> variance_terms_pairpath(const GaloisContext& ctx, const FrobeniusTable& table,
                                            std::uint64_t Q, const ExperimentOptions& options = {});
double variance_pairpath(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                         const ExperimentOptions& options = {});

/// How Q is chosen for a given x.
struct QRule {
    enum class Kind { Explicit, LogPower, Full };
    Kind kind = Kind::Full;
    std::uint64_t value = 0;  // Explicit
    double power = 0.0;       // LogPower: Q = floor(x / (log x)^power)

    std::uint64_t resolve(std::uint64_t x) const;
    std::string to_string() const;
    /// "full", "x/(log x)^k", or a positive integer.
    static QRule parse(const std::string& text);

    friend bool operator==(const QRule&, const QRule&) = default;
};

struct VarianceRow {
    std::uint64_t x;
    std::uint64_t Q;
    double V;
    double xQlogx;
    double ratio;      // V / (x Q log x)
    double thm2_main;  // d x Q log x - d^2 x Q log(x/Q), d = |C|/|G|
    double residual;   // V - thm2_main
};

struct VarianceReport {
    std::vector<VarianceRow> rows;
    /// Least-squares fit of V/x^2 against log x (full range).
    std::optional<double> fitted_slope;
    std::optional<double> fitted_intercept;
    /// Least-squares c' in residual ~ c' x Q (partial range).
    std::optional<double> fitted_c_prime;
};

/// One row per x with Q from the rule, without range validation.
VarianceReport variance_report(const GaloisContext& ctx, const FrobeniusTable& table,
                               std::span<const std::uint64_t> xs, const QRule& rule,
                               const ExperimentOptions& options = {});

/// One row per x, with Q from the rule. Throws ConfigError unless
/// x (log x)^-M <= Q <= x.
VarianceReport thm1_report(const GaloisContext& ctx, const FrobeniusTable& table,
                           std::span<const std::uint64_t> xs, const QRule& rule, double M,
                           const ExperimentOptions& options = {});

/// Requires a totally non-Abelian context (abelian conductor 1) and at least
/// three x values; throws DomainError otherwise.
VarianceReport thm2_report(const GaloisContext& ctx, const FrobeniusTable& table,
                           std::span<const std::uint64_t> xs, const QRule& rule = {},
                           const ExperimentOptions& options = {});

struct PsiGap {
    double gap;
    double bound;
};

/// |psi - theta| over unramified in-C prime powers p^m <= x with m >= 2,
/// classified by the cycle type of Frobenius^m, against
/// sqrt(x) log x + (2/|G|) log|d_L|.
PsiGap psi_gap_check(const GaloisContext& ctx, std::uint64_t x);

}  // namespace chebvar
