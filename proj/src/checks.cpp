#include "chebvar/checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "chebvar/characters.hpp"
#include "chebvar/errors.hpp"
#include "chebvar/kahan.hpp"
#include "chebvar/report.hpp"

namespace chebvar {

bool nearly_equal(double a, double b, double rel, double abs_floor) {
    return std::fabs(a - b) <= rel * std::max(std::fabs(a), std::fabs(b)) + abs_floor;
}

namespace {

double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

CheckResult cycle_type_partition(const GaloisContext& ctx, const FrobeniusTable& table) {
    const int n = ctx.polynomial().degree();
    for (const auto& e : table.entries) {
        if (e.cycle_type.degree() != n)
            return {"cycle_type_partition", false, "p = " + std::to_string(e.p) + " gives " + e.cycle_type.to_string()};
    }
    return {"cycle_type_partition", true, std::to_string(table.entries.size()) + " primes"};
}

CheckResult theta_partition(const GaloisContext& ctx, const FrobeniusTable& table, const ExperimentOptions& opt) {
    const ThetaTable theta = theta_table(ctx, table, 50, opt);
    if (!theta.contains(1)) return {"theta_partition", true, "q = 1 overridden as inadmissible; skipped"};
    const double total = theta.value(1, 1);
    for (auto q : theta.moduli()) {
        CompensatedSum s;
        for (const auto& c : theta.residues(q)) s += c.theta;
        for (const auto& e : table.entries)
            if (e.in_class && q % e.p == 0) s += e.log_p;
        if (!nearly_equal(s.value(), total))
            return {"theta_partition", false, "q = " + std::to_string(q) + ": " + format_double(s.value()) +
                                                  " vs " + format_double(total)};
    }
    return {"theta_partition", true, std::to_string(theta.moduli().size()) + " moduli"};
}

CheckResult reconstruction(const GaloisContext& ctx, const FrobeniusTable& table, const ExperimentOptions& opt) {
    const ThetaTable theta = theta_table(ctx, table, 30, opt);
    std::size_t checked = 0;
    for (auto q : theta.moduli()) {
        const CharacterGroup group(q);
        for (const auto& c : theta.residues(q)) {
            const double rebuilt = reconstruct_theta(ctx, table, q, c.a, group);
            if (!nearly_equal(rebuilt, c.theta))
                return {"orthogonality_reconstruction", false,
                        "q = " + std::to_string(q) + ", a = " + std::to_string(c.a) + ": " + format_double(rebuilt) +
                            " vs " + format_double(c.theta)};
            ++checked;
        }
    }
    return {"orthogonality_reconstruction", true, std::to_string(checked) + " residue classes"};
}

CheckResult cross_path(const GaloisContext& ctx, const FrobeniusTable& table, const ExperimentOptions& opt) {
    std::ostringstream detail;
    const std::pair<std::uint64_t, std::uint64_t> cases[] = {{std::min<std::uint64_t>(table.x, 1000), 50},
                                                             {table.x, 100}};
    for (const auto& [x, Q] : cases) {
        const FrobeniusTable t = table.truncated(x);
        const double a = variance_bucketed(ctx, t, Q, opt);
        const double b = variance_pairpath(ctx, t, Q, opt);
        if (!detail.str().empty()) detail << "; ";
        detail << "(x=" << x << ",Q=" << Q << ") " << format_double(a);
        if (!nearly_equal(a, b))
            return {"variance_cross_path", false, detail.str() + " vs pair path " + format_double(b)};
    }
    return {"variance_cross_path", true, detail.str()};
}

CheckResult monotone(const GaloisContext& ctx, const FrobeniusTable& table, const ExperimentOptions& opt) {
    const auto terms = variance_terms_bucketed(ctx, table, 100, opt);
    CompensatedSum running;
    double prev = 0.0;
    for (std::size_t q = 1; q < terms.size(); ++q) {
        if (terms[q] < 0) return {"variance_monotone_in_Q", false, "negative term at q = " + std::to_string(q)};
        running += terms[q];
        if (running.value() < prev)
            return {"variance_monotone_in_Q", false, "V decreased at Q = " + std::to_string(q)};
        prev = running.value();
    }
    return {"variance_monotone_in_Q", true, "Q <= 100"};
}

CheckResult psi_gap(const GaloisContext& ctx, std::uint64_t x) {
    const PsiGap g = psi_gap_check(ctx, x);
    return {"psi_theta_gap", g.gap <= g.bound, "gap " + format_double(g.gap) + ", bound " + format_double(g.bound)};
}

CheckResult character_orthogonality() {
    for (std::uint64_t q = 1; q <= 50; ++q) {
        const CharacterGroup group(q);
        const auto phi = static_cast<std::int64_t>(group.size());
        for (const auto& chi : group.characters()) {
            std::vector<RootOfUnity> column;
            for (std::uint64_t a = 0; a < q; ++a)
                if (auto v = chi.value(a)) column.push_back(*v);
            if (!roots_sum_to(column, chi.is_principal() ? phi : 0))
                return {"character_orthogonality", false, "column sum wrong mod " + std::to_string(q)};
        }
        for (std::uint64_t a = 1; a <= q; ++a) {
            for (std::uint64_t b = 1; b <= q; ++b) {
                std::vector<RootOfUnity> terms;
                for (const auto& chi : group.characters()) {
                    const auto va = chi.value(a), vb = chi.value(b);
                    if (!va || !vb) break;
                    terms.push_back(va->conj() * *vb);
                }
                if (terms.size() != group.size()) continue;
                if (!roots_sum_to(terms, a % q == b % q ? phi : 0)) {
                    return {"character_orthogonality", false,
                            "q = " + std::to_string(q) + ", a = " + std::to_string(a) + ", b = " + std::to_string(b)};
                }
            }
        }
    }
    return {"character_orthogonality", true, "q <= 50, exact"};
}

}  // namespace

CheckResult large_sieve_battery(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t N0 = rng() % 1000;
        std::vector<std::complex<double>> a(50);
        for (auto& v : a) v = {2.0 * unit_interval(rng) - 1.0, 2.0 * unit_interval(rng) - 1.0};
        const auto r = large_sieve_check(20, N0, a.size(), a);
        if (!(r.lhs <= r.rhs)) {
            return {"large_sieve", false,
                    "trial " + std::to_string(trial) + ": " + format_double(r.lhs) + " > " + format_double(r.rhs)};
        }
        worst = std::max(worst, r.lhs / r.rhs);
    }
    const std::complex<double> one[] = {{1.0, 0.0}};
    const auto eq = large_sieve_check(1, 0, 1, one);
    if (!nearly_equal(eq.lhs, 1.0) || !nearly_equal(eq.rhs, 1.0))
        return {"large_sieve", false, "Q = 1 equality case: " + format_double(eq.lhs) + " vs " + format_double(eq.rhs)};
    return {"large_sieve", true, "max lhs/rhs " + format_double(worst)};
}

std::vector<CheckResult> run_property_checks(const GaloisContext& ctx, const CheckOptions& options) {
    const std::uint64_t x = std::clamp<std::uint64_t>(options.x, 2, 10'000);
    const PrimeList primes = sieve_primes(x);
    const FrobeniusTable table = classify_primes(ctx, x, primes, options.experiment.workers);
    const auto& opt = options.experiment;

    std::vector<CheckResult> out;
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            out.push_back(fn());
        } catch (const Error& e) {
            out.push_back({name, false, e.what()});
        }
    };
    guarded("cycle_type_partition", [&] { return cycle_type_partition(ctx, table); });
    guarded("theta_partition", [&] { return theta_partition(ctx, table, opt); });
    guarded("orthogonality_reconstruction", [&] { return reconstruction(ctx, table, opt); });
    guarded("variance_cross_path", [&] { return cross_path(ctx, table, opt); });
    guarded("variance_monotone_in_Q", [&] { return monotone(ctx, table, opt); });
    guarded("psi_theta_gap", [&] { return psi_gap(ctx, x); });
    guarded("character_orthogonality", [&] { return character_orthogonality(); });
    guarded("large_sieve", [&] { return large_sieve_battery(options.seed); });
    return out;
}

}  // namespace chebvar
