#include "chebvar/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <regex>
#include <thread>

#include "chebvar/arith.hpp"
#include "chebvar/errors.hpp"
#include "chebvar/kahan.hpp"

namespace chebvar {

namespace {

struct ClassPrimes {
    std::vector<std::uint64_t> p;
    std::vector<double> log_p;
};

ClassPrimes class_primes(const FrobeniusTable& table) {
    ClassPrimes cp;
    for (const auto& e : table.entries) {
        if (!e.in_class) continue;
        cp.p.push_back(e.p);
        cp.log_p.push_back(e.log_p);
    }
    return cp;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t n) {
    std::vector<std::uint32_t> spf(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (std::uint64_t k = i; k <= n; k += i)
            if (!spf[k]) spf[k] = static_cast<std::uint32_t>(i);
    }
    return spf;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t q, const std::vector<std::uint32_t>& spf) {
    std::vector<std::uint64_t> out;
    while (q > 1) {
        const std::uint64_t l = spf[q];
        out.push_back(l);
        while (q % l == 0) q /= l;
    }
    return out;
}

std::vector<char> admissible_flags(const GaloisContext& ctx, std::uint64_t Q) {
    std::vector<char> adm(Q + 1, 0);
    for (std::uint64_t q = 1; q <= Q; ++q) adm[q] = admissible_modulus(ctx, q) ? 1 : 0;
    return adm;
}

unsigned clamp_workers(unsigned workers, std::uint64_t jobs) {
    return static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(jobs, 1)));
}

// Residue buckets for one modulus at a time; reused across moduli.
class Buckets {
public:
    explicit Buckets(std::uint64_t max_q) : sums_(max_q + 1), seen_(max_q + 1, 0) {}

    // Bucket every class prime by p mod q. Residues advance incrementally
    // since consecutive primes are close compared to most moduli.
    void fill(std::uint64_t q, const ClassPrimes& cp) {
        std::uint64_t r = 0, prev = 0;
        for (std::size_t i = 0; i < cp.p.size(); ++i) {
            r += cp.p[i] - prev;
            prev = cp.p[i];
            if (r >= q) r %= q;
            if (!seen_[r]) {
                seen_[r] = 1;
                touched_.push_back(r);
            }
            sums_[r] += cp.log_p[i];
        }
    }

    // Residues sharing a factor with q: only 0 and primes dividing q can be
    // hit, and each such bucket holds a single prime.
    static bool excluded(std::uint64_t r, const std::vector<std::uint64_t>& factors) {
        return r == 0 ? true : std::find(factors.begin(), factors.end(), r) != factors.end();
    }

    const std::vector<std::uint64_t>& touched() const { return touched_; }
    bool seen(std::uint64_t r) const { return seen_[r]; }
    double sum(std::uint64_t r) const { return sums_[r].value(); }

    void reset() {
        for (auto r : touched_) {
            sums_[r] = CompensatedSum{};
            seen_[r] = 0;
        }
        touched_.clear();
    }

private:
    std::vector<CompensatedSum> sums_;
    std::vector<char> seen_;
    std::vector<std::uint64_t> touched_;
};

double bucket_variance_term(std::uint64_t q, double main, std::uint64_t phi, const ClassPrimes& cp,
                            const std::vector<std::uint64_t>& factors, Buckets& buckets) {
    buckets.fill(q, cp);
    CompensatedSum term;
    std::uint64_t nonempty = 0;
    for (auto r : buckets.touched()) {
        if (q > 1 && Buckets::excluded(r, factors)) continue;
        const double dev = buckets.sum(r) - main;
        term += dev * dev;
        ++nonempty;
    }
    term += static_cast<double>(phi - nonempty) * main * main;
    buckets.reset();
    return term.value();
}

template <typename Fn>
void for_each_modulus(std::uint64_t Q, unsigned workers, Fn&& fn) {
    workers = clamp_workers(workers, Q);
    if (workers == 1) {
        fn(0u, std::uint64_t{1}, std::uint64_t{1});
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { fn(w, std::uint64_t{w} + 1, std::uint64_t{workers}); });
    for (auto& t : pool) t.join();
}

void check_budget(double bytes, const ExperimentOptions& options, const std::string& what) {
    if (bytes > static_cast<double>(options.memory_budget)) {
        throw ResourceError(what + " needs about " + std::to_string(static_cast<std::uint64_t>(bytes)) +
                            " bytes, over the memory budget of " + std::to_string(options.memory_budget) +
                            "; lower Q or the worker count, or raise the budget");
    }
}

}  // namespace

bool ThetaTable::contains(std::uint64_t q) const { return std::binary_search(moduli_.begin(), moduli_.end(), q); }

std::span<const ThetaTable::Cell> ThetaTable::residues(std::uint64_t q) const {
    const auto it = std::lower_bound(moduli_.begin(), moduli_.end(), q);
    if (it == moduli_.end() || *it != q) throw DomainError("theta table has no modulus " + std::to_string(q));
    const auto i = static_cast<std::size_t>(it - moduli_.begin());
    return std::span<const Cell>(cells_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double ThetaTable::value(std::uint64_t q, std::uint64_t a) const {
    const auto cells = residues(q);
    const std::uint64_t rep = a % q == 0 ? q : a % q;
    const auto it = std::lower_bound(cells.begin(), cells.end(), rep,
                                     [](const Cell& c, std::uint64_t v) { return c.a < v; });
    if (it == cells.end() || it->a != rep) {
        throw DomainError("theta table: " + std::to_string(a) + " is not a unit mod " + std::to_string(q));
    }
    return it->theta;
}

double ThetaTable::main_term(std::uint64_t q) const {
    const auto it = std::lower_bound(moduli_.begin(), moduli_.end(), q);
    if (it == moduli_.end() || *it != q) throw DomainError("theta table has no modulus " + std::to_string(q));
    return density_ * static_cast<double>(x_) / static_cast<double>(phi_[it - moduli_.begin()]);
}

ThetaTable theta_table(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                       const ExperimentOptions& options) {
    if (Q == 0) throw DomainError("theta_table: Q must be at least 1");
    const auto phi = totients_up_to(Q);
    const auto adm = admissible_flags(ctx, Q);

    ThetaTable out;
    out.x_ = table.x;
    out.Q_ = Q;
    out.density_ = ctx.density();
    double cells = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        if (!adm[q]) continue;
        out.moduli_.push_back(q);
        out.phi_.push_back(phi[q]);
        cells += static_cast<double>(phi[q]);
    }
    check_budget(cells * sizeof(ThetaTable::Cell) + static_cast<double>(Q) * 24.0, options, "theta table");

    const ClassPrimes cp = class_primes(table);
    Buckets buckets(Q);
    out.cells_.reserve(static_cast<std::size_t>(cells));
    out.offsets_.push_back(0);
    for (std::uint64_t q : out.moduli_) {
        buckets.fill(q, cp);
        if (q == 1) {
            out.cells_.push_back({1, buckets.seen(0) ? buckets.sum(0) : 0.0});
        } else {
            for (std::uint64_t a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                out.cells_.push_back({a, buckets.seen(a) ? buckets.sum(a) : 0.0});
            }
        }
        buckets.reset();
        out.offsets_.push_back(out.cells_.size());
    }
    return out;
}

TwistedError twisted_error(const GaloisContext& ctx, const FrobeniusTable& table, const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    const auto values = chi.value_table();
    CompensatedComplexSum sum;
    for (const auto& e : table.entries) {
        if (e.in_class) sum += values[e.p % q] * e.log_p;
    }
    if (chi.is_principal()) sum += std::complex<double>(-ctx.density() * static_cast<double>(table.x), 0.0);
    return {chi, sum.value()};
}

double reconstruct_theta(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t q, std::uint64_t a,
                         const CharacterGroup& group) {
    if (group.modulus() != q) throw DomainError("reconstruct_theta: character group has the wrong modulus");
    if (std::gcd(a, q) != 1) {
        throw DomainError("reconstruct_theta: gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") > 1");
    }
    if (!admissible_modulus(ctx, q)) throw DomainError("reconstruct_theta: q = " + std::to_string(q) + " is not admissible");
    CompensatedComplexSum sum;
    for (const auto& chi : group.coset_representatives())
        sum += std::conj(chi(a)) * twisted_error(ctx, table, chi).value;
    const double phi = static_cast<double>(group.size());
    return sum.value().real() / phi + ctx.density() * static_cast<double>(table.x) / phi;
}

std::vector<double> variance_terms_bucketed(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                                            const ExperimentOptions& options) {
    if (Q == 0) throw DomainError("variance: Q must be at least 1");
    const unsigned workers = clamp_workers(options.workers, Q);
    check_budget(static_cast<double>(workers) * static_cast<double>(Q + 1) * (sizeof(CompensatedSum) + 9) +
                     static_cast<double>(Q + 1) * 20.0,
                 options, "variance buckets");

    const auto phi = totients_up_to(Q);
    const auto spf = smallest_prime_factors(Q);
    const auto adm = admissible_flags(ctx, Q);
    const ClassPrimes cp = class_primes(table);
    const double dx = ctx.density() * static_cast<double>(table.x);

    std::vector<double> terms(Q + 1, 0.0);
    for_each_modulus(Q, workers, [&](unsigned, std::uint64_t first, std::uint64_t stride) {
        Buckets buckets(Q);
        for (std::uint64_t q = first; q <= Q; q += stride) {
            if (!adm[q]) continue;
            const double main = dx / static_cast<double>(phi[q]);
            terms[q] = bucket_variance_term(q, main, phi[q], cp, distinct_prime_factors(q, spf), buckets);
        }
    });
    return terms;
}

double variance_bucketed(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                         const ExperimentOptions& options) {
    CompensatedSum total;
    for (double t : variance_terms_bucketed(ctx, table, Q, options)) total += t;
    return total.value();
}

std::vector<double> variance_terms_pairpath(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                                            const ExperimentOptions& options) {
    if (Q == 0) throw DomainError("variance: Q must be at least 1");
    const ClassPrimes cp = class_primes(table);
    const std::uint64_t n = cp.p.size();
    const std::uint64_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    if (pairs > options.pair_budget) {
        throw ResourceError("variance_pairpath: " + std::to_string(pairs) + " prime pairs exceed the pair budget of " +
                            std::to_string(options.pair_budget) + "; use the bucketed path for this x");
    }

    const auto phi = totients_up_to(Q);
    const auto spf = smallest_prime_factors(Q);
    const auto adm = admissible_flags(ctx, Q);
    const std::uint64_t max_diff = n < 2 ? 0 : cp.p.back() - cp.p.front();

    // Admissible divisors q <= Q of every possible difference d, CSR layout.
    double entries = 0;
    for (std::uint64_t q = 1; q <= Q; ++q)
        if (adm[q]) entries += static_cast<double>(max_diff / q);
    check_budget(entries * 4.0 + static_cast<double>(max_diff + 2) * 8.0 + static_cast<double>(Q + 1) * 48.0, options,
                 "divisor lists");
    std::vector<std::size_t> start(max_diff + 2, 0);
    for (std::uint64_t q = 1; q <= Q; ++q) {
        if (!adm[q]) continue;
        for (std::uint64_t d = q; d <= max_diff; d += q) ++start[d + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<std::uint32_t> divisors(start.back());
    {
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (std::uint64_t q = 1; q <= Q; ++q) {
            if (!adm[q]) continue;
            for (std::uint64_t d = q; d <= max_diff; d += q) divisors[fill[d]++] = static_cast<std::uint32_t>(q);
        }
    }

    // Off-diagonal: 2 sum_{p1 < p2, q | p2 - p1} log p1 log p2.
    std::vector<CompensatedSum> cross(Q + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint64_t d = cp.p[j] - cp.p[i];
            const double w = 2.0 * cp.log_p[i] * cp.log_p[j];
            for (std::size_t k = start[d]; k < start[d + 1]; ++k) cross[divisors[k]] += w;
        }
    }

    CompensatedSum all_sq, all_lin;
    for (double l : cp.log_p) {
        all_sq += l * l;
        all_lin += l;
    }

    const double dx = ctx.density() * static_cast<double>(table.x);
    std::vector<double> terms(Q + 1, 0.0);
    for (std::uint64_t q = 1; q <= Q; ++q) {
        if (!adm[q]) continue;
        // Diagonal and linear sums exclude class primes dividing q.
        CompensatedSum sq = all_sq, lin = all_lin;
        for (std::uint64_t l : distinct_prime_factors(q, spf)) {
            const auto it = std::lower_bound(cp.p.begin(), cp.p.end(), l);
            if (it == cp.p.end() || *it != l) continue;
            const double lg = cp.log_p[it - cp.p.begin()];
            sq -= lg * lg;
            lin -= lg;
        }
        const double main = dx / static_cast<double>(phi[q]);
        CompensatedSum term;
        term += sq.value();
        term += cross[q].value();
        term += -2.0 * main * lin.value();
        term += static_cast<double>(phi[q]) * main * main;
        terms[q] = term.value();
    }
    return terms;
}

double variance_pairpath(const GaloisContext& ctx, const FrobeniusTable& table, std::uint64_t Q,
                         const ExperimentOptions& options) {
    CompensatedSum total;
    for (double t : variance_terms_pairpath(ctx, table, Q, options)) total += t;
    return total.value();
}

std::uint64_t QRule::resolve(std::uint64_t x) const {
    switch (kind) {
        case Kind::Explicit: return value;
        case Kind::Full: return x;
        case Kind::LogPower: {
            if (x < 3) return 1;
            const double lx = std::log(static_cast<double>(x));
            const double q = std::floor(static_cast<double>(x) / std::pow(lx, power));
            return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(q));
        }
    }
    return x;
}

std::string QRule::to_string() const {
    switch (kind) {
        case Kind::Explicit: return std::to_string(value);
        case Kind::Full: return "full";
        case Kind::LogPower: {
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, power);
            return "x/(log x)^" + std::string(buf, res.ptr);
        }
    }
    return "full";
}

QRule QRule::parse(const std::string& text) {
    static const std::regex log_power(R"(\s*x\s*/\s*\(\s*log\s*x\s*\)\s*\^\s*([0-9]+(\.[0-9]+)?)\s*)");
    static const std::regex integer(R"(\s*([0-9]+)\s*)");
    std::smatch m;
    if (text == "full") return {QRule::Kind::Full, 0, 0.0};
    if (std::regex_match(text, m, log_power)) return {QRule::Kind::LogPower, 0, std::stod(m[1].str())};
    if (std::regex_match(text, m, integer)) {
        const auto v = std::stoull(m[1].str());
        if (v == 0) throw ConfigError("Q must be positive");
        return {QRule::Kind::Explicit, v, 0.0};
    }
    throw ConfigError("unrecognised Q rule '" + text + "' (expected an integer, 'full', or 'x/(log x)^k')");
}

namespace {

VarianceRow make_row(double density, std::uint64_t x, std::uint64_t Q, double V) {
    const double xd = static_cast<double>(x), qd = static_cast<double>(Q);
    const double lx = std::log(xd);
    VarianceRow row{x, Q, V, xd * qd * lx, 0.0, 0.0, 0.0};
    row.ratio = row.xQlogx > 0 ? V / row.xQlogx : 0.0;
    row.thm2_main = density * xd * qd * lx - density * density * xd * qd * std::log(xd / qd);
    row.residual = V - row.thm2_main;
    return row;
}

FrobeniusTable table_for(const FrobeniusTable& table, std::uint64_t x) {
    if (x > table.x) {
        throw DomainError("x = " + std::to_string(x) + " exceeds the classified range " + std::to_string(table.x));
    }
    return x == table.x ? table : table.truncated(x);
}

}  // namespace

VarianceReport variance_report(const GaloisContext& ctx, const FrobeniusTable& table,
                               std::span<const std::uint64_t> xs, const QRule& rule, const ExperimentOptions& options) {
    VarianceReport report;
    for (std::uint64_t x : xs) {
        const std::uint64_t Q = rule.resolve(x);
        const double V = variance_bucketed(ctx, table_for(table, x), Q, options);
        report.rows.push_back(make_row(ctx.density(), x, Q, V));
    }
    return report;
}

VarianceReport thm1_report(const GaloisContext& ctx, const FrobeniusTable& table, std::span<const std::uint64_t> xs,
                           const QRule& rule, double M, const ExperimentOptions& options) {
    if (!(M > 0)) throw ConfigError("M must be positive");
    VarianceReport report;
    for (std::uint64_t x : xs) {
        if (x < 3) throw ConfigError("thm1: x must be at least 3");
        const std::uint64_t Q = rule.resolve(x);
        const double lower = static_cast<double>(x) * std::pow(std::log(static_cast<double>(x)), -M);
        if (Q > x || static_cast<double>(Q) < lower) {
            throw ConfigError("thm1: Q = " + std::to_string(Q) + " is outside [x (log x)^-M, x] = [" +
                              std::to_string(lower) + ", " + std::to_string(x) + "] for x = " + std::to_string(x));
        }
        const double V = variance_bucketed(ctx, table_for(table, x), Q, options);
        report.rows.push_back(make_row(ctx.density(), x, Q, V));
    }
    return report;
}

VarianceReport thm2_report(const GaloisContext& ctx, const FrobeniusTable& table, std::span<const std::uint64_t> xs,
                           const QRule& rule, const ExperimentOptions& options) {
    if (!ctx.totally_non_abelian()) {
        throw DomainError("thm2 requires a totally non-Abelian extension (abelian_conductor m = 1), but m = " +
                          std::to_string(ctx.abelian_conductor()) +
                          (ctx.abelian_conductor() == 1 ? " with inadmissible overrides" : ""));
    }
    if (xs.size() < 3) throw DomainError("thm2 needs at least three x values for the fit");

    VarianceReport report;
    for (std::uint64_t x : xs) {
        if (x < 3) throw ConfigError("thm2: x must be at least 3");
        const std::uint64_t Q = rule.resolve(x);
        if (Q > x) throw ConfigError("thm2: Q = " + std::to_string(Q) + " exceeds x = " + std::to_string(x));
        const double V = variance_bucketed(ctx, table_for(table, x), Q, options);
        report.rows.push_back(make_row(ctx.density(), x, Q, V));
    }

    const bool full = std::all_of(report.rows.begin(), report.rows.end(), [](const VarianceRow& r) { return r.Q == r.x; });
    if (full) {
        // V / x^2 = slope * log x + intercept.
        const double n = static_cast<double>(report.rows.size());
        CompensatedSum su, sv;
        for (const auto& r : report.rows) {
            su += std::log(static_cast<double>(r.x));
            sv += r.V / (static_cast<double>(r.x) * static_cast<double>(r.x));
        }
        const double ubar = su.value() / n, vbar = sv.value() / n;
        CompensatedSum suu, suv;
        for (const auto& r : report.rows) {
            const double du = std::log(static_cast<double>(r.x)) - ubar;
            suu += du * du;
            suv += du * (r.V / (static_cast<double>(r.x) * static_cast<double>(r.x)) - vbar);
        }
        if (suu.value() <= 0) throw DomainError("thm2: x values must be distinct");
        report.fitted_slope = suv.value() / suu.value();
        report.fitted_intercept = vbar - *report.fitted_slope * ubar;
    } else {
        CompensatedSum num, den;
        for (const auto& r : report.rows) {
            const double xq = static_cast<double>(r.x) * static_cast<double>(r.Q);
            num += r.residual * xq;
            den += xq * xq;
        }
        report.fitted_c_prime = num.value() / den.value();
    }
    return report;
}

PsiGap psi_gap_check(const GaloisContext& ctx, std::uint64_t x) {
    if (x < 2) throw DomainError("psi_gap_check: x must be at least 2");
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    std::uint64_t r = root + 1;
    while (r * r > x) --r;
    const PrimeList primes = sieve_primes(r);

    CompensatedSum gap;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t p = primes.primes[i];
        if (ctx.is_ramified(p)) continue;
        const CycleType t = ddf_cycle_type(ctx.polynomial(), p);
        std::uint64_t pm = p * p;
        for (std::uint64_t m = 2;; ++m) {
            if (ctx.in_class(t.power(m))) gap += primes.logs[i];
            if (__builtin_mul_overflow(pm, p, &pm) || pm > x) break;
        }
    }
    const double xd = static_cast<double>(x);
    const double bound = std::sqrt(xd) * std::log(xd) + 2.0 / static_cast<double>(ctx.group_order()) * ctx.log_disc_L();
    return {gap.value(), bound};
}

}  // namespace chebvar
