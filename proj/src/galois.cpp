#include "chebvar/galois.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "chebvar/arith.hpp"
#include "chebvar/errors.hpp"

namespace chebvar {

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

Rational Rational::parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const auto n = std::stoll(text, &used);
            if (used != text.size()) throw DomainError("trailing characters");
            return make(n, 1);
        }
        const std::string a = text.substr(0, slash), b = text.substr(slash + 1);
        const auto n = std::stoll(a, &used);
        if (used != a.size()) throw DomainError("trailing characters");
        const auto d = std::stoll(b, &used);
        if (used != b.size()) throw DomainError("trailing characters");
        return make(n, d);
    } catch (const std::logic_error&) {
        throw DomainError("not a rational number: '" + text + "'");
    } catch (const DomainError&) {
        throw DomainError("not a rational number: '" + text + "'");
    }
}

std::string Rational::to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

double GaloisContext::log_disc_L() const {
    if (spec_.log_disc_L) return *spec_.log_disc_L;
    const double mag = std::fabs(static_cast<double>(disc_));
    return mag <= 1.0 ? 0.0 : std::log(mag);
}

bool GaloisContext::is_ramified(std::uint64_t p) const {
    return std::binary_search(ramified_.begin(), ramified_.end(), p);
}

bool GaloisContext::in_class(const CycleType& t) const {
    return std::binary_search(spec_.class_spec.begin(), spec_.class_spec.end(), t);
}

bool GaloisContext::totally_non_abelian() const {
    if (spec_.abelian_conductor != 1) return false;
    return std::none_of(spec_.admissibility_overrides.begin(), spec_.admissibility_overrides.end(),
                        [](const auto& kv) { return !kv.second; });
}

GaloisContext build_context(ContextSpec spec) {
    IntPolynomial poly(spec.polynomial);
    const int n = poly.degree();

    if (spec.group_order == 0) throw DomainError("group_order must be positive");
    if (spec.abelian_conductor == 0) throw DomainError("abelian_conductor must be positive");
    if (spec.class_spec.empty()) throw DomainError("class must contain at least one cycle type");
    for (const auto& t : spec.class_spec) {
        if (t.degree() != n) {
            throw DomainError("cycle type " + t.to_string() + " is not a partition of the degree " +
                              std::to_string(n));
        }
    }
    std::sort(spec.class_spec.begin(), spec.class_spec.end());
    spec.class_spec.erase(std::unique(spec.class_spec.begin(), spec.class_spec.end()), spec.class_spec.end());

    const Rational d = Rational::make(spec.class_density.num, spec.class_density.den);
    if (d.num <= 0 || d.num > d.den) throw DomainError("class density " + d.to_string() + " is outside (0, 1]");
    if (spec.group_order % static_cast<std::uint64_t>(d.den) != 0) {
        throw DomainError("class density " + d.to_string() + " has a denominator not dividing |G| = " +
                          std::to_string(spec.group_order));
    }
    spec.class_density = d;
    if (spec.log_disc_L && !(*spec.log_disc_L >= 0.0)) throw DomainError("log_disc_L must be nonnegative");
    for (const auto& [q, _] : spec.admissibility_overrides) {
        if (q == 0) throw DomainError("admissibility override for q = 0");
    }

    GaloisContext ctx(std::move(spec), poly);
    ctx.disc_ = poly.discriminant();
    if (ctx.disc_ == 0) throw DomainError("polynomial " + poly.to_string() + " is not squarefree");
    const std::uint64_t mag = ctx.disc_ < 0 ? 0 - static_cast<std::uint64_t>(ctx.disc_)
                                            : static_cast<std::uint64_t>(ctx.disc_);
    for (const auto& pp : factor_integer(mag)) ctx.ramified_.push_back(pp.prime);
    return ctx;
}

FrobeniusTable FrobeniusTable::truncated(std::uint64_t y) const {
    if (y > x) throw DomainError("truncated: bound exceeds the table range");
    FrobeniusTable out;
    out.x = y;
    auto end = std::upper_bound(entries.begin(), entries.end(), y,
                                [](std::uint64_t v, const FrobeniusEntry& e) { return v < e.p; });
    out.entries.assign(entries.begin(), end);
    std::copy_if(skipped_ramified.begin(), skipped_ramified.end(), std::back_inserter(out.skipped_ramified),
                 [y](std::uint64_t p) { return p <= y; });
    return out;
}

FrobeniusTable classify_primes(const GaloisContext& ctx, std::uint64_t x, const PrimeList& primes,
                               unsigned workers) {
    if (primes.limit < x) throw DomainError("classify_primes: prime list does not cover [2, x]");
    FrobeniusTable table;
    table.x = x;
    const auto end = std::upper_bound(primes.primes.begin(), primes.primes.end(), x);
    const std::size_t count = static_cast<std::size_t>(end - primes.primes.begin());

    std::vector<std::optional<FrobeniusEntry>> slots(count);
    auto classify_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t p = primes.primes[i];
            if (ctx.is_ramified(p)) continue;
            CycleType t = ddf_cycle_type(ctx.polynomial(), p);
            const bool in_c = ctx.in_class(t);
            slots[i] = FrobeniusEntry{p, primes.logs[i], std::move(t), in_c};
        }
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        classify_range(0, count);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(classify_range, count * w / workers, count * (w + 1) / workers);
        for (auto& t : pool) t.join();
    }

    table.entries.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (slots[i])
            table.entries.push_back(std::move(*slots[i]));
        else
            table.skipped_ramified.push_back(primes.primes[i]);
    }
    return table;
}

bool admissible_modulus(const GaloisContext& ctx, std::uint64_t q) {
    if (q == 0) throw DomainError("admissible_modulus: q must be positive");
    const auto& overrides = ctx.spec().admissibility_overrides;
    if (auto it = overrides.find(q); it != overrides.end()) return it->second;
    return std::gcd(q, ctx.abelian_conductor()) == 1;
}

double chebotarev_fraction(const FrobeniusTable& table) {
    if (table.entries.empty()) throw DomainError("chebotarev_fraction: empty table");
    const auto hits = std::count_if(table.entries.begin(), table.entries.end(),
                                    [](const FrobeniusEntry& e) { return e.in_class; });
    return static_cast<double>(hits) / static_cast<double>(table.entries.size());
}

std::vector<CycleTypeCount> cycle_type_frequencies(const FrobeniusTable& table) {
    std::map<CycleType, std::size_t> counts;
    for (const auto& e : table.entries) ++counts[e.cycle_type];
    std::vector<CycleTypeCount> out;
    const double total = static_cast<double>(table.entries.size());
    for (const auto& [t, c] : counts) out.push_back({t, c, static_cast<double>(c) / total});
    return out;
}

}  // namespace chebvar
