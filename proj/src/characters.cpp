#include "chebvar/characters.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <string>

#include "chebvar/errors.hpp"
#include "chebvar/kahan.hpp"

namespace chebvar {

RootOfUnity::RootOfUnity(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw DomainError("RootOfUnity: zero denominator");
    num %= den;
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& other) const {
    const std::uint64_t den = lcm_checked(den_, other.den_);
    const unsigned __int128 sum =
        static_cast<unsigned __int128>(num_) * (den / den_) + static_cast<unsigned __int128>(other.num_) * (den / other.den_);
    return RootOfUnity(static_cast<std::uint64_t>(sum % den), den);
}

RootOfUnity RootOfUnity::conj() const { return RootOfUnity((den_ - num_) % den_, den_); }

std::complex<double> RootOfUnity::to_complex() const {
    switch (den_) {
        case 1: return {1.0, 0.0};
        case 2: return {-1.0, 0.0};
        case 4: return num_ == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
        default: break;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return std::polar(1.0, angle);
}

namespace {

using IntPoly = std::vector<std::int64_t>;  // ascending

// Exact quotient of a by a monic b.
IntPoly divide_exact(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    IntPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const std::int64_t c = a[i];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

IntPoly cyclotomic_polynomial(std::uint64_t n) {
    IntPoly p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (std::uint64_t d = 1; d < n; ++d)
        if (n % d == 0) p = divide_exact(std::move(p), cyclotomic_polynomial(d));
    return p;
}

}  // namespace

bool roots_sum_to(std::span<const RootOfUnity> roots, std::int64_t n) {
    std::uint64_t D = 1;
    for (const auto& r : roots) D = lcm_checked(D, r.den());
    if (D > 4096) throw ResourceError("roots_sum_to: common denominator too large");
    IntPoly counts(D, 0);
    for (const auto& r : roots) ++counts[r.num() * (D / r.den())];
    counts[0] -= n;
    const IntPoly phi = cyclotomic_polynomial(D);
    const std::size_t dphi = phi.size() - 1;
    for (std::size_t i = counts.size(); i-- > dphi;) {
        const std::int64_t c = counts[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dphi; ++j) counts[i - dphi + j] -= c * phi[j];
    }
    for (std::size_t i = 0; i < std::min(dphi, counts.size()); ++i)
        if (counts[i] != 0) return false;
    return true;
}

UnitGroup::UnitGroup(std::uint64_t q) : q_(q) {
    if (q == 0) throw DomainError("UnitGroup: modulus must be positive");
    if (q > 0xFFFFFFFFull) throw ResourceError("UnitGroup: modulus too large for log tables");
    for (const auto& [l, e] : factor_integer(q)) {
        Component c{l, e, 1, {}, orders_.size(), {}};
        for (unsigned i = 0; i < e; ++i) c.modulus *= l;
        c.dlog.assign(c.modulus, kNoLog);
        if (l != 2) {
            const std::uint64_t order = c.modulus / l * (l - 1);
            const std::uint64_t g = smallest_primitive_root(c.modulus);
            c.generators.push_back({g, order});
            std::uint64_t v = 1;
            for (std::uint64_t k = 0; k < order; ++k) {
                c.dlog[v] = static_cast<std::uint32_t>(k);
                v = mulmod(v, g, c.modulus);
            }
        } else if (e == 1) {
            c.dlog[1] = 0;
        } else if (e == 2) {
            c.generators.push_back({3, 2});
            c.dlog[1] = 0;
            c.dlog[3] = 1;
        } else {
            const std::uint64_t half = c.modulus / 4;  // order of 5
            c.generators.push_back({c.modulus - 1, 2});
            c.generators.push_back({5, half});
            std::uint64_t v = 1;
            for (std::uint64_t t = 0; t < half; ++t) {
                c.dlog[v] = static_cast<std::uint32_t>(t);
                c.dlog[c.modulus - v] = static_cast<std::uint32_t>(half + t);
                v = mulmod(v, 5, c.modulus);
            }
        }
        for (const auto& g : c.generators) {
            orders_.push_back(g.order);
            exponent_ = lcm_checked(exponent_, g.order);
        }
        phi_ *= c.modulus / l * (l - 1);
        components_.push_back(std::move(c));
    }
}

bool UnitGroup::logs(std::uint64_t a, std::span<std::uint64_t> out) const {
    for (const auto& c : components_) {
        const std::uint32_t packed = c.dlog[a % c.modulus];
        if (packed == kNoLog) return false;
        if (c.generators.size() == 1) {
            out[c.first] = packed;
        } else if (c.generators.size() == 2) {
            const std::uint64_t half = c.generators[1].order;
            out[c.first] = packed / half;
            out[c.first + 1] = packed % half;
        }
    }
    return true;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
    if (exponents_.size() != group_->generator_count())
        throw DomainError("DirichletCharacter: wrong number of exponents");
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        if (exponents_[i] >= group_->generator_order(i))
            throw DomainError("DirichletCharacter: exponent out of range");
    }
}

std::uint64_t DirichletCharacter::order() const {
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        const std::uint64_t n = group_->generator_order(i);
        ord = lcm_checked(ord, n / std::gcd(exponents_[i], n));
    }
    return ord;
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](std::uint64_t k) { return k == 0; });
}

std::optional<RootOfUnity> DirichletCharacter::value(std::uint64_t a) const {
    std::vector<std::uint64_t> logs(exponents_.size());
    if (!group_->logs(a, logs)) return std::nullopt;
    const std::uint64_t lambda = group_->exponent();
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const std::uint64_t scale = lambda / group_->generator_order(i);
        acc += static_cast<unsigned __int128>(exponents_[i]) * logs[i] % lambda * scale;
        acc %= lambda;
    }
    return RootOfUnity(static_cast<std::uint64_t>(acc), lambda);
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t a) const {
    const auto v = value(a);
    return v ? v->to_complex() : std::complex<double>{};
}

std::vector<std::complex<double>> DirichletCharacter::value_table() const {
    const std::uint64_t q = modulus();
    std::vector<std::complex<double>> table(q);
    for (std::uint64_t a = 0; a < q; ++a) table[a] = (*this)(a);
    return table;
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<std::uint64_t> k(exponents_.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const std::uint64_t n = group_->generator_order(i);
        k[i] = (n - exponents_[i]) % n;
    }
    return DirichletCharacter(group_, std::move(k));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    if (other.modulus() != modulus()) throw DomainError("product of characters with different moduli");
    std::vector<std::uint64_t> k(exponents_.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = (exponents_[i] + other.exponents_[i]) % group_->generator_order(i);
    return DirichletCharacter(group_, std::move(k));
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

unsigned trailing_zeros(std::uint64_t v) { return static_cast<unsigned>(__builtin_ctzll(v)); }

// Exponent f such that the component character is induced from l^f.
unsigned component_conductor_exponent(const UnitGroup::Component& c, const std::vector<std::uint64_t>& k) {
    if (c.prime != 2) {
        const std::uint64_t kk = k[c.first];
        if (kk == 0) return 0;
        const std::uint64_t order = c.generators[0].order;
        // Trivial on units = 1 mod l^f  <=>  k * phi(l^f) = 0 mod phi(l^e).
        std::uint64_t phi_f = c.prime - 1;
        for (unsigned f = 1; f <= c.exponent; ++f, phi_f *= c.prime) {
            if (static_cast<unsigned __int128>(kk) * phi_f % order == 0) return f;
        }
        return c.exponent;
    }
    if (c.exponent == 1) return 0;
    const std::uint64_t s = k[c.first];
    if (c.exponent == 2) return s ? 2 : 0;
    const std::uint64_t t = k[c.first + 1];
    if (t == 0) return s ? 2 : 0;
    return c.exponent - trailing_zeros(t);
}

}  // namespace

std::uint64_t conductor(const DirichletCharacter& chi) {
    std::uint64_t result = 1;
    for (const auto& c : chi.group().components())
        result *= ipow(c.prime, component_conductor_exponent(c, chi.component_exponents()));
    return result;
}

DirichletCharacter induce_primitive(const DirichletCharacter& chi) {
    const auto& comps = chi.group().components();
    const auto& k = chi.component_exponents();
    std::vector<unsigned> f(comps.size());
    std::uint64_t target = 1;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        f[i] = component_conductor_exponent(comps[i], k);
        target *= ipow(comps[i].prime, f[i]);
    }
    if (target == chi.modulus()) return chi;

    auto group = std::make_shared<const UnitGroup>(target);
    std::vector<std::uint64_t> out(group->generator_count(), 0);
    std::size_t j = 0;  // walks the target's components, same primes in order
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (f[i] == 0) continue;
        const auto& from = comps[i];
        const auto& to = group->components()[j++];
        if (from.prime != 2) {
            const std::uint64_t phi_e = from.generators[0].order;
            const std::uint64_t phi_f = to.generators[0].order;
            const std::uint64_t k0 = k[from.first] / (phi_e / phi_f);
            // New generator as a power of the old one reduced mod l^f.
            const std::uint64_t old_gen = from.generators[0].residue % to.modulus;
            const std::uint64_t new_gen = to.generators[0].residue;
            std::uint64_t power = 0, v = 1;
            while (v != new_gen) {
                v = mulmod(v, old_gen, to.modulus);
                ++power;
            }
            out[to.first] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(k0) * power % phi_f);
        } else {
            out[to.first] = k[from.first];
            if (f[i] >= 3) out[to.first + 1] = k[from.first + 1] >> (from.exponent - f[i]);
        }
    }
    return DirichletCharacter(std::move(group), std::move(out));
}

CharacterGroup::CharacterGroup(std::uint64_t q) : group_(std::make_shared<const UnitGroup>(q)) {
    const std::size_t n = group_->generator_count();
    std::vector<std::uint64_t> digits(n, 0);
    characters_.reserve(group_->size());
    for (;;) {
        characters_.emplace_back(group_, digits);
        std::size_t i = 0;
        while (i < n && ++digits[i] == group_->generator_order(i)) digits[i++] = 0;
        if (i == n) break;
    }
}

LargeSieveResult large_sieve_check(std::uint64_t Q, std::uint64_t N0, std::uint64_t N,
                                   std::span<const std::complex<double>> a) {
    if (Q == 0 || N == 0) throw DomainError("large_sieve_check: Q and N must be positive");
    if (a.size() != N) {
        throw DomainError("large_sieve_check: dimension mismatch, N = " + std::to_string(N) + " but " +
                          std::to_string(a.size()) + " coefficients given");
    }
    CompensatedSum lhs;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const CharacterGroup group(q);
        const double weight = static_cast<double>(q) / static_cast<double>(group.size());
        for (const auto& chi : group.characters()) {
            if (!is_primitive(chi)) continue;
            CompensatedComplexSum s;
            for (std::uint64_t i = 0; i < N; ++i) s += chi(N0 + 1 + i) * a[i];
            lhs += weight * std::norm(s.value());
        }
    }
    CompensatedSum mass;
    for (const auto& v : a) mass += std::norm(v);
    const double factor = static_cast<double>(Q) * static_cast<double>(Q) + static_cast<double>(N) - 1.0;
    return {lhs.value(), factor * mass.value()};
}

}  // namespace chebvar
