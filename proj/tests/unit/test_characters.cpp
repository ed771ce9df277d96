#include "doctest.h"

#include "chebvar/arith.hpp"
#include "chebvar/characters.hpp"
#include "chebvar/errors.hpp"

#include <complex>
#include <numeric>
#include <set>

using namespace chebvar;

namespace {

// Smallest d | q with chi trivial on every unit a = 1 mod d.
std::uint64_t brute_conductor(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus();
    for (std::uint64_t d = 1; d <= q; ++d) {
        if (q % d != 0) continue;
        bool trivial = true;
        for (std::uint64_t a = 1; a < q && trivial; a += d)
            if (std::gcd(a, q) == 1 && !chi.value(a)->is_one()) trivial = false;
        if (trivial) return d;
    }
    return q;
}

}  // namespace

TEST_CASE("RootOfUnity arithmetic") {
    const RootOfUnity i(1, 4);
    CHECK(i * i == RootOfUnity(1, 2));
    CHECK((i * i * i * i).is_one());
    CHECK(i.conj() == RootOfUnity(3, 4));
    CHECK(RootOfUnity(2, 4) == RootOfUnity(1, 2));
    CHECK(RootOfUnity(5, 4) == RootOfUnity(1, 4));
    CHECK(i.to_complex() == std::complex<double>(0, 1));
    CHECK(RootOfUnity(1, 2).to_complex() == std::complex<double>(-1, 0));
    CHECK(std::abs(RootOfUnity(1, 3).to_complex() - std::polar(1.0, 2 * M_PI / 3)) < 1e-15);
    CHECK_THROWS_AS(RootOfUnity(1, 0), DomainError);
}

TEST_CASE("roots_sum_to is exact") {
    std::vector<RootOfUnity> cube{{0, 3}, {1, 3}, {2, 3}};
    CHECK(roots_sum_to(cube, 0));
    CHECK_FALSE(roots_sum_to(cube, 1));
    std::vector<RootOfUnity> mixed{{0, 1}, {1, 2}, {1, 4}, {3, 4}};  // 1 - 1 + i - i
    CHECK(roots_sum_to(mixed, 0));
    std::vector<RootOfUnity> ones(7, RootOfUnity(0, 1));
    CHECK(roots_sum_to(ones, 7));
    // zeta_6 + zeta_6^5 = 1
    std::vector<RootOfUnity> six{{1, 6}, {5, 6}};
    CHECK(roots_sum_to(six, 1));
    CHECK(roots_sum_to(std::span<const RootOfUnity>{}, 0));
}

TEST_CASE("UnitGroup generator conventions") {
    const UnitGroup g5(5);
    REQUIRE(g5.generator_count() == 1);
    CHECK(g5.components()[0].generators[0].residue == 2);
    CHECK(g5.size() == 4);
    const UnitGroup g8(8);
    REQUIRE(g8.generator_count() == 2);
    CHECK(g8.components()[0].generators[0].residue == 7);
    CHECK(g8.components()[0].generators[1].residue == 5);
    CHECK(g8.exponent() == 2);
    const UnitGroup g4(4);
    REQUIRE(g4.generator_count() == 1);
    CHECK(g4.components()[0].generators[0].residue == 3);
    CHECK(UnitGroup(1).size() == 1);
    CHECK(UnitGroup(2).size() == 1);
    CHECK_THROWS_AS(UnitGroup(0), DomainError);
}

TEST_CASE("UnitGroup discrete logs reconstruct every unit") {
    for (std::uint64_t q = 1; q <= 200; ++q) {
        const UnitGroup g(q);
        CHECK(g.size() == euler_phi(q));
        std::vector<std::uint64_t> logs(g.generator_count());
        std::set<std::vector<std::uint64_t>> seen;
        for (std::uint64_t a = 0; a < q; ++a) {
            const bool unit = std::gcd(a, q) == 1 || q == 1;
            CHECK(g.logs(a, logs) == unit);
            if (!unit) continue;
            CHECK(seen.insert(logs).second);
            // Each component residue is the product of its generator powers.
            std::size_t k = 0;
            for (const auto& c : g.components()) {
                std::uint64_t r = 1;
                for (const auto& gen : c.generators) r = mulmod(r, powmod(gen.residue, logs[k++], c.modulus), c.modulus);
                CHECK(r == a % c.modulus);
            }
        }
    }
}

TEST_CASE("characters mod 5, 8 and 6") {
    const CharacterGroup g5(5);
    REQUIRE(g5.size() == 4);
    bool found_order4 = false;
    for (const auto& chi : g5.characters()) {
        if (chi.order() == 4 && chi.component_exponents()[0] == 1) {
            CHECK(*chi.value(2) == RootOfUnity(1, 4));
            CHECK(*chi.value(4) == RootOfUnity(1, 2));
            found_order4 = true;
        }
    }
    CHECK(found_order4);
    CHECK(g5.principal().is_principal());
    CHECK_FALSE(g5.characters()[0].value(10).has_value());

    const CharacterGroup g8(8);
    for (const auto& chi : g8.characters()) CHECK(chi.order() <= 2);

    const CharacterGroup g6(6);
    REQUIRE(g6.size() == 2);
    CHECK(conductor(g6.characters()[1]) == 3);
    CHECK(conductor(g6.characters()[0]) == 1);
}

TEST_CASE("character group size and distinctness") {
    for (std::uint64_t q = 1; q <= 60; ++q) {
        const CharacterGroup g(q);
        CHECK(g.size() == euler_phi(q));
        CHECK(g.principal().is_principal());
        std::set<std::vector<std::pair<std::uint64_t, std::uint64_t>>> tables;
        for (const auto& chi : g.characters()) {
            std::vector<std::pair<std::uint64_t, std::uint64_t>> t;
            for (std::uint64_t a = 1; a <= q; ++a)
                if (auto v = chi.value(a)) t.emplace_back(v->num(), v->den());
            CHECK(tables.insert(t).second);
        }
    }
}

TEST_CASE("exact orthogonality over residues and over characters") {
    for (std::uint64_t q = 1; q <= 40; ++q) {
        const CharacterGroup g(q);
        const auto& chars = g.characters();
        const auto phi = static_cast<std::int64_t>(euler_phi(q));
        for (std::size_t i = 0; i < chars.size(); ++i) {
            for (std::size_t j = 0; j < chars.size(); ++j) {
                std::vector<RootOfUnity> terms;
                for (std::uint64_t a = 1; a <= q; ++a)
                    if (auto u = chars[i].value(a)) terms.push_back(*u * chars[j].value(a)->conj());
                CHECK(roots_sum_to(terms, i == j ? phi : 0));
            }
        }
        for (std::uint64_t a = 1; a <= q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            std::vector<RootOfUnity> terms;
            for (const auto& chi : chars) terms.push_back(*chi.value(a));
            CHECK(roots_sum_to(terms, a % q == 1 % q ? phi : 0));
        }
    }
}

TEST_CASE("characters are multiplicative and close under product and conjugate") {
    for (std::uint64_t q : {7u, 12u, 16u, 45u, 63u, 64u}) {
        const CharacterGroup g(q);
        for (const auto& chi : g.characters()) {
            CHECK((chi * chi.conj()).is_principal());
            const auto ord = chi.order();
            DirichletCharacter power = g.principal();
            for (std::uint64_t k = 0; k < ord; ++k) power = power * chi;
            CHECK(power.is_principal());
            for (std::uint64_t a = 1; a < q; ++a)
                for (std::uint64_t b = 1; b < q; ++b) {
                    if (std::gcd(a * b, q) != 1) continue;
                    CHECK(*chi.value(a * b % q) == *chi.value(a) * *chi.value(b));
                }
            const auto table = chi.value_table();
            for (std::uint64_t a = 0; a < q; ++a) {
                if (auto v = chi.value(a))
                    CHECK(std::abs(table[a] - v->to_complex()) < 1e-15);
                else
                    CHECK(table[a] == std::complex<double>(0, 0));
            }
        }
    }
}

TEST_CASE("conductor agrees with the brute-force definition") {
    for (std::uint64_t q = 1; q <= 100; ++q) {
        std::size_t primitive = 0;
        const CharacterGroup group(q);
        for (const auto& chi : group.characters()) {
            CAPTURE(q);
            CHECK(conductor(chi) == brute_conductor(chi));
            if (is_primitive(chi)) ++primitive;
        }
        // Number of primitive characters is the Dirichlet convolution mu * phi.
        std::int64_t expected = 0;
        for (std::uint64_t d = 1; d <= q; ++d) {
            if (q % d) continue;
            std::uint64_t m = q / d;
            int mu = 1;
            for (const auto& [l, e] : factor_integer(m)) mu = e > 1 ? 0 : -mu;
            expected += mu * static_cast<std::int64_t>(euler_phi(d));
        }
        CHECK(static_cast<std::int64_t>(primitive) == expected);
    }
}

TEST_CASE("induce_primitive recovers the character and is idempotent") {
    for (std::uint64_t q = 1; q <= 100; ++q) {
        const CharacterGroup group(q);
        for (const auto& chi : group.characters()) {
            const DirichletCharacter prim = induce_primitive(chi);
            CAPTURE(q);
            CHECK(prim.modulus() == conductor(chi));
            CHECK(is_primitive(prim));
            CHECK(induce_primitive(prim) == prim);
            for (std::uint64_t a = 1; a < q; ++a) {
                if (std::gcd(a, q) != 1) continue;
                CHECK(*prim.value(a % prim.modulus()) == *chi.value(a));
            }
        }
    }
}

TEST_CASE("large sieve") {
    const std::complex<double> one(1, 0);
    const auto r = large_sieve_check(3, 0, 1, std::span<const std::complex<double>>(&one, 1));
    CHECK(r.lhs == doctest::Approx(2.5));
    CHECK(r.rhs == doctest::Approx(9.0));
    const auto eq = large_sieve_check(1, 10, 1, std::span<const std::complex<double>>(&one, 1));
    CHECK(eq.lhs == doctest::Approx(eq.rhs));
    std::vector<std::complex<double>> a(5, one);
    CHECK_THROWS_AS(large_sieve_check(3, 0, 4, a), DomainError);
}
