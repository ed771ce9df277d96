#pragma once

// Slow, obviously-correct reference implementations. Nothing here calls into
// the library except for plain data types, so agreement with the library is
// evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using boost::multiprecision::cpp_int;

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t x) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (is_prime(n)) out.push_back(n);
    return out;
}

inline std::map<std::uint64_t, unsigned> factor(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> f;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            ++f[d];
            n /= d;
        }
    if (n > 1) ++f[n];
    return f;
}

inline std::uint64_t phi(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

// ---- polynomials over F_p, ascending coefficients, small p only ----

using PolyP = std::vector<std::int64_t>;

inline void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Divides a by monic g; returns true and replaces a by the quotient when the
// remainder vanishes.
inline bool divides_exactly(PolyP& a, const PolyP& g, std::int64_t p) {
    PolyP r = a;
    const int dg = static_cast<int>(g.size()) - 1;
    const int da = static_cast<int>(r.size()) - 1;
    if (da < dg) return false;
    PolyP q(da - dg + 1, 0);
    for (int i = da; i >= dg; --i) {
        const std::int64_t c = ((r[i] % p) + p) % p;
        q[i - dg] = c;
        for (int j = 0; j <= dg; ++j) r[i - dg + j] = ((r[i - dg + j] - c * g[j]) % p + p) % p;
    }
    trim(r);
    if (!r.empty()) return false;
    trim(q);
    a = q;
    return true;
}

// Degrees of the irreducible factors of f mod p, by trial division with every
// monic polynomial of degree <= deg/2. Returns an empty vector when f mod p
// has a repeated factor.
inline std::vector<int> factor_degrees(const std::vector<std::int64_t>& f, std::int64_t p) {
    PolyP a(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = ((f[i] % p) + p) % p;
    trim(a);
    std::vector<int> degs;
    for (int d = 1; 2 * d <= static_cast<int>(a.size()) - 1; ++d) {
        // Enumerate monic g of degree d; only irreducible ones can divide once
        // all smaller factors have been removed.
        std::vector<std::int64_t> low(d, 0);
        while (true) {
            PolyP g(low.begin(), low.end());
            g.push_back(1);
            while (divides_exactly(a, g, p)) {
                PolyP probe = a;
                if (divides_exactly(probe, g, p)) return {};  // square factor
                degs.push_back(d);
            }
            int k = 0;
            while (k < d && ++low[k] == p) low[k++] = 0;
            if (k == d) break;
        }
    }
    if (a.size() > 1) degs.push_back(static_cast<int>(a.size()) - 1);
    std::sort(degs.begin(), degs.end());
    return degs;
}

inline std::int64_t count_roots(const std::vector<std::int64_t>& f, std::int64_t p) {
    std::int64_t roots = 0;
    for (std::int64_t r = 0; r < p; ++r) {
        std::int64_t v = 0;
        for (std::size_t i = f.size(); i-- > 0;) v = ((v * r + f[i]) % p + p) % p;
        if (v == 0) ++roots;
    }
    return roots;
}

// ---- exact discriminant of the q-th cyclotomic polynomial ----

using BigPoly = std::vector<cpp_int>;  // ascending

inline BigPoly poly_div_exact(BigPoly a, const BigPoly& b) {
    const std::size_t db = b.size() - 1;
    BigPoly q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const cpp_int c = a[i] / b[db];
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

// Phi_q = (x^q - 1) / prod_{d | q, d < q} Phi_d.
inline BigPoly cyclotomic(unsigned q) {
    BigPoly num(q + 1, 0);
    num[0] = -1;
    num[q] = 1;
    for (unsigned d = 1; d < q; ++d)
        if (q % d == 0) num = poly_div_exact(num, cyclotomic(d));
    return num;
}

inline cpp_int bareiss(std::vector<std::vector<cpp_int>> m) {
    const std::size_t n = m.size();
    int sign = 1;
    cpp_int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < n && m[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// (-1)^(n(n-1)/2) Res(f, f') via the Sylvester determinant.
inline cpp_int discriminant(const BigPoly& f) {
    const std::size_t n = f.size() - 1;
    BigPoly df(n);
    for (std::size_t i = 1; i <= n; ++i) df[i - 1] = f[i] * static_cast<unsigned>(i);
    const std::size_t N = 2 * n - 1;
    std::vector<std::vector<cpp_int>> s(N, std::vector<cpp_int>(N, 0));
    for (std::size_t r = 0; r < n - 1; ++r)
        for (std::size_t j = 0; j <= n; ++j) s[r][r + j] = f[n - j];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) s[n - 1 + r][r + j] = df[n - 1 - j];
    cpp_int d = bareiss(std::move(s));
    if ((n * (n - 1) / 2) % 2 == 1) d = -d;
    return d;
}

// ---- direct enumeration of theta and the variance ----

struct Prime {
    std::uint64_t p;
    long double log_p;
};

// theta(x; q, a) over the supplied in-class primes, p not dividing q.
inline long double theta(const std::vector<Prime>& in_class, std::uint64_t x, std::uint64_t q, std::uint64_t a) {
    long double s = 0;
    for (const auto& e : in_class)
        if (e.p <= x && q % e.p != 0 && e.p % q == a % q) s += e.log_p;
    return s;
}

// sum over q <= Q (admissible) and a coprime to q of (theta - density x / phi(q))^2.
template <class Admissible>
long double variance(const std::vector<Prime>& in_class, std::uint64_t x, std::uint64_t Q, long double density,
                     Admissible admissible) {
    long double v = 0;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        if (!admissible(q)) continue;
        const long double main = density * static_cast<long double>(x) / static_cast<long double>(phi(q));
        std::vector<long double> bucket(q, 0);
        for (const auto& e : in_class)
            if (e.p <= x && q % e.p != 0) bucket[e.p % q] += e.log_p;
        for (std::uint64_t a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            const long double d = bucket[a] - main;
            v += d * d;
        }
    }
    return v;
}

}  // namespace oracle
