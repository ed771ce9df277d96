#include "chebvar/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "chebvar/arith.hpp"
#include "chebvar/errors.hpp"

namespace chebvar {

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("discriminant: intermediate overflow");
    return r;
}

i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("discriminant: intermediate overflow");
    return r;
}

// Fraction-free Gaussian elimination; every intermediate is a minor of m.
i128 bareiss_determinant(std::vector<std::vector<i128>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    i128 prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && m[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(m[k], m[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = checked_sub(checked_mul(m[i][j], m[k][k]), checked_mul(m[i][k], m[k][j])) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

i128 resultant(const std::vector<std::int64_t>& f, const std::vector<std::int64_t>& g) {
    const std::size_t df = f.size() - 1, dg = g.size() - 1;
    const std::size_t n = df + dg;
    std::vector<std::vector<i128>> sylvester(n, std::vector<i128>(n, 0));
    for (std::size_t r = 0; r < dg; ++r)
        for (std::size_t j = 0; j <= df; ++j) sylvester[r][r + j] = f[df - j];
    for (std::size_t r = 0; r < df; ++r)
        for (std::size_t j = 0; j <= dg; ++j) sylvester[dg + r][r + j] = g[dg - j];
    return bareiss_determinant(std::move(sylvester));
}

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
class PolyModP {
public:
    using Poly = std::vector<std::uint64_t>;

    explicit PolyModP(std::uint64_t p, std::size_t max_len) : p_(p) {
        // Lazy reduction: a whole convolution column fits in 64 bits.
        const unsigned __int128 bound =
            static_cast<unsigned __int128>(p - 1) * (p - 1) * std::max<std::size_t>(max_len, 1);
        lazy_ = bound <= std::numeric_limits<std::uint64_t>::max();
    }

    static void trim(Poly& a) {
        while (!a.empty() && a.back() == 0) a.pop_back();
    }

    static int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return chebvar::mulmod(a, b, p_); }
    std::uint64_t inv(std::uint64_t a) const { return chebvar::powmod(a, p_ - 2, p_); }

    Poly multiply(const Poly& a, const Poly& b) const {
        if (a.empty() || b.empty()) return {};
        Poly r(a.size() + b.size() - 1, 0);
        if (lazy_) {
            for (std::size_t k = 0; k < r.size(); ++k) {
                const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
                const std::size_t hi = std::min(k, a.size() - 1);
                std::uint64_t acc = 0;
                for (std::size_t i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
                r[k] = acc % p_;
            }
        } else {
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
        trim(r);
        return r;
    }

    // Remainder modulo a monic g.
    Poly reduce(Poly a, const Poly& g) const {
        const int dg = deg(g);
        for (int i = deg(a); i >= dg; --i) {
            const std::uint64_t c = a[i];
            if (c == 0) continue;
            for (int j = 0; j <= dg; ++j) a[i - dg + j] = sub(a[i - dg + j], mul(c, g[j]));
        }
        a.resize(std::min<std::size_t>(a.size(), static_cast<std::size_t>(dg)));
        trim(a);
        return a;
    }

    Poly mulmod(const Poly& a, const Poly& b, const Poly& g) const { return reduce(multiply(a, b), g); }

    Poly powmod(Poly base, std::uint64_t e, const Poly& g) const {
        Poly result{1};
        base = reduce(std::move(base), g);
        while (e) {
            if (e & 1) result = mulmod(result, base, g);
            e >>= 1;
            if (e) base = mulmod(base, base, g);
        }
        return reduce(std::move(result), g);
    }

    Poly monic(Poly a) const {
        if (a.empty()) return a;
        const std::uint64_t li = inv(a.back());
        for (auto& c : a) c = mul(c, li);
        return a;
    }

    Poly gcd(Poly a, Poly b) const {
        while (!b.empty()) {
            a = reduce(std::move(a), monic(b));
            std::swap(a, b);
        }
        return monic(std::move(a));
    }

    // Exact quotient a / g for monic g dividing a.
    Poly divide(Poly a, const Poly& g) const {
        const int dg = deg(g), da = deg(a);
        Poly q(da - dg + 1, 0);
        for (int i = da; i >= dg; --i) {
            const std::uint64_t c = a[i];
            q[i - dg] = c;
            if (c == 0) continue;
            for (int j = 0; j <= dg; ++j) a[i - dg + j] = sub(a[i - dg + j], mul(c, g[j]));
        }
        trim(q);
        return q;
    }

    Poly derivative(const Poly& a) const {
        Poly d;
        for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], i % p_));
        trim(d);
        return d;
    }

private:
    std::uint64_t p_;
    bool lazy_ = false;
};

}  // namespace

IntPolynomial::IntPolynomial(std::vector<std::int64_t> ascending) : coeffs_(std::move(ascending)) {
    if (coeffs_.size() < 2) throw DomainError("polynomial must have degree at least 1");
    if (coeffs_.back() != 1) throw DomainError("polynomial must be monic (leading coefficient 1)");
}

std::int64_t IntPolynomial::discriminant() const {
    const int n = degree();
    std::vector<std::int64_t> deriv(coeffs_.size() - 1);
    for (int i = 1; i <= n; ++i) {
        if (__builtin_mul_overflow(coeffs_[i], static_cast<std::int64_t>(i), &deriv[i - 1]))
            throw OverflowError("derivative overflows 64 bits");
    }
    i128 disc = resultant(coeffs_, deriv);
    if ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 1) disc = -disc;
    if (disc > std::numeric_limits<std::int64_t>::max() || disc < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("discriminant does not fit in 64 bits");
    return static_cast<std::int64_t>(disc);
}

std::string IntPolynomial::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const std::int64_t c = coeffs_[i];
        if (c == 0) continue;
        const std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        if (mag != 1 || i == 0) out << mag;
        if (i >= 1) out << "x";
        if (i >= 2) out << "^" << i;
        first = false;
    }
    return out.str();
}

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int d : parts_) {
        if (d <= 0) throw DomainError("cycle type parts must be positive");
    }
    std::sort(parts_.begin(), parts_.end());
}

int CycleType::degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

CycleType CycleType::power(std::uint64_t m) const {
    if (m == 0) throw DomainError("CycleType::power: exponent must be positive");
    std::vector<int> out;
    for (int d : parts_) {
        const int g = static_cast<int>(std::gcd(static_cast<std::uint64_t>(d), m));
        out.insert(out.end(), g, d / g);
    }
    return CycleType(std::move(out));
}

std::string CycleType::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += '+';
        s += std::to_string(parts_[i]);
    }
    return s;
}

CycleType CycleType::parse(std::string_view text) {
    std::vector<int> parts;
    std::string token;
    auto flush = [&] {
        if (token.empty()) throw DomainError("empty part in cycle type '" + std::string(text) + "'");
        if (token.size() > 6) throw DomainError("cycle type part too large in '" + std::string(text) + "'");
        parts.push_back(std::stoi(token));
        token.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '+') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            token += c;
        } else {
            throw DomainError("unexpected character in cycle type '" + std::string(text) + "'");
        }
    }
    flush();
    return CycleType(std::move(parts));
}

CycleType ddf_cycle_type(const IntPolynomial& f, std::uint64_t p) {
    if (p < 2) throw DomainError("ddf_cycle_type: modulus must be prime");
    const auto& c = f.coefficients();
    PolyModP ring(p, c.size());

    PolyModP::Poly g(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t r = c[i] % static_cast<std::int64_t>(p);
        g[i] = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    }
    if (PolyModP::deg(ring.gcd(g, ring.derivative(g))) > 0)
        throw RamifiedPrimeError("ddf_cycle_type: " + f.to_string() + " is not squarefree mod " +
                                 std::to_string(p));

    std::vector<int> parts;
    const PolyModP::Poly x{0, 1};
    PolyModP::Poly h = ring.reduce(x, g);
    for (int d = 1; 2 * d <= PolyModP::deg(g); ++d) {
        h = ring.powmod(h, p, g);  // x^(p^d) mod g
        PolyModP::Poly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = ring.sub(diff[1], 1);
        PolyModP::trim(diff);
        const auto t = ring.gcd(g, diff);
        const int dt = PolyModP::deg(t);
        if (dt > 0) {
            parts.insert(parts.end(), dt / d, d);
            g = ring.divide(std::move(g), t);
            h = ring.reduce(std::move(h), g);
        }
    }
    if (PolyModP::deg(g) > 0) parts.push_back(PolyModP::deg(g));
    return CycleType(std::move(parts));
}

}  // namespace chebvar
