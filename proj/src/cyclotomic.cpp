#include "chebvar/cyclotomic.hpp"

#include <string>

#include "chebvar/errors.hpp"

namespace chebvar {

CyclotomicDiscriminant cyclotomic_disc(std::uint64_t q) {
    if (q < 3) throw DomainError("cyclotomic_disc: q must be at least 3, got " + std::to_string(q));
    const std::uint64_t phi = euler_phi(q);
    CyclotomicDiscriminant d;
    d.sign = (phi / 2) % 2 == 0 ? 1 : -1;
    for (const auto& [l, e] : factor_integer(q)) {
        // l^(e*phi) / l^(phi/(l-1)); phi/(l-1) <= e*phi so the exponent stays >= 0.
        const std::uint64_t exponent = e * phi - phi / (l - 1);
        if (exponent > 0) d.magnitude.push_back({l, static_cast<unsigned>(exponent)});
    }
    return d;
}

}  // namespace chebvar
