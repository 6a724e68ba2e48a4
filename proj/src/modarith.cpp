#include "uniadd/modarith.hpp"

#include <algorithm>
#include <numeric>

namespace uniadd {

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t acc = 1;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod(acc, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

FactoredModulus factorize(std::uint64_t q) {
    if (q == 0) throw domain_error("modulus must be positive");
    if (q > caps::kFactorizeMax) throw resource_error("factorize: q exceeds cap");
    FactoredModulus out;
    out.q = q;
    auto strip = [&](std::uint64_t p) {
        if (q % p) return;
        int e = 0;
        while (q % p == 0) {
            q /= p;
            ++e;
        }
        out.factors.push_back({p, e});
    };
    strip(2);
    strip(3);
    for (std::uint64_t d = 5; d * d <= q; d += 6) {
        strip(d);
        strip(d + 2);
    }
    if (q > 1) out.factors.push_back({q, 1});
    return out;
}

std::uint64_t euler_phi(const FactoredModulus& m) {
    std::uint64_t phi = m.q;
    for (const auto& [p, e] : m.factors) phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t euler_phi(std::uint64_t m) { return euler_phi(factorize(m)); }

std::vector<std::uint32_t> units_mod(std::uint64_t m) {
    if (m == 0) throw domain_error("modulus must be positive");
    if (m == 1) return {0};
    if (m > caps::kSpfLimitMax) throw resource_error("units_mod: m exceeds cap");
    std::vector<std::uint32_t> units;
    for (std::uint64_t v = 1; v < m; ++v)
        if (std::gcd(v, m) == 1) units.push_back(static_cast<std::uint32_t>(v));
    return units;
}

namespace {

// ax + by = g
struct Egcd {
    std::int64_t g, x, y;
};

Egcd egcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a, 1, 0};
    Egcd s = egcd(b, a % b);
    return {s.g, s.y, s.x - (a / b) * s.y};
}

}  // namespace

std::uint64_t crt_combine(std::span<const Congruence> parts,
                          std::uint64_t* combined_modulus) {
    unsigned __int128 mod = 1;
    unsigned __int128 res = 0;
    for (const auto& part : parts) {
        if (part.modulus == 0) throw domain_error("crt: modulus must be positive");
        std::uint64_t m1 = static_cast<std::uint64_t>(mod % part.modulus);
        Egcd e = egcd(static_cast<std::int64_t>(m1 % part.modulus),
                      static_cast<std::int64_t>(part.modulus));
        if (static_cast<std::uint64_t>(e.g > 0 ? e.g : -e.g) != 1 && part.modulus != 1)
            throw domain_error("crt: moduli are not pairwise coprime");
        if (mod > ((unsigned __int128)1 << 126) / part.modulus)
            throw resource_error("crt: combined modulus too large");
        // res + mod * k = part.residue (mod part.modulus)
        std::uint64_t r0 = static_cast<std::uint64_t>(res % part.modulus);
        std::uint64_t diff =
            (part.residue % part.modulus + part.modulus - r0 % part.modulus) % part.modulus;
        std::uint64_t inv =
            part.modulus == 1
                ? 0
                : static_cast<std::uint64_t>(((e.x % static_cast<std::int64_t>(part.modulus)) +
                                              static_cast<std::int64_t>(part.modulus)) %
                                             static_cast<std::int64_t>(part.modulus));
        std::uint64_t k = mulmod(diff, inv, part.modulus);
        res += mod * k;
        mod *= part.modulus;
    }
    if (combined_modulus) {
        if (mod > ~std::uint64_t{0}) throw resource_error("crt: combined modulus too large");
        *combined_modulus = static_cast<std::uint64_t>(mod);
    }
    return static_cast<std::uint64_t>(res);
}

SpfTable::SpfTable(std::uint32_t limit) : limit_(limit) {
    if (limit < 2) throw domain_error("spf: limit must be at least 2");
    if (limit > caps::kSpfLimitMax) throw resource_error("spf: limit exceeds cap");
    spf_.assign(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (spf_[p] != 0) continue;
        for (std::uint64_t m = p; m <= limit; m += p)
            if (spf_[m] == 0) spf_[m] = static_cast<std::uint32_t>(p);
    }
}

std::vector<std::pair<std::uint32_t, int>> factor_with_spf(std::uint32_t n,
                                                           const SpfTable& table) {
    if (n < 2 || n > table.limit()) throw domain_error("factor_with_spf: n out of range");
    std::vector<std::pair<std::uint32_t, int>> out;
    while (n > 1) {
        std::uint32_t p = table.spf(n);
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace uniadd
