#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "uniadd/caps.hpp"
#include "uniadd/errors.hpp"

namespace uniadd {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    a += b;  // a,b < m < 2^63: no wrap
    return a >= m ? a - m : a;
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

bool is_prime(std::uint64_t n);  // trial division; n <= caps::kFactorizeMax

struct PrimePower {
    std::uint64_t prime = 0;
    int exponent = 0;
    bool operator==(const PrimePower&) const = default;
};

// q together with its prime-power factorization, ascending primes.
struct FactoredModulus {
    std::uint64_t q = 1;
    std::vector<PrimePower> factors;
};

FactoredModulus factorize(std::uint64_t q);  // q in [1, kFactorizeMax]

std::uint64_t euler_phi(const FactoredModulus& m);
std::uint64_t euler_phi(std::uint64_t m);

// Ascending residues coprime to m. For m = 1 the unique residue class is
// represented by {0} so downstream products over an empty modulus work.
std::vector<std::uint32_t> units_mod(std::uint64_t m);

struct Congruence {
    std::uint64_t residue = 0;
    std::uint64_t modulus = 1;
};

// Unique residue mod prod(moduli); moduli must be pairwise coprime. The empty
// system yields 0 mod 1.
std::uint64_t crt_combine(std::span<const Congruence> parts,
                          std::uint64_t* combined_modulus = nullptr);

// Smallest-prime-factor table for all n <= limit; immutable after build.
class SpfTable {
  public:
    explicit SpfTable(std::uint32_t limit);

    std::uint32_t limit() const { return limit_; }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }

  private:
    std::uint32_t limit_;
    std::vector<std::uint32_t> spf_;
};

inline SpfTable build_spf(std::uint32_t limit) { return SpfTable(limit); }

// Exact factorization of n via the table, descending primes.
std::vector<std::pair<std::uint32_t, int>> factor_with_spf(std::uint32_t n,
                                                           const SpfTable& table);

}  // namespace uniadd
