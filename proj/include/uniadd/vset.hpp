#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "uniadd/caps.hpp"
#include "uniadd/modarith.hpp"
#include "uniadd/polynomial.hpp"

namespace uniadd {

// counts[w] = #{units v mod ell^e : F(v) = w mod ell^e}
std::vector<std::uint64_t> value_distribution(const Polynomial& F, std::uint64_t ell,
                                              int e,
                                              std::uint64_t cap = caps::kValueDistModulus);

// Exact #V_{F,q,J}(w) for all w: per prime power a J-fold cyclic convolution
// of the unit value distribution in unbounded integers, combined across prime
// powers by CRT multiplicativity.
std::vector<mpz_class> vset_exact(const Polynomial& F, std::uint64_t q, unsigned J,
                                  std::uint64_t pk_cap = caps::kVsetExactModulus);

// Independent oracle: direct enumeration of all J-tuples of units mod q.
std::vector<mpz_class> vset_bruteforce(const Polynomial& F, std::uint64_t q, unsigned J,
                                       std::uint64_t tuple_cap = caps::kBruteForceTuples);

// H(ell,k,J) = sum over r (0<r<ell^k, ell coprime) of e(-rw/ell^k)
// [S(rF,ell^k)/phi(ell^k)]^J. Mathematically real; the imaginary residue is
// reported through imag_out.
double H_term(const Polynomial& F, std::uint64_t ell, int k, unsigned J,
              std::uint64_t w, double* imag_out = nullptr,
              std::uint64_t cap = caps::kCharSumModulus);

// Orthogonality identity for a prime power:
// phi(ell^e)^J / ell^e * [1 + sum_{k<=e} H(ell,k,J)].
double vset_charsum(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                    std::uint64_t w, std::uint64_t cap = caps::kCharSumModulus);

// Product over prime powers of q.
double vset_charsum_q(const Polynomial& F, std::uint64_t q, unsigned J, std::uint64_t w,
                      std::uint64_t cap = caps::kCharSumModulus);

struct ConstancyModulus {
    std::uint64_t M = 1;                  // largest divisor of q with F constant on units
    std::vector<PrimePower> D;            // per-prime exponents D_ell (possibly 0)
};

ConstancyModulus compute_M(const Polynomial& F, std::uint64_t q,
                           std::uint64_t cap = caps::kConstancyModulus);

// 1{F(1) J = w mod M} * M phi(q)^J / q evaluated as a real.
double vset_asymptotic(const Polynomial& F, std::uint64_t q, unsigned J, std::uint64_t w,
                       std::uint64_t cap = caps::kConstancyModulus);

// Partition of the exponent levels k in [1,e] at a prime ell: X where the
// normalized sum has full magnitude (k <= D_ell), Y where B(ell,k) < 1 beats
// it (k >= E_ell), Z in between.
struct LocalSpectrum {
    std::uint64_t ell = 2;
    int e = 1;
    int D = 0;
    int E = 1;                      // smallest k > D with B(ell,k) < 1
    std::vector<int> X, Y, Z;
    std::map<int, double> B;        // k -> C_F ell^{k(1-1/(d+1))} / phi(ell^k)
};

LocalSpectrum local_spectrum(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                             std::uint64_t cap = caps::kConstancyModulus);

// The H-sum over the constant levels k <= D_ell admits a closed form:
// 0 when D_ell = 0, ell^D - 1 when F(1) J = w mod ell^D, and -1 otherwise.
struct XSumCheck {
    double computed = 0;
    double closed_form = 0;
};

XSumCheck x_sum_check(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                      std::uint64_t w, std::uint64_t cap = caps::kCharSumModulus);

// Batched variant: one row per w mod ell^e, sharing the unit-sum work.
std::vector<XSumCheck> x_sum_check_all(const Polynomial& F, std::uint64_t ell, int e,
                                       unsigned J,
                                       std::uint64_t cap = caps::kCharSumModulus);

struct EtaEll0 {
    double eta = 0;           // 1 - max of the two bracketed quantities
    std::uint64_t ell0 = 2;
    double max_quantity = 0;  // the maximum eta was derived from
};

// ell0 = max over: the largest prime that can divide M(F,.), the smallest L
// with (2 C_F)^{2(d+1)} <= L, and the smallest L with B(L,1) < 1. eta scans
// B(ell,E_ell) and the normalized Z-range sums over all primes ell <= ell0.
EtaEll0 eta_and_l0(const Polynomial& F, std::uint64_t z_cap = caps::kCharSumModulus,
                   std::uint64_t ell0_cap = caps::kEll0Max);

// Maximum root count of F(v) = a' mod q over all classes a': per prime power
// enumerate all residues, histogram F, take the largest class; multiplicative
// across prime powers.
std::uint64_t xi_max_roots(const Polynomial& F, std::uint64_t q,
                           std::uint64_t cap = caps::kXiModulus);

struct VSetReport {
    std::uint64_t q = 1;
    unsigned J = 1;
    std::uint64_t M = 1;
    std::vector<mpz_class> exact;           // indexed by w
    std::vector<double> asymptotic;         // indexed by w
    std::optional<std::vector<double>> charsum;  // absent above the cap
    std::vector<bool> indicator;            // F(1) J = w mod M
    double max_relative_error = 0;          // charsum vs exact, pre-rounding
    std::vector<LocalSpectrum> spectra;     // diagnostics only
    std::optional<EtaEll0> eta;             // diagnostics only
    std::optional<std::uint64_t> xi;        // diagnostics only
};

VSetReport vset_report(const Polynomial& F, std::uint64_t q, unsigned J,
                       bool diagnostics = false);

}  // namespace uniadd
