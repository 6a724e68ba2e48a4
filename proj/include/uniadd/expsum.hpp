#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uniadd/caps.hpp"
#include "uniadd/polynomial.hpp"

namespace uniadd {

// Precomputed unit values of F mod ell^k, reusable across many r. Builds a
// root-of-unity table when the modulus is small enough to make lookups pay.
class ExpSumKernel {
  public:
    ExpSumKernel(const Polynomial& F, std::uint64_t ell, int k,
                 std::uint64_t cap = caps::kExpSumModulus);

    // S(rF, ell^k) = sum over units v of e(r F(v) / ell^k), compensated
    // accumulation in a fixed order.
    std::complex<double> sum(std::int64_t r) const;

    std::uint64_t modulus() const { return n_; }
    std::uint64_t phi() const { return phi_; }

  private:
    std::uint64_t n_ = 1;
    std::uint64_t phi_ = 1;
    std::vector<std::uint32_t> values_;               // F(v) mod n over units
    std::vector<std::complex<double>> roots_;         // e(2 pi i j / n), optional
};

// One-shot S(rF, ell^k); absolute error <= 1e-6 under the modulus cap.
std::complex<double> exact_expsum(const Polynomial& F, std::uint64_t ell, int k,
                                  std::int64_t r,
                                  std::uint64_t cap = caps::kExpSumModulus);

// 8.82 * ell^{k(1 - 1/(d+1))} when F is nonconstant modulo ell; absent
// otherwise.
std::optional<double> cochrane_bound(const Polynomial& F, std::uint64_t ell, int k);

struct TauR {
    int tau = 0;    // ell-adic valuation of content(F')
    int roots = 0;  // roots of (ell^-tau F')(X) = 0 mod ell
};

TauR tau_and_R(const Polynomial& F, std::uint64_t ell);

// Sparse-form bound: requires ell coprime to the content of F without its
// constant term, s >= 2 and k >= 2; the root-count branch (ell <= d_s)
// further requires k >= tau + 2. At k = 1 the reduced-residue sum escapes
// both branches (x^2 + x at ell = 2 gives |S| = 1 against a literal bound of
// 0, and |S| can exceed (d_s - 1) sqrt(ell) by the excluded v = 0 term), so
// the bound is reported absent there.
std::optional<double> loh_bound(const Polynomial& F, std::uint64_t ell, int k);

// A valid (not optimal) constant C with |S(rF, ell^k)| <= C ell^{k(1-1/(d+1))}
// for all primes ell, k >= 1 and ell coprime to r: the maximum of 8.82 over
// the generic primes and explicit constants at the finitely many primes where
// F is a constant map, with content splitting handled recursively and small k
// covered by the trivial bound phi(ell^k) <= ell^k.
double corollary_CF(const Polynomial& F);

struct ReductionCheck {
    double lhs = 0;  // |S(rF, ell^k)|
    double rhs = 0;  // ell^t |S(rG, ell^{k-t})|
};

// The constant-term split identity; requires k > t.
ReductionCheck content_reduction_check(const Polynomial& F, std::uint64_t ell, int k,
                                       std::int64_t r = 1);

struct ExpSumReport {
    std::uint64_t ell = 2;
    int k = 1;
    std::int64_t r = 1;
    std::complex<double> value;
    double magnitude = 0;
    std::optional<double> cochrane;
    std::optional<double> loh;
    double corollary = 0;
    std::string applicable_lemma;
    int t = 0;
    int tau = 0;
    int roots = 0;
    int s = 0;
    int d_s = 0;
};

ExpSumReport expsum_report(const Polynomial& F, std::uint64_t ell, int k, std::int64_t r);

struct ExpSumScanRow {
    std::uint64_t ell = 2;
    int k = 1;
    std::int64_t r = 1;
    double magnitude = 0;
    std::optional<double> cochrane;
    std::optional<double> loh;
    double corollary = 0;
    bool violation = false;
};

struct ExpSumScan {
    std::vector<ExpSumScanRow> rows;
    std::size_t violations = 0;
    double max_corollary_ratio = 0;  // observed tightness of C_F
};

// Grid scan over primes ell <= ell_max, moduli ell^k <= pk_cap and
// r in {1, ell+1, ell^k - 1}. Row order is deterministic and independent of
// the thread count.
ExpSumScan expsum_scan(const Polynomial& F, std::uint64_t ell_max = 47,
                       std::uint64_t pk_cap = 1'000'000, int threads = 1);

}  // namespace uniadd
