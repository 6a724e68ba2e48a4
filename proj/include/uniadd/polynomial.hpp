#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "uniadd/errors.hpp"

namespace uniadd {

// Integer polynomial F(x) = sum coeffs[i] * x^i in canonical form: the last
// stored coefficient is nonzero, and the zero polynomial is the empty list.
// Coefficients are unbounded; modular evaluation reduces stepwise so
// intermediates stay below m^2.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<mpz_class> coeffs);

    // Parses the canonical text form "a0,a1,...,ad" (ascending coefficients).
    // Rejects empty input, non-integer tokens, and the all-zero list.
    static Polynomial parse(const std::string& text);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    mpz_class coeff(std::size_t i) const;  // 0 beyond the degree

    // F(v) mod m by Horner with reduction at each step. Exact for every
    // coefficient size; requires m >= 1 and m < 2^63.
    std::uint64_t eval_mod(std::int64_t v, std::uint64_t m) const;

    mpz_class eval(const mpz_class& v) const;  // exact big-integer value
    mpz_class alternating_sum() const;         // F(-1)

    Polynomial derivative() const;

    // gcd of the coefficients, optionally skipping a0; gcd of the empty
    // selection is 0.
    mpz_class content(bool include_constant) const;

    std::string to_string() const;  // "a0,a1,...,ad"

    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  private:
    std::vector<mpz_class> coeffs_;
};

// Nonzero non-constant terms in ascending exponent order.
struct SparseTerm {
    mpz_class coefficient;
    int exponent = 0;
};

struct SparseForm {
    std::vector<SparseTerm> terms;
    int s() const { return static_cast<int>(terms.size()); }
    int d_s() const { return terms.empty() ? 0 : terms.back().exponent; }
};

SparseForm sparse_form(const Polynomial& F);

// F = ell^t * G + c0 with ell not dividing the content of G; t is the
// ell-adic valuation of the content of F without its constant term.
struct ContentSplit {
    int t = 0;
    Polynomial G;
    mpz_class c0;
};

ContentSplit shifted_content_split(const Polynomial& F, std::uint64_t ell);

// Whether v -> F(v) mod ell is a constant map on Z/ell. For ell <= deg F all
// residues are evaluated; for ell > deg F it suffices that every non-constant
// coefficient vanishes mod ell.
bool is_constant_map_mod(const Polynomial& F, std::uint64_t ell);

// Pipeline entry guard: throws domain_error on constant or zero polynomials.
void require_nonconstant(const Polynomial& F);

}  // namespace uniadd
