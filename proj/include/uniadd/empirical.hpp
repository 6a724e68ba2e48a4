#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uniadd/caps.hpp"
#include "uniadd/classifier.hpp"
#include "uniadd/modarith.hpp"
#include "uniadd/polynomial.hpp"

namespace uniadd {

struct UniformityMetrics {
    double max_rel_dev = 0;      // max_a |N_a q / x - 1|
    double total_variation = 0;  // (1/2) sum |N_a/x - 1/q|
    double chi_square = 0;       // sum (N_a - x/q)^2 / (x/q)
};

struct UniformityReport {
    std::uint64_t q = 1;
    std::uint64_t x = 1;
    std::vector<std::uint64_t> histogram;  // N_a, a in [0,q)
    UniformityMetrics metrics;
};

UniformityMetrics uniformity_metrics(const std::vector<std::uint64_t>& histogram,
                                     std::uint64_t x, std::uint64_t q);

// Histogram of f(n) mod q over n <= x, f(1) = 0, all arithmetic mod q during
// the sieve. The table must cover x; workers own disjoint chunks and merge
// exact integer histograms, so the result is independent of the thread count.
UniformityReport additive_residues_sieve(const Polynomial& F, const ExtensionPolicy& policy,
                                         std::uint64_t q, std::uint64_t x,
                                         const SpfTable& spf, int threads = 1);

struct ConvenientParams {
    std::uint64_t x = 16;
    double epsilon = 1.0;
    int J = 0;           // floor(log log log x) unless overridden
    double y = 1.0;      // exp((log x)^{epsilon/2})
    bool j_overridden = false;
};

ConvenientParams convenient_params(std::uint64_t x, double epsilon,
                                   std::optional<int> J_override = std::nullopt);

struct Decomposition {
    std::uint64_t n = 1;
    bool convenient = false;
    std::uint64_t m = 1;                    // n / (P_1 ... P_J) when convenient
    std::vector<std::uint64_t> large_primes;  // P_1 > ... > P_J
    double L_m = 0;                         // max(y, P(m))
};

// n is convenient iff its J largest prime factors with multiplicity all
// exceed y and none of them is repeated in n.
Decomposition classify_convenient(std::uint64_t n, const ConvenientParams& params,
                                  const SpfTable& spf);

double inconvenient_fraction(const ConvenientParams& params, const SpfTable& spf);

enum class Restrict { All, Convenient, Inconvenient };

std::uint64_t conditional_counts(const Polynomial& F, const ExtensionPolicy& policy,
                                 std::uint64_t q, std::uint64_t a,
                                 const ConvenientParams& params, Restrict restrict,
                                 const SpfTable& spf);

// Full per-class table for the three restrictions in one pass.
struct ConditionalTable {
    std::vector<std::uint64_t> all;
    std::vector<std::uint64_t> convenient;
    std::vector<std::uint64_t> inconvenient;
    std::uint64_t convenient_total = 0;
    std::uint64_t inconvenient_total = 0;
};

ConditionalTable conditional_table(const Polynomial& F, const ExtensionPolicy& policy,
                                   std::uint64_t q, const ConvenientParams& params,
                                   const SpfTable& spf);

struct OverrepResult {
    std::uint64_t q = 1;          // q1^d
    std::uint64_t count = 0;      // #{n <= x : f(n) = 1 mod q}
    double expected = 0;          // x / q
    double ratio = 0;             // count * q / x
};

// The optimality demonstration: F = (x-1)^d + 1, f completely additive,
// q = q1^d; reports how overrepresented the class 1 mod q is.
OverrepResult overrep_experiment(int d, std::uint64_t q1, std::uint64_t x,
                                 const SpfTable& spf, int threads = 1);

// Expands (x-1)^d + 1.
Polynomial overrep_polynomial(int d);

}  // namespace uniadd
