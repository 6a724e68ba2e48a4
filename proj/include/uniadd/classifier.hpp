#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uniadd/caps.hpp"
#include "uniadd/polynomial.hpp"

namespace uniadd {

enum class Verdict { Holds, Fails, Undecidable };

const char* to_string(Verdict v);

enum class PolicyKind { CompletelyAdditive, StronglyAdditive, PrimePowerEval, CustomTable };

// The polynomial fixes f on primes only; the policy pins f(p^k) for k >= 2.
// CustomTable lists f(2^k) for k = 1..len and delegates odd primes to one of
// the closed-form kinds.
struct ExtensionPolicy {
    PolicyKind kind = PolicyKind::CompletelyAdditive;
    std::vector<mpz_class> two_power_values;                      // CustomTable only
    PolicyKind odd_fallback = PolicyKind::CompletelyAdditive;     // CustomTable only

    static ExtensionPolicy completely_additive();
    static ExtensionPolicy strongly_additive();
    static ExtensionPolicy prime_power_eval();
    static ExtensionPolicy custom_table(std::vector<mpz_class> f2k, PolicyKind odd_fallback);

    // Accepts "complete", "strong", "prime-power", "custom:v1,v2,...[:fallback]".
    static ExtensionPolicy parse(const std::string& name);
    std::string name() const;

    // f(p^k) mod m per the policy. CustomTable requires the table to cover k
    // when p = 2.
    std::uint64_t value_mod(const Polynomial& F, std::uint64_t p, int k,
                            std::uint64_t m) const;
};

struct OddPrimeVerdict {
    std::uint64_t prime = 0;
    bool A_holds = false;
};

struct ClassificationReport {
    std::uint64_t q = 1;
    Verdict in_sf = Verdict::Holds;
    std::string method;      // "delange" or "prop21"
    std::string case_label;  // "q=1", "odd", "2||q", "4|q"
    std::vector<OddPrimeVerdict> odd_primes;
    std::optional<bool> A2;
    std::optional<bool> A4;
    std::optional<Verdict> B2;
    // prop21 only
    bool applicable = true;
    std::vector<std::string> triggered;  // e.g. "i(p=3)", "ii", "iii"
    std::optional<bool> iii_bullet;      // alternating sum is 0 or 2 mod 4
    std::optional<bool> iii_proof;       // F(1) and F(3) both 0 mod 4
    bool iii_disagreement = false;
};

// Condition A_t: some unit a mod t has F(a) != 0 mod t (the Dirichlet
// equivalence of the divergence condition). Exhaustive over units.
bool check_At(const Polynomial& F, std::uint64_t t);

// Condition B_t: 2 f(2^k) / t is an odd integer for every k >= 1, decided in
// closed form per policy; CustomTable can only refute, never confirm.
Verdict check_Bt(const ExtensionPolicy& policy, const Polynomial& F, std::uint64_t t);

// Membership of q in S_f by the three-case criterion on A_p, A_2, A_4, B_2.
ClassificationReport delange_classify(const Polynomial& F, const ExtensionPolicy& policy,
                                      std::uint64_t q);

// The concrete negative conditions: (i) odd p | q with F vanishing on all of
// 1..p-1 mod p, (ii) 2||q with even constant and even F(1), (iii) 4 | q with
// alternating sum 0 or 2 mod 4 (stated form; the proof-variant F(1)=F(3)=0
// mod 4 is recorded alongside and disagreements are flagged). Requires
// f(2^k) odd for k >= 2 whenever q is even; otherwise marked inapplicable.
ClassificationReport prop21_classify(const Polynomial& F, const ExtensionPolicy& policy,
                                     std::uint64_t q);

struct ScanRow {
    std::uint64_t q = 1;
    Verdict delange = Verdict::Holds;
    Verdict prop21 = Verdict::Holds;
    bool prop21_applicable = true;
    bool discrepancy = false;  // both decided and unequal
};

std::vector<ScanRow> sf_scan(const Polynomial& F, const ExtensionPolicy& policy,
                             std::uint64_t q_max);

}  // namespace uniadd
