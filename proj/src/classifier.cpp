#include "uniadd/classifier.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

#include "uniadd/modarith.hpp"

namespace uniadd {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "undecidable";
    }
}

ExtensionPolicy ExtensionPolicy::completely_additive() {
    return {PolicyKind::CompletelyAdditive, {}, PolicyKind::CompletelyAdditive};
}
ExtensionPolicy ExtensionPolicy::strongly_additive() {
    return {PolicyKind::StronglyAdditive, {}, PolicyKind::StronglyAdditive};
}
ExtensionPolicy ExtensionPolicy::prime_power_eval() {
    return {PolicyKind::PrimePowerEval, {}, PolicyKind::PrimePowerEval};
}
ExtensionPolicy ExtensionPolicy::custom_table(std::vector<mpz_class> f2k,
                                              PolicyKind odd_fallback) {
    if (f2k.empty()) throw domain_error("custom table must be nonempty");
    return {PolicyKind::CustomTable, std::move(f2k), odd_fallback};
}

namespace {

PolicyKind kind_from_name(const std::string& s) {
    if (s == "complete" || s == "completely-additive") return PolicyKind::CompletelyAdditive;
    if (s == "strong" || s == "strongly-additive") return PolicyKind::StronglyAdditive;
    if (s == "prime-power") return PolicyKind::PrimePowerEval;
    throw domain_error("unknown policy '" + s + "'");
}

const char* kind_name(PolicyKind k) {
    switch (k) {
        case PolicyKind::CompletelyAdditive: return "complete";
        case PolicyKind::StronglyAdditive: return "strong";
        case PolicyKind::PrimePowerEval: return "prime-power";
        default: return "custom";
    }
}

}  // namespace

ExtensionPolicy ExtensionPolicy::parse(const std::string& name) {
    if (name.rfind("custom:", 0) == 0) {
        std::string rest = name.substr(7);
        PolicyKind fallback = PolicyKind::CompletelyAdditive;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            fallback = kind_from_name(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        std::vector<mpz_class> vals;
        std::stringstream ss(rest);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                vals.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw domain_error("invalid custom table value '" + tok + "'");
            }
        }
        return custom_table(std::move(vals), fallback);
    }
    ExtensionPolicy p;
    p.kind = kind_from_name(name);
    p.odd_fallback = p.kind;
    return p;
}

std::string ExtensionPolicy::name() const {
    if (kind != PolicyKind::CustomTable) return kind_name(kind);
    std::string out = "custom:";
    for (std::size_t i = 0; i < two_power_values.size(); ++i) {
        if (i) out += ',';
        out += two_power_values[i].get_str();
    }
    out += ':';
    out += kind_name(odd_fallback);
    return out;
}

std::uint64_t ExtensionPolicy::value_mod(const Polynomial& F, std::uint64_t p, int k,
                                         std::uint64_t m) const {
    PolicyKind effective = kind;
    if (kind == PolicyKind::CustomTable) {
        if (p == 2) {
            if (static_cast<std::size_t>(k) > two_power_values.size())
                throw domain_error("custom table does not cover f(2^k) at this k");
            const mpz_class& v = two_power_values[k - 1];
            return mpz_fdiv_ui(v.get_mpz_t(), m);
        }
        effective = odd_fallback;
    }
    switch (effective) {
        case PolicyKind::CompletelyAdditive:
            return mulmod(static_cast<std::uint64_t>(k) % m,
                          F.eval_mod(static_cast<std::int64_t>(p), m), m);
        case PolicyKind::StronglyAdditive:
            return F.eval_mod(static_cast<std::int64_t>(p), m);
        default: {  // PrimePowerEval
            std::uint64_t pk = powmod(p, static_cast<std::uint64_t>(k), m);
            return F.eval_mod(static_cast<std::int64_t>(pk), m);
        }
    }
}

bool check_At(const Polynomial& F, std::uint64_t t) {
    if (t < 2) throw domain_error("A_t requires t >= 2");
    for (std::uint64_t a = 1; a <= t; ++a) {
        if (std::gcd(a, t) != 1) continue;
        if (F.eval_mod(static_cast<std::int64_t>(a), t) != 0) return true;
    }
    return false;
}

namespace {

// Whether 2 f / t is an odd integer, i.e. 2f = t (mod 2t).
bool odd_multiple(const mpz_class& f, std::uint64_t t) {
    mpz_class num = 2 * f;
    std::uint64_t r = mpz_fdiv_ui(num.get_mpz_t(), 2 * t);
    return r == t;
}

}  // namespace

Verdict check_Bt(const ExtensionPolicy& policy, const Polynomial& F, std::uint64_t t) {
    if (t < 2) throw domain_error("B_t requires t >= 2");
    switch (policy.kind) {
        case PolicyKind::CompletelyAdditive: {
            // f(2^k) = k F(2): 2F(2)/t and 4F(2)/t cannot both be odd integers.
            return Verdict::Fails;
        }
        case PolicyKind::StronglyAdditive: {
            mpz_class f2 = F.eval(2);
            return odd_multiple(f2, t) ? Verdict::Holds : Verdict::Fails;
        }
        case PolicyKind::PrimePowerEval: {
            // f(2^k) = F(2^k); 2^k mod 2t is eventually periodic, so the
            // condition over all k >= 1 reduces to finitely many checks.
            std::uint64_t mod = 2 * t;
            if (mod > 100'000'000ull) throw resource_error("B_t: t too large for cycle scan");
            std::unordered_set<std::uint64_t> seen;
            std::uint64_t v = 2 % mod;
            while (seen.insert(v).second) {
                std::uint64_t fv = F.eval_mod(static_cast<std::int64_t>(v), mod);
                if (mulmod(2, fv, mod) != t % mod) return Verdict::Fails;
                v = mulmod(v, 2, mod);
            }
            return Verdict::Holds;
        }
        default: {  // CustomTable: finite truncation can refute but never prove.
            for (const auto& f2k : policy.two_power_values)
                if (!odd_multiple(f2k, t)) return Verdict::Fails;
            return Verdict::Undecidable;
        }
    }
}

ClassificationReport delange_classify(const Polynomial& F, const ExtensionPolicy& policy,
                                      std::uint64_t q) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    ClassificationReport rep;
    rep.q = q;
    rep.method = "delange";
    if (q == 1) {
        rep.case_label = "q=1";
        rep.in_sf = Verdict::Holds;
        return rep;
    }
    FactoredModulus fm = factorize(q);
    bool odd_ok = true;
    int two_exp = 0;
    for (const auto& [p, e] : fm.factors) {
        if (p == 2) {
            two_exp = e;
            continue;
        }
        bool a = check_At(F, p);
        rep.odd_primes.push_back({p, a});
        odd_ok = odd_ok && a;
    }
    if (two_exp == 0) {
        rep.case_label = "odd";
        rep.in_sf = odd_ok ? Verdict::Holds : Verdict::Fails;
        return rep;
    }
    rep.A2 = check_At(F, 2);
    rep.B2 = check_Bt(policy, F, 2);
    if (two_exp == 1) {
        rep.case_label = "2||q";
        if (!odd_ok)
            rep.in_sf = Verdict::Fails;
        else if (*rep.A2)
            rep.in_sf = Verdict::Holds;
        else
            rep.in_sf = *rep.B2;
        return rep;
    }
    rep.case_label = "4|q";
    rep.A4 = check_At(F, 4);
    if (!odd_ok)
        rep.in_sf = Verdict::Fails;
    else if (*rep.A2)
        rep.in_sf = Verdict::Holds;
    else if (!*rep.A4)
        rep.in_sf = Verdict::Fails;  // needs B2 and A4; A4 already failed
    else
        rep.in_sf = *rep.B2;
    return rep;
}

namespace {

// Standing hypothesis of the concrete tests: f(2^k) odd for all k >= 2.
// Closed form per policy; a custom table is taken at face value once every
// listed k >= 2 entry is odd.
bool prop21_hypothesis(const ExtensionPolicy& policy, const Polynomial& F) {
    switch (policy.kind) {
        case PolicyKind::CompletelyAdditive:
            return false;  // f(4) = 2F(2) is even
        case PolicyKind::StronglyAdditive:
            return mpz_fdiv_ui(F.eval(2).get_mpz_t(), 2) == 1;
        case PolicyKind::PrimePowerEval:
            // F(2^k) = a0 mod 2 for k >= 1
            return mpz_fdiv_ui(F.coeff(0).get_mpz_t(), 2) == 1;
        default:
            for (std::size_t i = 1; i < policy.two_power_values.size(); ++i)
                if (mpz_fdiv_ui(policy.two_power_values[i].get_mpz_t(), 2) == 0) return false;
            return true;
    }
}

bool vanishes_on_all_units(const Polynomial& F, std::uint64_t p) {
    for (std::uint64_t a = 1; a < p; ++a)
        if (F.eval_mod(static_cast<std::int64_t>(a), p) != 0) return false;
    return true;
}

}  // namespace

ClassificationReport prop21_classify(const Polynomial& F, const ExtensionPolicy& policy,
                                     std::uint64_t q) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    ClassificationReport rep;
    rep.q = q;
    rep.method = "prop21";
    if (q == 1) {
        rep.case_label = "q=1";
        rep.in_sf = Verdict::Holds;
        return rep;
    }
    FactoredModulus fm = factorize(q);
    int two_exp = 0;
    for (const auto& [p, e] : fm.factors)
        if (p == 2) two_exp = e;

    // The f(2^k) hypothesis only enters through the even-modulus conditions.
    if (two_exp > 0 && !prop21_hypothesis(policy, F)) {
        rep.applicable = false;
        rep.in_sf = Verdict::Undecidable;
        rep.case_label = two_exp == 1 ? "2||q" : "4|q";
        return rep;
    }
    rep.case_label = two_exp == 0 ? "odd" : (two_exp == 1 ? "2||q" : "4|q");

    bool not_ud = false;
    for (const auto& [p, e] : fm.factors) {
        if (p == 2) continue;
        // F mod p has a factor prod_{i=1..p-1}(x - i) iff F vanishes at every
        // unit; record as the exact negation of A_p.
        bool vanish = vanishes_on_all_units(F, p);
        rep.odd_primes.push_back({p, !vanish});
        if (vanish) {
            rep.triggered.push_back("i(p=" + std::to_string(p) + ")");
            not_ud = true;
        }
    }
    if (two_exp == 1) {
        bool a0_even = mpz_fdiv_ui(F.coeff(0).get_mpz_t(), 2) == 0;
        bool f1_even = mpz_fdiv_ui(F.eval(1).get_mpz_t(), 2) == 0;
        if (a0_even && f1_even) {
            rep.triggered.push_back("ii");
            not_ud = true;
        }
    }
    if (two_exp >= 2) {
        std::uint64_t alt = mpz_fdiv_ui(F.alternating_sum().get_mpz_t(), 4);
        bool bullet = (alt == 0 || alt == 2);
        bool proof = mpz_fdiv_ui(F.eval(1).get_mpz_t(), 4) == 0 &&
                     mpz_fdiv_ui(F.eval(3).get_mpz_t(), 4) == 0;
        rep.iii_bullet = bullet;
        rep.iii_proof = proof;
        rep.iii_disagreement = bullet != proof;
        if (bullet) {
            rep.triggered.push_back("iii");
            not_ud = true;
        }
    }
    rep.in_sf = not_ud ? Verdict::Fails : Verdict::Holds;
    return rep;
}

std::vector<ScanRow> sf_scan(const Polynomial& F, const ExtensionPolicy& policy,
                             std::uint64_t q_max) {
    require_nonconstant(F);
    if (q_max == 0) throw domain_error("q_max must be positive");
    if (q_max > caps::kScanQMax) throw resource_error("sf_scan: q_max exceeds cap");
    std::vector<ScanRow> rows;
    rows.reserve(q_max);
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        ClassificationReport d = delange_classify(F, policy, q);
        ClassificationReport p = prop21_classify(F, policy, q);
        ScanRow row;
        row.q = q;
        row.delange = d.in_sf;
        row.prop21 = p.in_sf;
        row.prop21_applicable = p.applicable;
        row.discrepancy = d.in_sf != Verdict::Undecidable &&
                          p.in_sf != Verdict::Undecidable && d.in_sf != p.in_sf;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace uniadd
