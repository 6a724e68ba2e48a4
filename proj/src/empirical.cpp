#include "uniadd/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace uniadd {

UniformityMetrics uniformity_metrics(const std::vector<std::uint64_t>& histogram,
                                     std::uint64_t x, std::uint64_t q) {
    if (histogram.size() != q) throw domain_error("histogram size must equal q");
    std::uint64_t total = 0;
    for (std::uint64_t c : histogram) total += c;
    if (total != x) throw domain_error("histogram total must equal x");
    UniformityMetrics m;
    double xd = static_cast<double>(x);
    double qd = static_cast<double>(q);
    double expected = xd / qd;
    for (std::uint64_t c : histogram) {
        double cd = static_cast<double>(c);
        m.max_rel_dev = std::max(m.max_rel_dev, std::abs(cd * qd / xd - 1.0));
        m.total_variation += std::abs(cd / xd - 1.0 / qd);
        m.chi_square += (cd - expected) * (cd - expected) / expected;
    }
    m.total_variation /= 2.0;
    return m;
}

namespace {

// Per-prime F values mod q for p below 2^16 are precomputed once; every
// composite n <= 2e8 has at most one prime factor above that bound.
struct SieveContext {
    const Polynomial& F;
    const ExtensionPolicy& policy;
    std::uint64_t q;
    const SpfTable& spf;
    std::vector<std::uint32_t> small_fp;  // F(p) mod q, index p

    SieveContext(const Polynomial& F_, const ExtensionPolicy& policy_, std::uint64_t q_,
                 const SpfTable& spf_, std::uint64_t x)
        : F(F_), policy(policy_), q(q_), spf(spf_) {
        std::uint64_t bound = std::min<std::uint64_t>(x, 1u << 16);
        small_fp.assign(bound + 1, 0);
        for (std::uint64_t p = 2; p <= bound; ++p)
            if (spf.spf(static_cast<std::uint32_t>(p)) == p)
                small_fp[p] = static_cast<std::uint32_t>(
                    F.eval_mod(static_cast<std::int64_t>(p), q));
    }

    std::uint64_t term(std::uint64_t p, int k) const {
        if (k == 1 && p < small_fp.size() &&
            policy.kind != PolicyKind::CustomTable)
            return small_fp[p];
        return policy.value_mod(F, p, k, q);
    }

    std::uint64_t residue(std::uint32_t n) const {
        std::uint64_t acc = 0;
        while (n > 1) {
            std::uint32_t p = spf.spf(n);
            int k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            acc = addmod(acc, term(p, k), q);
        }
        return acc;
    }
};

}  // namespace

UniformityReport additive_residues_sieve(const Polynomial& F, const ExtensionPolicy& policy,
                                         std::uint64_t q, std::uint64_t x,
                                         const SpfTable& spf, int threads) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    if (x < 1) throw domain_error("x must be positive");
    if (x > caps::kSieveMaxX) throw resource_error("sieve: x exceeds cap");
    if (q > caps::kSieveMaxQ) throw resource_error("sieve: q exceeds cap");
    if (x > spf.limit()) throw domain_error("sieve: spf table does not cover x");

    SieveContext ctx(F, policy, q, spf, x);
    int T = std::max(1, threads);
    std::vector<std::vector<std::uint64_t>> partial(T, std::vector<std::uint64_t>(q, 0));
    auto work = [&](int t) {
        std::uint64_t chunk = (x + T - 1) / T;
        std::uint64_t begin = 1 + t * chunk;
        std::uint64_t end = std::min(x, begin + chunk - 1);
        auto& hist = partial[t];
        for (std::uint64_t n = begin; n <= end; ++n)
            ++hist[ctx.residue(static_cast<std::uint32_t>(n))];
    };
    if (T == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    UniformityReport rep;
    rep.q = q;
    rep.x = x;
    rep.histogram.assign(q, 0);
    for (const auto& hist : partial)
        for (std::uint64_t a = 0; a < q; ++a) rep.histogram[a] += hist[a];
    rep.metrics = uniformity_metrics(rep.histogram, x, q);
    return rep;
}

ConvenientParams convenient_params(std::uint64_t x, double epsilon,
                                   std::optional<int> J_override) {
    if (x < 16) throw domain_error("convenient_params: x must be at least 16");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw domain_error("convenient_params: epsilon must lie in (0,1]");
    ConvenientParams p;
    p.x = x;
    p.epsilon = epsilon;
    double lx = std::log(static_cast<double>(x));
    p.J = static_cast<int>(std::floor(std::log(std::log(lx))));
    p.y = std::exp(std::pow(lx, epsilon / 2.0));
    if (J_override) {
        if (*J_override < 0) throw domain_error("convenient_params: J must be nonnegative");
        p.J = *J_override;
        p.j_overridden = true;
    }
    return p;
}

namespace {

struct FactorBuf {
    std::uint32_t prime[16];
    int mult[16];
    int count = 0;  // distinct primes, ascending
};

inline void factor_into(std::uint32_t n, const SpfTable& spf, FactorBuf& buf) {
    buf.count = 0;
    while (n > 1) {
        std::uint32_t p = spf.spf(n);
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        buf.prime[buf.count] = p;
        buf.mult[buf.count] = k;
        ++buf.count;
    }
}

// Convenient iff the J largest distinct primes each occur once and the J-th
// largest still exceeds y (top-J of the multiset repeated => some
// multiplicity above 1, caught the same way).
inline bool convenient_flag(const FactorBuf& buf, int J, double y) {
    if (J == 0) return true;
    if (buf.count < J) return false;
    for (int j = 0; j < J; ++j) {
        int idx = buf.count - 1 - j;
        if (buf.mult[idx] != 1) return false;
        if (static_cast<double>(buf.prime[idx]) <= y) return false;
    }
    return true;
}

}  // namespace

Decomposition classify_convenient(std::uint64_t n, const ConvenientParams& params,
                                  const SpfTable& spf) {
    if (n < 2 || n > spf.limit()) throw domain_error("classify_convenient: n out of range");
    FactorBuf buf;
    factor_into(static_cast<std::uint32_t>(n), spf, buf);
    Decomposition d;
    d.n = n;
    d.convenient = convenient_flag(buf, params.J, params.y);
    if (d.convenient) {
        std::uint64_t m = n;
        for (int j = 0; j < params.J; ++j) {
            std::uint32_t p = buf.prime[buf.count - 1 - j];
            d.large_primes.push_back(p);
            m /= p;
        }
        d.m = m;
        double pm = 1.0;
        if (buf.count > params.J) pm = buf.prime[buf.count - 1 - params.J];
        d.L_m = std::max(params.y, pm);
    }
    return d;
}

double inconvenient_fraction(const ConvenientParams& params, const SpfTable& spf) {
    std::uint64_t x = params.x;
    if (x > spf.limit()) throw domain_error("inconvenient_fraction: spf table too small");
    std::uint64_t bad = params.J > 0 ? 1 : 0;  // n = 1 has no prime factors
    FactorBuf buf;
    for (std::uint64_t n = 2; n <= x; ++n) {
        factor_into(static_cast<std::uint32_t>(n), spf, buf);
        if (!convenient_flag(buf, params.J, params.y)) ++bad;
    }
    return static_cast<double>(bad) / static_cast<double>(x);
}

ConditionalTable conditional_table(const Polynomial& F, const ExtensionPolicy& policy,
                                   std::uint64_t q, const ConvenientParams& params,
                                   const SpfTable& spf) {
    require_nonconstant(F);
    std::uint64_t x = params.x;
    if (x > spf.limit()) throw domain_error("conditional_table: spf table too small");
    if (q == 0 || q > caps::kSieveMaxQ) throw resource_error("conditional_table: bad q");
    SieveContext ctx(F, policy, q, spf, x);
    ConditionalTable tab;
    tab.all.assign(q, 0);
    tab.convenient.assign(q, 0);
    tab.inconvenient.assign(q, 0);
    {
        // n = 1: empty sum, convenient only when J = 0
        bool conv = params.J == 0;
        ++tab.all[0];
        ++(conv ? tab.convenient : tab.inconvenient)[0];
        (conv ? tab.convenient_total : tab.inconvenient_total) += 1;
    }
    FactorBuf buf;
    for (std::uint64_t n = 2; n <= x; ++n) {
        factor_into(static_cast<std::uint32_t>(n), spf, buf);
        std::uint64_t acc = 0;
        for (int i = 0; i < buf.count; ++i)
            acc = addmod(acc, ctx.term(buf.prime[i], buf.mult[i]), q);
        bool conv = convenient_flag(buf, params.J, params.y);
        ++tab.all[acc];
        ++(conv ? tab.convenient : tab.inconvenient)[acc];
        (conv ? tab.convenient_total : tab.inconvenient_total) += 1;
    }
    return tab;
}

std::uint64_t conditional_counts(const Polynomial& F, const ExtensionPolicy& policy,
                                 std::uint64_t q, std::uint64_t a,
                                 const ConvenientParams& params, Restrict restrict,
                                 const SpfTable& spf) {
    if (a >= q) throw domain_error("conditional_counts: residue class out of range");
    ConditionalTable tab = conditional_table(F, policy, q, params, spf);
    switch (restrict) {
        case Restrict::All: return tab.all[a];
        case Restrict::Convenient: return tab.convenient[a];
        default: return tab.inconvenient[a];
    }
}

Polynomial overrep_polynomial(int d) {
    if (d < 1) throw domain_error("overrep: d must be positive");
    // (x-1)^d + 1 by binomial expansion
    std::vector<mpz_class> coeffs(d + 1);
    mpz_class binom = 1;
    for (int i = 0; i <= d; ++i) {
        mpz_class term = binom;
        if ((d - i) % 2 == 1) term = -term;
        coeffs[i] = term;
        binom = binom * (d - i) / (i + 1);
    }
    coeffs[0] += 1;
    return Polynomial(std::move(coeffs));
}

OverrepResult overrep_experiment(int d, std::uint64_t q1, std::uint64_t x,
                                 const SpfTable& spf, int threads) {
    if (q1 < 2) throw domain_error("overrep: q1 must be at least 2");
    std::uint64_t q = 1;
    for (int i = 0; i < d; ++i) {
        if (q > caps::kSieveMaxQ / q1) throw resource_error("overrep: q1^d exceeds cap");
        q *= q1;
    }
    Polynomial F = overrep_polynomial(d);
    UniformityReport rep = additive_residues_sieve(
        F, ExtensionPolicy::completely_additive(), q, x, spf, threads);
    OverrepResult out;
    out.q = q;
    out.count = rep.histogram[1 % q];
    out.expected = static_cast<double>(x) / static_cast<double>(q);
    out.ratio = static_cast<double>(out.count) * static_cast<double>(q) /
                static_cast<double>(x);
    return out;
}

}  // namespace uniadd
