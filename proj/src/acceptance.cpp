#include "uniadd/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "uniadd/empirical.hpp"
#include "uniadd/expsum.hpp"
#include "uniadd/modarith.hpp"
#include "uniadd/report_io.hpp"
#include "uniadd/vset.hpp"

namespace uniadd {

const std::vector<std::pair<std::string, Polynomial>>& acceptance_catalog() {
    static const std::vector<std::pair<std::string, Polynomial>> catalog = {
        {"x", Polynomial::parse("0,1")},
        {"x^2+x+1", Polynomial::parse("1,1,1")},
        {"x^2-1", Polynomial::parse("-1,0,1")},
        {"2x+1", Polynomial::parse("1,2")},
        {"(x-1)^2+1", Polynomial::parse("2,-2,1")},
        {"x^2+x", Polynomial::parse("0,1,1")},
    };
    return catalog;
}

const std::vector<ExtensionPolicy>& acceptance_policies() {
    static const std::vector<ExtensionPolicy> policies = {
        ExtensionPolicy::completely_additive(),
        ExtensionPolicy::prime_power_eval(),
    };
    return policies;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Failures {
    std::size_t count = 0;
    std::string first;
    std::size_t checks = 0;

    void check(bool ok, const std::string& label) {
        ++checks;
        if (ok) return;
        ++count;
        if (first.empty()) first = label;
    }
    std::string summary() const {
        std::ostringstream os;
        os << checks << " checks";
        if (count) os << ", " << count << " failed; first: " << first;
        return os.str();
    }
};

CriterionResult c1_oracle_equivalence() {
    Failures f;
    for (const auto& [name, F] : acceptance_catalog()) {
        for (std::uint64_t q = 2; q <= 24; ++q) {
            for (unsigned J = 1; J <= 3; ++J) {
                auto exact = vset_exact(F, q, J);
                auto brute = vset_bruteforce(F, q, J);
                for (std::uint64_t w = 0; w < q; ++w)
                    f.check(exact[w] == brute[w],
                            name + " q=" + std::to_string(q) + " J=" + std::to_string(J) +
                                " w=" + std::to_string(w));
            }
        }
    }
    return {1, "vset_exact == vset_bruteforce (q in [2,24], J in [1,3])", f.count == 0,
            f.summary()};
}

CriterionResult c2_charsum_identity() {
    Failures f;
    for (const auto& [name, F] : acceptance_catalog()) {
        for (std::uint64_t q : {8ull, 9ull, 12ull, 27ull}) {
            for (unsigned J = 2; J <= 6; ++J) {
                VSetReport rep = vset_report(F, q, J);
                f.check(rep.charsum.has_value(), name + " charsum missing");
                if (!rep.charsum) continue;
                for (std::uint64_t w = 0; w < q; ++w) {
                    double cs = (*rep.charsum)[w];
                    double ex = rep.exact[w].get_d();
                    double rel = std::abs(cs - ex) / std::max(1.0, ex);
                    bool ok = rel < 1e-6 &&
                              static_cast<double>(std::llround(cs)) == ex;
                    f.check(ok, name + " q=" + std::to_string(q) + " J=" +
                                    std::to_string(J) + " w=" + std::to_string(w) +
                                    " rel=" + io::fmt_double(rel));
                }
            }
        }
    }
    return {2, "character-sum identity matches exact counts (rel err < 1e-6)", f.count == 0,
            f.summary()};
}

CriterionResult c3_x_sum_closed_form() {
    Failures f;
    for (const auto& [name, F] : acceptance_catalog()) {
        for (std::uint64_t ell : {2ull, 3ull, 5ull}) {
            for (int e = 1; e <= 4; ++e) {
                for (unsigned J = 1; J <= 10; ++J) {
                    auto rows = x_sum_check_all(F, ell, e, J);
                    for (std::size_t w = 0; w < rows.size(); ++w)
                        f.check(std::abs(rows[w].computed - rows[w].closed_form) < 1e-8,
                                name + " ell=" + std::to_string(ell) + " e=" +
                                    std::to_string(e) + " J=" + std::to_string(J) +
                                    " w=" + std::to_string(w));
                }
            }
        }
    }
    return {3, "X-level character-sum closed form (|computed - closed| < 1e-8)", f.count == 0,
            f.summary()};
}

CriterionResult c4_bound_scans(int threads) {
    Failures f;
    std::ostringstream ratios;
    for (const auto& [name, F] : acceptance_catalog()) {
        ExpSumScan scan = expsum_scan(F, 47, 1'000'000, threads);
        f.checks += scan.rows.size();
        if (scan.violations) {
            f.count += scan.violations;
            if (f.first.empty()) f.first = name + " has bound violations";
        }
        ratios << " " << name << ":" << io::fmt_double(scan.max_corollary_ratio);
    }
    return {4, "Cochrane/Loh/corollary bound scans, zero violations", f.count == 0,
            f.summary() + "; max corollary ratios:" + ratios.str()};
}

CriterionResult c5_content_reduction() {
    Failures f;
    for (const auto& [name, F] : acceptance_catalog()) {
        for (std::uint64_t ell = 2; ell <= 47; ++ell) {
            if (!is_prime(ell)) continue;
            ContentSplit cs = shifted_content_split(F, ell);
            std::uint64_t n = 1;
            for (int k = 1;; ++k) {
                if (n > 1'000'000 / ell) break;
                n *= ell;
                if (k <= cs.t) continue;
                ExpSumKernel lhs(F, ell, k);
                ExpSumKernel rhs(cs.G, ell, k - cs.t);
                double scale = std::pow(static_cast<double>(ell), cs.t);
                for (std::uint64_t r : {std::uint64_t{1}, ell + 1, n - 1}) {
                    if (r % n == 0 || (r % n) % ell == 0) continue;
                    double a = std::abs(lhs.sum(static_cast<std::int64_t>(r)));
                    double b = scale * std::abs(rhs.sum(static_cast<std::int64_t>(r)));
                    f.check(std::abs(a - b) < 1e-6,
                            name + " ell=" + std::to_string(ell) + " k=" +
                                std::to_string(k) + " r=" + std::to_string(r));
                }
            }
        }
    }
    return {5, "content-reduction identity (sides agree to 1e-6)", f.count == 0,
            f.summary()};
}

CriterionResult c6_asymptotic_convergence() {
    Failures f;
    std::ostringstream detail;
    struct Case {
        const char* name;
        Polynomial F;
        std::uint64_t q;
    };
    const Case cases[] = {{"x^2 q=8", Polynomial::parse("0,0,1"), 8},
                          {"x q=12", Polynomial::parse("0,1"), 12}};
    for (const auto& c : cases) {
        ConstancyModulus cm = compute_M(c.F, c.q);
        mpz_class f1 = c.F.eval(1);
        std::uint64_t phi = euler_phi(c.q);
        double prev = std::numeric_limits<double>::infinity();
        detail << " " << c.name << ":";
        for (unsigned J : {4u, 8u, 12u, 16u}) {
            auto exact = vset_exact(c.F, c.q, J);
            mpz_class phiJ;
            mpz_ui_pow_ui(phiJ.get_mpz_t(), phi, J);
            mpq_class scale_q(phiJ, mpz_class(static_cast<unsigned long>(c.q)));
            scale_q.canonicalize();
            double scale = scale_q.get_d();
            mpq_class asym_q(phiJ * static_cast<unsigned long>(cm.M),
                             mpz_class(static_cast<unsigned long>(c.q)));
            asym_q.canonicalize();
            double asym = asym_q.get_d();
            double dev = 0;
            for (std::uint64_t w = 0; w < c.q; ++w) {
                mpz_class delta = f1 * static_cast<unsigned long>(J) -
                                  mpz_class(static_cast<unsigned long>(w));
                double a = mpz_divisible_ui_p(delta.get_mpz_t(), cm.M) ? asym : 0.0;
                dev = std::max(dev, std::abs(exact[w].get_d() - a) / scale);
            }
            f.check(dev <= prev + 1e-12, std::string(c.name) + " not non-increasing at J=" +
                                             std::to_string(J));
            prev = dev;
            detail << " J" << J << "=" << io::fmt_double(dev);
            if (J == 16)
                f.check(dev < 0.05, std::string(c.name) + " J=16 dev=" + io::fmt_double(dev));
        }
    }
    return {6, "asymptotic convergence non-increasing, < 0.05 at J=16", f.count == 0,
            f.summary() + ";" + detail.str()};
}

CriterionResult c7_classifier_sieve(const SpfTable& spf, int threads) {
    Failures f;
    constexpr std::uint64_t kX = 10'000'000;
    constexpr std::uint64_t kQ = 27'720;  // lcm(1..12); projection is exact
    std::ostringstream worst;
    for (const auto& [name, F] : acceptance_catalog()) {
        for (const auto& policy : acceptance_policies()) {
            UniformityReport base = additive_residues_sieve(F, policy, kQ, kX, spf, threads);
            for (std::uint64_t q = 1; q <= 12; ++q) {
                std::vector<std::uint64_t> hist(q, 0);
                for (std::uint64_t b = 0; b < kQ; ++b) hist[b % q] += base.histogram[b];
                UniformityMetrics m = uniformity_metrics(hist, kX, q);
                Verdict v = delange_classify(F, policy, q).in_sf;
                std::string label = name + "/" + policy.name() + " q=" + std::to_string(q) +
                                    " dev=" + io::fmt_double(m.max_rel_dev) +
                                    (v == Verdict::Holds ? " (in S_f)" : " (not in S_f)");
                if (v == Verdict::Holds) {
                    f.check(m.max_rel_dev < 0.02, label);
                } else if (v == Verdict::Fails) {
                    f.check(m.max_rel_dev > 0.2, label);
                } else {
                    f.check(false, label + " undecidable");
                }
            }
        }
    }
    return {7, "classifier-sieve agreement at x=1e7 (S_f: dev < 0.02; else > 0.2)",
            f.count == 0, f.summary()};
}

CriterionResult c8_nonuniform_density(const SpfTable& spf, int threads) {
    constexpr std::uint64_t kX = 1'000'000;
    UniformityReport rep =
        additive_residues_sieve(Polynomial::parse("-1,0,1"),
                                ExtensionPolicy::completely_additive(), 3, kX, spf, threads);
    // Independent oracle: f(n) = 2 v_3(n) mod 3, so the class-0 density is the
    // geometric series sum over v_3 multiples of 3.
    double oracle = 0;
    for (int k = 0; k < 60; k += 3) oracle += (2.0 / 3.0) * std::pow(1.0 / 3.0, k);
    oracle *= 3.0;
    double measured =
        static_cast<double>(rep.histogram[0]) * 3.0 / static_cast<double>(kX);
    bool ok = std::abs(measured - oracle) <= 0.05 * oracle;
    return {8, "non-uniform class density vs geometric-series oracle (5%)", ok,
            "measured=" + io::fmt_double(measured) + " oracle=" + io::fmt_double(oracle)};
}

CriterionResult c9_overrepresentation(const SpfTable& spf, int threads) {
    Failures f;
    OverrepResult d2 = overrep_experiment(2, 32, 10'000'000, spf, threads);
    f.check(d2.ratio >= 3.0, "d=2 ratio=" + io::fmt_double(d2.ratio));
    OverrepResult d1 = overrep_experiment(1, 5, 1'000'000, spf, threads);
    f.check(d1.ratio >= 0.95 && d1.ratio <= 1.05, "d=1 ratio=" + io::fmt_double(d1.ratio));
    return {9, "overrepresentation demo (d=2 ratio >= 3; d=1 control in [0.95,1.05])",
            f.count == 0,
            "d2 ratio=" + io::fmt_double(d2.ratio) + " d1 ratio=" + io::fmt_double(d1.ratio)};
}

CriterionResult c10_convenient(const SpfTable& spf) {
    // floor(lnlnln x) is 0 at x=1e5, which trivializes the comparison point, so
    // the x=1e5 reference uses J pinned to the value in force at x=1e7 (J=1).
    ConvenientParams p7 = convenient_params(10'000'000, 1.0);
    ConvenientParams p5 = convenient_params(100'000, 1.0, p7.J);
    double f7 = inconvenient_fraction(p7, spf);
    double f5 = inconvenient_fraction(p5, spf);
    bool ok = f7 < 0.10 && f7 <= f5;
    return {10, "inconvenient fraction < 0.10 at x=1e7 and <= x=1e5 value", ok,
            "f(1e7)=" + io::fmt_double(f7) + " f(1e5,J=1)=" + io::fmt_double(f5) +
                " J(1e7)=" + std::to_string(p7.J)};
}

CriterionResult c11_structural() {
    Failures f;
    for (const auto& [name, F] : acceptance_catalog()) {
        // sum over w equals phi(q)^J
        for (std::uint64_t q = 2; q <= 24; ++q) {
            for (unsigned J = 1; J <= 3; ++J) {
                auto exact = vset_exact(F, q, J);
                mpz_class total = 0;
                for (const auto& v : exact) total += v;
                mpz_class expect;
                mpz_ui_pow_ui(expect.get_mpz_t(), euler_phi(q), J);
                f.check(total == expect, name + " mass q=" + std::to_string(q));
            }
        }
        // indicator-zero law and mass on the charsum grid
        for (std::uint64_t q : {8ull, 9ull, 12ull, 27ull}) {
            ConstancyModulus cm = compute_M(F, q);
            mpz_class f1 = F.eval(1);
            for (unsigned J = 2; J <= 6; ++J) {
                auto exact = vset_exact(F, q, J);
                mpz_class total = 0;
                for (const auto& v : exact) total += v;
                mpz_class expect;
                mpz_ui_pow_ui(expect.get_mpz_t(), euler_phi(q), J);
                f.check(total == expect, name + " mass q=" + std::to_string(q));
                for (std::uint64_t w = 0; w < q; ++w) {
                    mpz_class delta = f1 * static_cast<unsigned long>(J) -
                                      mpz_class(static_cast<unsigned long>(w));
                    if (!mpz_divisible_ui_p(delta.get_mpz_t(), cm.M))
                        f.check(exact[w] == 0, name + " indicator-zero q=" +
                                                   std::to_string(q) + " w=" +
                                                   std::to_string(w));
                }
            }
        }
        // CRT multiplicativity of #V via the independent brute-force path,
        // and agreement of the convolution counts with the oracle beyond the
        // criterion-1 range
        for (std::uint64_t q : {12ull, 36ull, 72ull}) {
            for (unsigned J = 1; J <= 2; ++J) {
                auto whole = vset_bruteforce(F, q, J);
                auto conv = vset_exact(F, q, J);
                std::vector<std::pair<std::uint64_t, std::vector<mpz_class>>> parts;
                for (const auto& [ell, e] : factorize(q).factors) {
                    std::uint64_t n = 1;
                    for (int i = 0; i < e; ++i) n *= ell;
                    parts.emplace_back(n, vset_bruteforce(F, n, J));
                }
                for (std::uint64_t w = 0; w < q; ++w) {
                    mpz_class prod = 1;
                    for (const auto& [n, tab] : parts) prod *= tab[w % n];
                    f.check(whole[w] == prod,
                            name + " CRT q=" + std::to_string(q) + " w=" + std::to_string(w));
                    f.check(conv[w] == whole[w], name + " exact vs brute q=" +
                                                     std::to_string(q) + " w=" +
                                                     std::to_string(w));
                }
            }
        }
        // xi multiplicativity across coprime pairs
        for (std::uint64_t q1 = 2; q1 <= 100; ++q1) {
            for (std::uint64_t q2 = q1 + 1; q2 <= 100; ++q2) {
                if (std::gcd(q1, q2) != 1) continue;
                f.check(xi_max_roots(F, q1 * q2) ==
                            xi_max_roots(F, q1) * xi_max_roots(F, q2),
                        name + " xi " + std::to_string(q1) + "," + std::to_string(q2));
            }
        }
        // Konyagin-shape bound with a constant fitted on the small grid
        {
            int d = F.degree();
            double c = 1.0;
            for (std::uint64_t ell = 2; ell <= 47; ++ell) {
                if (!is_prime(ell)) continue;
                std::uint64_t n = ell;
                while (n <= 1000) {
                    double xi = static_cast<double>(xi_max_roots(F, n));
                    c = std::max(c, xi / std::pow(static_cast<double>(n), 1.0 - 1.0 / d));
                    n *= ell;
                }
            }
            for (std::uint64_t ell = 2; ell <= 47; ++ell) {
                if (!is_prime(ell)) continue;
                std::uint64_t n = ell;
                while (n <= 10'000) {
                    double xi = static_cast<double>(xi_max_roots(F, n));
                    f.check(xi <= c * std::pow(static_cast<double>(n), 1.0 - 1.0 / d) + 1e-9,
                            name + " Konyagin shape at " + std::to_string(n));
                    n *= ell;
                }
            }
        }
    }
    // divisor closure of S_f up to q = 500
    for (const auto& [name, F] : acceptance_catalog()) {
        for (const auto& policy : acceptance_policies()) {
            std::vector<Verdict> verdicts(501, Verdict::Holds);
            for (std::uint64_t q = 1; q <= 500; ++q)
                verdicts[q] = delange_classify(F, policy, q).in_sf;
            for (std::uint64_t q = 1; q <= 500; ++q) {
                if (verdicts[q] != Verdict::Holds) continue;
                for (std::uint64_t d = 1; d <= q; ++d)
                    if (q % d == 0)
                        f.check(verdicts[d] == Verdict::Holds,
                                name + "/" + policy.name() + " divisor closure q=" +
                                    std::to_string(q) + " d=" + std::to_string(d));
            }
        }
    }
    return {11, "structural invariants (mass, CRT, xi, closure, indicator-zero)",
            f.count == 0, f.summary()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<CriterionResult> results;
    auto timed = [&](CriterionResult r, Clock::time_point start) {
        r.seconds =
            std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - start)
                .count();
        results.push_back(std::move(r));
    };

    auto t0 = Clock::now();
    timed(c1_oracle_equivalence(), t0);
    t0 = Clock::now();
    timed(c2_charsum_identity(), t0);
    t0 = Clock::now();
    timed(c3_x_sum_closed_form(), t0);
    t0 = Clock::now();
    timed(c4_bound_scans(options.threads), t0);
    t0 = Clock::now();
    timed(c5_content_reduction(), t0);
    t0 = Clock::now();
    timed(c6_asymptotic_convergence(), t0);

    SpfTable spf(10'000'000);
    t0 = Clock::now();
    timed(c7_classifier_sieve(spf, options.threads), t0);
    t0 = Clock::now();
    timed(c8_nonuniform_density(spf, options.threads), t0);
    t0 = Clock::now();
    timed(c9_overrepresentation(spf, options.threads), t0);
    t0 = Clock::now();
    timed(c10_convenient(spf), t0);
    t0 = Clock::now();
    timed(c11_structural(), t0);
    return results;
}

}  // namespace uniadd
