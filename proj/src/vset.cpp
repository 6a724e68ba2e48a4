#include "uniadd/vset.hpp"

#include <algorithm>
#include <cmath>

#include "uniadd/detail.hpp"
#include "uniadd/expsum.hpp"

namespace uniadd {

namespace {

std::uint64_t checked_pow(std::uint64_t ell, int e, std::uint64_t cap, const char* what) {
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    if (e < 1) throw domain_error("exponent must be positive");
    std::uint64_t n = 1;
    for (int i = 0; i < e; ++i) {
        if (n > cap / ell) throw resource_error(std::string(what) + ": ell^e exceeds cap");
        n *= ell;
    }
    return n;
}

std::vector<mpz_class> cyclic_mul(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) {
    std::size_t n = a.size();
    std::vector<mpz_class> c(n, mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            std::size_t w = i + j;
            if (w >= n) w -= n;
            c[w] += a[i] * b[j];
        }
    }
    return c;
}

std::vector<mpz_class> conv_power(const std::vector<std::uint64_t>& dist, unsigned J) {
    std::size_t n = dist.size();
    std::vector<mpz_class> result(n, mpz_class(0));
    result[0] = 1;
    std::vector<mpz_class> base(n);
    for (std::size_t i = 0; i < n; ++i) base[i] = static_cast<unsigned long>(dist[i]);
    while (J) {
        if (J & 1) result = cyclic_mul(result, base);
        J >>= 1;
        if (J) base = cyclic_mul(base, base);
    }
    return result;
}

}  // namespace

std::vector<std::uint64_t> value_distribution(const Polynomial& F, std::uint64_t ell,
                                              int e, std::uint64_t cap) {
    require_nonconstant(F);
    std::uint64_t n = checked_pow(ell, e, cap, "value_distribution");
    std::vector<std::uint64_t> counts(n, 0);
    for (std::uint64_t v = 1; v < n; ++v)
        if (v % ell != 0) ++counts[F.eval_mod(static_cast<std::int64_t>(v), n)];
    return counts;
}

std::vector<mpz_class> vset_exact(const Polynomial& F, std::uint64_t q, unsigned J,
                                  std::uint64_t pk_cap) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    if (J > caps::kJMax) throw resource_error("vset_exact: J exceeds cap");
    if (q > caps::kValueDistModulus) throw resource_error("vset_exact: q exceeds cap");
    if (q == 1) return {mpz_class(1)};
    FactoredModulus fm = factorize(q);
    struct Part {
        std::uint64_t n;
        std::vector<mpz_class> table;
    };
    std::vector<Part> parts;
    for (const auto& [ell, e] : fm.factors) {
        std::uint64_t n = checked_pow(ell, e, pk_cap, "vset_exact");
        parts.push_back({n, conv_power(value_distribution(F, ell, e, pk_cap), J)});
    }
    std::vector<mpz_class> out(q);
    for (std::uint64_t w = 0; w < q; ++w) {
        mpz_class prod = 1;
        for (const Part& part : parts) prod *= part.table[w % part.n];
        out[w] = prod;
    }
    return out;
}

std::vector<mpz_class> vset_bruteforce(const Polynomial& F, std::uint64_t q, unsigned J,
                                       std::uint64_t tuple_cap) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    if (q > caps::kValueDistModulus) throw resource_error("vset_bruteforce: q exceeds cap");
    if (q == 1) return {mpz_class(1)};
    std::vector<std::uint32_t> units = units_mod(q);
    unsigned __int128 tuples = 1;
    for (unsigned j = 0; j < J; ++j) {
        tuples *= units.size();
        if (tuples > tuple_cap) throw resource_error("vset_bruteforce: phi(q)^J exceeds cap");
    }
    std::vector<std::uint64_t> fu(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
        fu[i] = F.eval_mod(units[i], q);
    std::vector<std::uint64_t> counts(q, 0);
    // odometer over J digits with an incremental running sum
    std::vector<std::size_t> idx(J, 0);
    std::uint64_t sum = 0;
    for (unsigned j = 0; j < J; ++j) sum = addmod(sum, fu[0], q);
    for (;;) {
        ++counts[sum];
        unsigned j = 0;
        for (; j < J; ++j) {
            sum = addmod(sum, q - fu[idx[j]], q);
            if (++idx[j] < units.size()) {
                sum = addmod(sum, fu[idx[j]], q);
                break;
            }
            idx[j] = 0;
            sum = addmod(sum, fu[0], q);
        }
        if (j == J) break;  // odometer wrapped
    }
    std::vector<mpz_class> out(q);
    for (std::uint64_t w = 0; w < q; ++w) out[w] = static_cast<unsigned long>(counts[w]);
    return out;
}

double H_term(const Polynomial& F, std::uint64_t ell, int k, unsigned J, std::uint64_t w,
              double* imag_out, std::uint64_t cap) {
    if (J > caps::kJMax) throw resource_error("H_term: J exceeds cap");
    ExpSumKernel kernel(F, ell, k, cap);
    std::uint64_t n = kernel.modulus();
    double phi = static_cast<double>(kernel.phi());
    std::uint64_t ww = w % n;
    detail::ComplexSum acc;
    for (std::uint64_t r = 1; r < n; ++r) {
        if (r % ell == 0) continue;
        std::complex<double> s = kernel.sum(static_cast<std::int64_t>(r)) / phi;
        std::uint64_t j = (n - mulmod(r, ww, n)) % n;
        acc.add(detail::root_of_unity(j, n) * detail::cpow_int(s, J));
    }
    std::complex<double> total = acc.value();
    if (imag_out) *imag_out = total.imag();
    return total.real();
}

namespace {

double phi_power_over(std::uint64_t phi, unsigned J, std::uint64_t n) {
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), phi, J);
    mpq_class ratio(num, mpz_class(static_cast<unsigned long>(n)));
    ratio.canonicalize();
    return ratio.get_d();
}

}  // namespace

double vset_charsum(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                    std::uint64_t w, std::uint64_t cap) {
    std::uint64_t n = checked_pow(ell, e, cap, "vset_charsum");
    detail::NeumaierSum hsum;
    for (int k = 1; k <= e; ++k) hsum.add(H_term(F, ell, k, J, w, nullptr, cap));
    std::uint64_t phi = n - n / ell;
    return phi_power_over(phi, J, n) * (1.0 + hsum.value());
}

double vset_charsum_q(const Polynomial& F, std::uint64_t q, unsigned J, std::uint64_t w,
                      std::uint64_t cap) {
    if (q == 0) throw domain_error("q must be positive");
    if (q == 1) return 1.0;
    double prod = 1.0;
    for (const auto& [ell, e] : factorize(q).factors) {
        std::uint64_t n = 1;
        for (int i = 0; i < e; ++i) n *= ell;
        prod *= vset_charsum(F, ell, e, J, w % n, cap);
    }
    return prod;
}

namespace {

// All-w character-sum values for one prime power, sharing the unit sums
// across w.
std::vector<double> charsum_table(const Polynomial& F, std::uint64_t ell, int e,
                                  unsigned J, std::uint64_t cap) {
    std::uint64_t n_full = checked_pow(ell, e, cap, "vset_charsum");
    std::vector<detail::ComplexSum> acc(n_full);
    std::uint64_t nk = 1;
    for (int k = 1; k <= e; ++k) {
        nk *= ell;
        ExpSumKernel kernel(F, ell, k, cap);
        double phi = static_cast<double>(kernel.phi());
        std::vector<std::complex<double>> powv;
        std::vector<std::uint64_t> rs;
        for (std::uint64_t r = 1; r < nk; ++r) {
            if (r % ell == 0) continue;
            rs.push_back(r);
            powv.push_back(
                detail::cpow_int(kernel.sum(static_cast<std::int64_t>(r)) / phi, J));
        }
        for (std::uint64_t w = 0; w < n_full; ++w) {
            std::uint64_t ww = w % nk;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                std::uint64_t j = (nk - mulmod(rs[i], ww, nk)) % nk;
                acc[w].add(detail::root_of_unity(j, nk) * powv[i]);
            }
        }
    }
    std::uint64_t phi_full = n_full - n_full / ell;
    double scale = phi_power_over(phi_full, J, n_full);
    std::vector<double> out(n_full);
    for (std::uint64_t w = 0; w < n_full; ++w)
        out[w] = scale * (1.0 + acc[w].value().real());
    return out;
}

}  // namespace

namespace {

// Largest k <= e with F(v) = F(1) mod ell^k on all units; the condition is
// inherited downward so the ascending scan stops at the first failure.
int constancy_exponent(const Polynomial& F, std::uint64_t ell, int e, std::uint64_t cap) {
    int D = 0;
    std::uint64_t n = 1;
    for (int k = 1; k <= e; ++k) {
        if (n > cap / ell) throw resource_error("compute_M: ell^k exceeds cap");
        n *= ell;
        std::uint64_t f1 = F.eval_mod(1, n);
        bool constant = true;
        for (std::uint64_t v = 2; v < n && constant; ++v)
            if (v % ell != 0) constant = F.eval_mod(static_cast<std::int64_t>(v), n) == f1;
        if (!constant) break;
        D = k;
    }
    return D;
}

}  // namespace

ConstancyModulus compute_M(const Polynomial& F, std::uint64_t q, std::uint64_t cap) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    ConstancyModulus out;
    for (const auto& [ell, e] : factorize(q).factors) {
        int D = constancy_exponent(F, ell, e, cap);
        out.D.push_back({ell, D});
        for (int i = 0; i < D; ++i) out.M *= ell;
    }
    return out;
}

double vset_asymptotic(const Polynomial& F, std::uint64_t q, unsigned J, std::uint64_t w,
                       std::uint64_t cap) {
    ConstancyModulus cm = compute_M(F, q, cap);
    mpz_class delta = F.eval(1) * static_cast<unsigned long>(J) -
                      mpz_class(static_cast<unsigned long>(w));
    bool indicator = mpz_divisible_ui_p(delta.get_mpz_t(), cm.M) != 0;
    if (!indicator) return 0.0;
    std::uint64_t phi = euler_phi(q);
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), phi, J);
    num *= static_cast<unsigned long>(cm.M);
    mpq_class ratio(num, mpz_class(static_cast<unsigned long>(q)));
    ratio.canonicalize();
    return ratio.get_d();
}

namespace {

double B_value(double CF, std::uint64_t ell, int k, int d) {
    double le = static_cast<double>(ell);
    double phi = std::pow(le, k - 1) * (le - 1.0);
    return CF * std::pow(le, k * (1.0 - 1.0 / (d + 1.0))) / phi;
}

}  // namespace

LocalSpectrum local_spectrum(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                             std::uint64_t cap) {
    require_nonconstant(F);
    (void)J;  // the partition is J-free; J kept for interface symmetry
    checked_pow(ell, e, cap, "local_spectrum");
    LocalSpectrum out;
    out.ell = ell;
    out.e = e;
    out.D = constancy_exponent(F, ell, e, cap);
    double CF = corollary_CF(F);
    int d = F.degree();
    int E = out.D + 1;
    while (B_value(CF, ell, E, d) >= 1.0) {
        ++E;
        if (E > out.D + 8000) throw resource_error("local_spectrum: E_ell runaway");
    }
    out.E = E;
    for (int k = 1; k <= e; ++k) {
        out.B[k] = B_value(CF, ell, k, d);
        if (k <= out.D)
            out.X.push_back(k);
        else if (k >= E)
            out.Y.push_back(k);
        else
            out.Z.push_back(k);
    }
    return out;
}

XSumCheck x_sum_check(const Polynomial& F, std::uint64_t ell, int e, unsigned J,
                           std::uint64_t w, std::uint64_t cap) {
    require_nonconstant(F);
    int D = constancy_exponent(F, ell, e, caps::kConstancyModulus);
    XSumCheck out;
    detail::NeumaierSum acc;
    for (int k = 1; k <= D; ++k) acc.add(H_term(F, ell, k, J, w, nullptr, cap));
    out.computed = acc.value();
    if (D == 0) {
        out.closed_form = 0.0;
        return out;
    }
    std::uint64_t lD = 1;
    for (int i = 0; i < D; ++i) lD *= ell;
    mpz_class delta = F.eval(1) * static_cast<unsigned long>(J) -
                      mpz_class(static_cast<unsigned long>(w));
    bool match = mpz_divisible_ui_p(delta.get_mpz_t(), lD) != 0;
    out.closed_form = match ? static_cast<double>(lD) - 1.0 : -1.0;
    return out;
}

std::vector<XSumCheck> x_sum_check_all(const Polynomial& F, std::uint64_t ell, int e,
                                            unsigned J, std::uint64_t cap) {
    require_nonconstant(F);
    std::uint64_t n_full = checked_pow(ell, e, caps::kConstancyModulus, "x_sum_check");
    int D = constancy_exponent(F, ell, e, caps::kConstancyModulus);
    std::vector<detail::ComplexSum> acc(n_full);
    std::uint64_t nk = 1;
    for (int k = 1; k <= D; ++k) {
        nk *= ell;
        ExpSumKernel kernel(F, ell, k, cap);
        double phi = static_cast<double>(kernel.phi());
        std::vector<std::complex<double>> powv;
        std::vector<std::uint64_t> rs;
        for (std::uint64_t r = 1; r < nk; ++r) {
            if (r % ell == 0) continue;
            rs.push_back(r);
            powv.push_back(detail::cpow_int(kernel.sum(static_cast<std::int64_t>(r)) / phi, J));
        }
        for (std::uint64_t w = 0; w < n_full; ++w) {
            std::uint64_t ww = w % nk;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                std::uint64_t j = (nk - mulmod(rs[i], ww, nk)) % nk;
                acc[w].add(detail::root_of_unity(j, nk) * powv[i]);
            }
        }
    }
    std::uint64_t lD = 1;
    for (int i = 0; i < D; ++i) lD *= ell;
    mpz_class f1J = F.eval(1) * static_cast<unsigned long>(J);
    std::vector<XSumCheck> out(n_full);
    for (std::uint64_t w = 0; w < n_full; ++w) {
        out[w].computed = acc[w].value().real();
        if (D == 0) {
            out[w].closed_form = 0.0;
        } else {
            mpz_class delta = f1J - mpz_class(static_cast<unsigned long>(w));
            bool match = mpz_divisible_ui_p(delta.get_mpz_t(), lD) != 0;
            out[w].closed_form = match ? static_cast<double>(lD) - 1.0 : -1.0;
        }
    }
    return out;
}

EtaEll0 eta_and_l0(const Polynomial& F, std::uint64_t z_cap, std::uint64_t ell0_cap) {
    require_nonconstant(F);
    int d = F.degree();
    double CF = corollary_CF(F);

    // Candidate primes for D_ell >= 1: ell <= d+1, ell = 2, and divisors of
    // the content of F without its constant term.
    std::vector<std::uint64_t> cands{2};
    for (std::uint64_t p = 3; p <= static_cast<std::uint64_t>(d) + 1; ++p)
        if (is_prime(p)) cands.push_back(p);
    mpz_class rem = F.content(false);
    for (std::uint64_t p = 2; p <= 1'000'000 && rem > 1; ++p) {
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) continue;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p))
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
        if (std::find(cands.begin(), cands.end(), p) == cands.end()) cands.push_back(p);
    }
    if (rem > 1) throw resource_error("eta_and_l0: content has prime factors above 1e6");
    std::sort(cands.begin(), cands.end());

    std::vector<std::pair<std::uint64_t, int>> constancy;  // (ell, d_ell)
    std::uint64_t largest_M_prime = 2;
    for (std::uint64_t p : cands) {
        int k = 0;
        std::uint64_t n = 1;
        for (;;) {
            if (n > caps::kConstancyModulus / p)
                throw resource_error("eta_and_l0: constancy scan exceeds cap");
            n *= p;
            std::uint64_t f1 = F.eval_mod(1, n);
            bool constant = true;
            for (std::uint64_t v = 2; v < n && constant; ++v)
                if (v % p != 0) constant = F.eval_mod(static_cast<std::int64_t>(v), n) == f1;
            if (!constant) break;
            ++k;
        }
        constancy.emplace_back(p, k);
        if (k >= 1) largest_M_prime = std::max(largest_M_prime, p);
    }

    double target = std::pow(2.0 * CF, 2.0 * (d + 1));
    if (target > static_cast<double>(ell0_cap))
        throw resource_error("eta_and_l0: (2 C_F)^{2(d+1)} exceeds the prime-scan cap");
    std::uint64_t L1 = static_cast<std::uint64_t>(std::ceil(target));
    std::uint64_t L2 = 2;
    while (B_value(CF, L2, 1, d) >= 1.0) ++L2;
    std::uint64_t ell0 = std::max({largest_M_prime, L1, L2});

    // max over ell <= ell0 of B(ell, E_ell) and the normalized sums in the
    // Z-range (D_ell, E_ell), all r with ell coprime to r.
    std::vector<bool> composite(ell0 + 1, false);
    double maxq = 0.0;
    for (std::uint64_t p = 2; p <= ell0; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= ell0; m += p) composite[m] = true;
        int D = 0;
        for (const auto& [cp, ck] : constancy)
            if (cp == p) D = ck;
        int E = D + 1;
        while (B_value(CF, p, E, d) >= 1.0) ++E;
        maxq = std::max(maxq, B_value(CF, p, E, d));
        std::uint64_t n = 1;
        for (int i = 0; i < D; ++i) n *= p;
        for (int k = D + 1; k < E; ++k) {
            n *= p;
            if (n > z_cap) throw resource_error("eta_and_l0: Z-range modulus exceeds cap");
            ExpSumKernel kernel(F, p, k, z_cap);
            double phi = static_cast<double>(kernel.phi());
            for (std::uint64_t r = 1; r < n; ++r) {
                if (r % p == 0) continue;
                maxq = std::max(maxq, std::abs(kernel.sum(static_cast<std::int64_t>(r))) / phi);
            }
        }
    }
    return {1.0 - maxq, ell0, maxq};
}

std::uint64_t xi_max_roots(const Polynomial& F, std::uint64_t q, std::uint64_t cap) {
    require_nonconstant(F);
    if (q == 0) throw domain_error("q must be positive");
    if (q > cap) throw resource_error("xi_max_roots: q exceeds cap");
    if (q == 1) return 1;
    std::uint64_t xi = 1;
    for (const auto& [ell, e] : factorize(q).factors) {
        std::uint64_t n = 1;
        for (int i = 0; i < e; ++i) n *= ell;
        std::vector<std::uint32_t> counts(n, 0);
        std::uint32_t best = 0;
        for (std::uint64_t v = 0; v < n; ++v)
            best = std::max(best, ++counts[F.eval_mod(static_cast<std::int64_t>(v), n)]);
        xi *= best;
    }
    return xi;
}

VSetReport vset_report(const Polynomial& F, std::uint64_t q, unsigned J, bool diagnostics) {
    require_nonconstant(F);
    VSetReport rep;
    rep.q = q;
    rep.J = J;
    rep.exact = vset_exact(F, q, J);
    ConstancyModulus cm = compute_M(F, q);
    rep.M = cm.M;
    mpz_class f1J = F.eval(1) * static_cast<unsigned long>(J);
    std::uint64_t phi = euler_phi(q);
    mpz_class phiJ;
    mpz_ui_pow_ui(phiJ.get_mpz_t(), phi, J);
    mpq_class scale(phiJ * static_cast<unsigned long>(cm.M),
                    mpz_class(static_cast<unsigned long>(q)));
    scale.canonicalize();
    double asym_value = scale.get_d();
    rep.asymptotic.resize(q);
    rep.indicator.resize(q);
    for (std::uint64_t w = 0; w < q; ++w) {
        mpz_class delta = f1J - mpz_class(static_cast<unsigned long>(w));
        bool ind = mpz_divisible_ui_p(delta.get_mpz_t(), cm.M) != 0;
        rep.indicator[w] = ind;
        rep.asymptotic[w] = ind ? asym_value : 0.0;
    }
    bool charsum_ok = true;
    for (const auto& [ell, e] : factorize(q).factors) {
        std::uint64_t n = 1;
        for (int i = 0; i < e; ++i) n *= ell;
        charsum_ok = charsum_ok && n <= caps::kCharSumModulus && J <= caps::kJMax;
    }
    if (charsum_ok) {
        std::vector<double> cs(q, 1.0);
        for (const auto& [ell, e] : factorize(q).factors) {
            std::uint64_t n = 1;
            for (int i = 0; i < e; ++i) n *= ell;
            std::vector<double> tab = charsum_table(F, ell, e, J, caps::kCharSumModulus);
            for (std::uint64_t w = 0; w < q; ++w) cs[w] *= tab[w % n];
        }
        for (std::uint64_t w = 0; w < q; ++w) {
            double ex = rep.exact[w].get_d();
            double denom = std::max(1.0, ex);
            rep.max_relative_error =
                std::max(rep.max_relative_error, std::abs(cs[w] - ex) / denom);
        }
        rep.charsum = std::move(cs);
    }
    if (diagnostics) {
        for (const auto& [ell, e] : factorize(q).factors)
            rep.spectra.push_back(local_spectrum(F, ell, e, J));
        rep.eta = eta_and_l0(F);
        rep.xi = xi_max_roots(F, q);
    }
    return rep;
}

}  // namespace uniadd
