#include "uniadd/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "uniadd/detail.hpp"
#include "uniadd/modarith.hpp"

namespace uniadd {

namespace {

constexpr std::uint64_t kRootTableMax = 1u << 20;

std::uint64_t checked_prime_power(std::uint64_t ell, int k, std::uint64_t cap,
                                  const char* what) {
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    if (k < 1) throw domain_error("k must be positive");
    std::uint64_t n = 1;
    for (int i = 0; i < k; ++i) {
        if (n > cap / ell) throw resource_error(std::string(what) + ": ell^k exceeds cap");
        n *= ell;
    }
    return n;
}

}  // namespace

ExpSumKernel::ExpSumKernel(const Polynomial& F, std::uint64_t ell, int k,
                           std::uint64_t cap) {
    n_ = checked_prime_power(ell, k, cap, "expsum");
    phi_ = n_ - n_ / ell;
    values_.reserve(phi_);
    for (std::uint64_t v = 1; v < n_; ++v)
        if (v % ell != 0)
            values_.push_back(static_cast<std::uint32_t>(
                F.eval_mod(static_cast<std::int64_t>(v), n_)));
    if (n_ <= kRootTableMax) {
        roots_.resize(n_);
        for (std::uint64_t j = 0; j < n_; ++j) roots_[j] = detail::root_of_unity(j, n_);
    }
}

std::complex<double> ExpSumKernel::sum(std::int64_t r) const {
    std::int64_t sn = static_cast<std::int64_t>(n_);
    std::uint64_t rm = static_cast<std::uint64_t>(((r % sn) + sn) % sn);
    detail::ComplexSum acc;
    if (!roots_.empty()) {
        for (std::uint32_t fv : values_) acc.add(roots_[mulmod(rm, fv, n_)]);
    } else {
        for (std::uint32_t fv : values_) acc.add(detail::root_of_unity(mulmod(rm, fv, n_), n_));
    }
    return acc.value();
}

std::complex<double> exact_expsum(const Polynomial& F, std::uint64_t ell, int k,
                                  std::int64_t r, std::uint64_t cap) {
    return ExpSumKernel(F, ell, k, cap).sum(r);
}

std::optional<double> cochrane_bound(const Polynomial& F, std::uint64_t ell, int k) {
    require_nonconstant(F);
    if (is_constant_map_mod(F, ell)) return std::nullopt;
    double d = F.degree();
    return 8.82 * std::pow(static_cast<double>(ell), k * (1.0 - 1.0 / (d + 1.0)));
}

TauR tau_and_R(const Polynomial& F, std::uint64_t ell) {
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    Polynomial deriv = F.derivative();
    if (deriv.is_zero()) throw domain_error("tau_and_R: derivative is zero");
    mpz_class g = deriv.content(true);
    int tau = 0;
    while (mpz_divisible_ui_p(g.get_mpz_t(), ell)) {
        ++tau;
        mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), ell);
    }
    std::vector<mpz_class> scaled = deriv.coeffs();
    mpz_class scale = 1;
    for (int i = 0; i < tau; ++i) scale *= static_cast<unsigned long>(ell);
    for (auto& a : scaled) a /= scale;
    Polynomial reduced{std::move(scaled)};
    int roots = 0;
    for (std::uint64_t X = 0; X < ell; ++X)
        if (reduced.eval_mod(static_cast<std::int64_t>(X), ell) == 0) ++roots;
    return {tau, roots};
}

std::optional<double> loh_bound(const Polynomial& F, std::uint64_t ell, int k) {
    require_nonconstant(F);
    if (!is_prime(ell)) throw domain_error("ell must be prime");
    mpz_class cw = F.content(false);
    if (mpz_divisible_ui_p(cw.get_mpz_t(), ell)) return std::nullopt;
    SparseForm sf = sparse_form(F);
    int s = sf.s();
    if (s < 2) return std::nullopt;
    if (k < 2) return std::nullopt;
    int ds = sf.d_s();
    double le = static_cast<double>(ell);
    if (ell > static_cast<std::uint64_t>(ds))
        return (ds - 1) * std::pow(le, k * (1.0 - 1.0 / s));
    TauR tr = tau_and_R(F, ell);
    if (k < tr.tau + 2) return std::nullopt;
    return tr.roots * std::pow(le, (tr.tau + 1.0) / s) *
           std::pow(le, k * (1.0 - 1.0 / s));
}

namespace {

double cf_no_split(const Polynomial& F, std::uint64_t ell, int d) {
    if (!is_constant_map_mod(F, ell)) return 8.82;
    // Constant map with content coprime to ell forces s >= 2.
    SparseForm sf = sparse_form(F);
    int s = sf.s();
    int ds = sf.d_s();
    TauR tr = tau_and_R(F, ell);
    double le = static_cast<double>(ell);
    double loh_c = ell > static_cast<std::uint64_t>(ds)
                       ? static_cast<double>(ds - 1)
                       : tr.roots * std::pow(le, (tr.tau + 1.0) / s);
    // k <= tau + 1 falls back on |S| <= phi(ell^k) <= ell^k.
    double trivial_c = std::pow(le, (tr.tau + 1.0) / (d + 1.0));
    return std::max(loh_c, trivial_c);
}

double cf_at_prime(const Polynomial& F, std::uint64_t ell, int d) {
    if (!is_constant_map_mod(F, ell)) return 8.82;
    ContentSplit cs = shifted_content_split(F, ell);
    if (cs.t >= 1) {
        // |S(F, ell^k)| = ell^t |S(G, ell^{k-t})| for k > t; k <= t is covered
        // by the trivial bound since ell^{k/(d+1)} <= ell^t.
        return std::pow(static_cast<double>(ell), cs.t) *
               std::max(cf_no_split(cs.G, ell, d), 1.0);
    }
    return cf_no_split(F, ell, d);
}

}  // namespace

double corollary_CF(const Polynomial& F) {
    require_nonconstant(F);
    int d = F.degree();
    std::vector<std::uint64_t> cands;
    for (std::uint64_t p = 2; p <= static_cast<std::uint64_t>(d); ++p)
        if (is_prime(p)) cands.push_back(p);
    // Primes above the degree can only give a constant map by dividing the
    // content of F without its constant term.
    mpz_class rem = F.content(false);
    for (std::uint64_t p = 2; p <= 1'000'000 && rem > 1; ++p) {
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) continue;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p))
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
        if (p > static_cast<std::uint64_t>(d)) cands.push_back(p);
    }
    if (rem > 1)
        throw resource_error("corollary_CF: content has prime factors above 1e6");

    double C = 8.82;
    for (std::uint64_t ell : cands) C = std::max(C, cf_at_prime(F, ell, d));
    return C;
}

ReductionCheck content_reduction_check(const Polynomial& F, std::uint64_t ell, int k,
                                       std::int64_t r) {
    ContentSplit cs = shifted_content_split(F, ell);
    if (k <= cs.t) throw domain_error("content_reduction_check requires k > t");
    double lhs = std::abs(exact_expsum(F, ell, k, r));
    double rhs = std::pow(static_cast<double>(ell), cs.t) *
                 std::abs(exact_expsum(cs.G, ell, k - cs.t, r));
    return {lhs, rhs};
}

ExpSumReport expsum_report(const Polynomial& F, std::uint64_t ell, int k, std::int64_t r) {
    require_nonconstant(F);
    ExpSumReport rep;
    rep.ell = ell;
    rep.k = k;
    rep.r = r;
    rep.value = exact_expsum(F, ell, k, r);
    rep.magnitude = std::abs(rep.value);
    rep.cochrane = cochrane_bound(F, ell, k);
    rep.loh = loh_bound(F, ell, k);
    rep.corollary = corollary_CF(F) *
                    std::pow(static_cast<double>(ell),
                             k * (1.0 - 1.0 / (F.degree() + 1.0)));
    ContentSplit cs = shifted_content_split(F, ell);
    rep.t = cs.t;
    TauR tr = tau_and_R(F, ell);
    rep.tau = tr.tau;
    rep.roots = tr.roots;
    SparseForm sf = sparse_form(F);
    rep.s = sf.s();
    rep.d_s = sf.d_s();
    if (rep.cochrane)
        rep.applicable_lemma = "cochrane";
    else if (rep.loh)
        rep.applicable_lemma = "loh";
    else if (rep.t >= 1)
        rep.applicable_lemma = "content-split";
    else
        rep.applicable_lemma = "corollary";
    return rep;
}

ExpSumScan expsum_scan(const Polynomial& F, std::uint64_t ell_max, std::uint64_t pk_cap,
                       int threads) {
    require_nonconstant(F);
    double CF = corollary_CF(F);
    int d = F.degree();

    struct Cell {
        std::uint64_t ell;
        int k;
        std::uint64_t n;
    };
    std::vector<Cell> cells;
    for (std::uint64_t ell = 2; ell <= ell_max; ++ell) {
        if (!is_prime(ell)) continue;
        std::uint64_t n = ell;
        for (int k = 1;; ++k) {
            cells.push_back({ell, k, n});
            if (n > pk_cap / ell) break;
            n *= ell;
        }
    }

    std::vector<std::vector<ExpSumScanRow>> per_cell(cells.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Cell& c = cells[i];
            ExpSumKernel kernel(F, c.ell, c.k, pk_cap);
            std::optional<double> cb = cochrane_bound(F, c.ell, c.k);
            std::optional<double> lb = loh_bound(F, c.ell, c.k);
            double corollary =
                CF * std::pow(static_cast<double>(c.ell), c.k * (1.0 - 1.0 / (d + 1.0)));
            std::vector<std::uint64_t> rs;
            for (std::uint64_t r : {std::uint64_t{1}, c.ell + 1, c.n - 1}) {
                std::uint64_t rm = r % c.n;
                if (rm == 0 || rm % c.ell == 0) continue;
                bool dup = false;
                for (std::uint64_t prev : rs) dup = dup || prev % c.n == rm;
                if (!dup) rs.push_back(r);
            }
            for (std::uint64_t r : rs) {
                ExpSumScanRow row;
                row.ell = c.ell;
                row.k = c.k;
                row.r = static_cast<std::int64_t>(r);
                row.magnitude = std::abs(kernel.sum(row.r));
                row.cochrane = cb;
                row.loh = lb;
                row.corollary = corollary;
                row.violation = (cb && row.magnitude > *cb + 1e-6) ||
                                (lb && row.magnitude > *lb + 1e-6) ||
                                row.magnitude > corollary + 1e-6;
                per_cell[i].push_back(row);
            }
        }
    };

    int T = std::max(1, threads);
    if (T == 1) {
        work(0, cells.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (cells.size() + T - 1) / T;
        for (int t = 0; t < T; ++t) {
            std::size_t b = std::min(cells.size(), t * chunk);
            std::size_t e = std::min(cells.size(), b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }

    ExpSumScan out;
    for (auto& rows : per_cell)
        for (auto& row : rows) {
            out.violations += row.violation ? 1 : 0;
            out.max_corollary_ratio = std::max(out.max_corollary_ratio,
                                               row.magnitude / row.corollary);
            out.rows.push_back(row);
        }
    return out;
}

}  // namespace uniadd
