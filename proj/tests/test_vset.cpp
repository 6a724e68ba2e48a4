#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "uniadd/expsum.hpp"
#include "uniadd/modarith.hpp"
#include "uniadd/vset.hpp"

using namespace uniadd;
using doctest::Approx;

namespace {
std::vector<mpz_class> to_mpz(std::initializer_list<long> xs) {
    std::vector<mpz_class> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}
}  // namespace

TEST_CASE("value_distribution examples") {
    auto c1 = value_distribution(Polynomial::parse("0,0,1"), 2, 3);
    REQUIRE(c1.size() == 8);
    CHECK(c1[1] == 4);
    for (std::size_t w = 0; w < 8; ++w)
        if (w != 1) CHECK(c1[w] == 0);

    auto c2 = value_distribution(Polynomial::parse("0,1"), 3, 1);
    CHECK(c2 == std::vector<std::uint64_t>{0, 1, 1});

    auto c3 = value_distribution(Polynomial::parse("0,0,1"), 3, 1);
    CHECK(c3 == std::vector<std::uint64_t>{0, 2, 0});
}

TEST_CASE("vset_exact examples") {
    CHECK(vset_exact(Polynomial::parse("0,1"), 3, 2) == to_mpz({2, 1, 1}));
    CHECK(vset_exact(Polynomial::parse("0,0,1"), 3, 2) == to_mpz({0, 0, 4}));
    CHECK(vset_exact(Polynomial::parse("0,1"), 2, 2) == to_mpz({1, 0}));
    CHECK(vset_exact(Polynomial::parse("0,1"), 1, 5) == to_mpz({1}));
}

TEST_CASE("vset_bruteforce matches vset_exact") {
    for (const char* poly : {"0,1", "1,1,1", "-1,0,1", "1,2"}) {
        Polynomial F = Polynomial::parse(poly);
        for (std::uint64_t q : {2ull, 3ull, 8ull, 12ull, 15ull}) {
            for (unsigned J : {1u, 2u, 3u}) {
                CHECK(vset_exact(F, q, J) == vset_bruteforce(F, q, J));
            }
        }
    }
    CHECK(vset_bruteforce(Polynomial::parse("0,1"), 1, 3) == to_mpz({1}));
    CHECK_THROWS_AS(vset_bruteforce(Polynomial::parse("0,1"), 101, 32), resource_error);
}

TEST_CASE("vset mass identity") {
    for (std::uint64_t q : {6ull, 8ull, 9ull, 27ull}) {
        for (unsigned J : {1u, 2u, 4u}) {
            auto tab = vset_exact(Polynomial::parse("1,1,1"), q, J);
            mpz_class total = 0;
            for (const auto& v : tab) total += v;
            mpz_class expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), euler_phi(q), J);
            CHECK(total == expect);
        }
    }
}

TEST_CASE("H_term examples") {
    double im = 1;
    CHECK(H_term(Polynomial::parse("0,1"), 3, 1, 2, 0, &im) == Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(im) < 1e-6);
    CHECK(H_term(Polynomial::parse("0,0,1"), 3, 1, 2, 2) == Approx(2.0).epsilon(1e-9));
    CHECK(H_term(Polynomial::parse("0,0,1"), 3, 1, 2, 0) == Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("vset_charsum examples") {
    CHECK(vset_charsum(Polynomial::parse("0,1"), 3, 1, 2, 0) == Approx(2.0).epsilon(1e-9));
    CHECK(vset_charsum(Polynomial::parse("0,0,1"), 3, 1, 2, 2) == Approx(4.0).epsilon(1e-9));
    CHECK(vset_charsum(Polynomial::parse("0,0,1"), 3, 1, 2, 1) ==
          Approx(0.0).epsilon(1e-9).scale(1.0));
}

TEST_CASE("charsum agrees with exact counts across a grid") {
    for (const char* poly : {"0,1", "1,1,1", "2,-2,1"}) {
        Polynomial F = Polynomial::parse(poly);
        for (std::uint64_t q : {8ull, 9ull, 12ull}) {
            for (unsigned J : {2u, 3u, 5u}) {
                auto exact = vset_exact(F, q, J);
                for (std::uint64_t w = 0; w < q; ++w) {
                    double cs = vset_charsum_q(F, q, J, w);
                    double ex = exact[w].get_d();
                    CHECK(std::abs(cs - ex) / std::max(1.0, ex) < 1e-6);
                    CHECK(static_cast<double>(std::llround(cs)) == ex);
                }
            }
        }
    }
}

TEST_CASE("compute_M examples") {
    ConstancyModulus m1 = compute_M(Polynomial::parse("0,0,1"), 8);
    CHECK(m1.M == 8);
    REQUIRE(m1.D.size() == 1);
    CHECK(m1.D[0].prime == 2);
    CHECK(m1.D[0].exponent == 3);

    ConstancyModulus m2 = compute_M(Polynomial::parse("0,1"), 12);
    CHECK(m2.M == 2);

    CHECK(compute_M(Polynomial::parse("0,1"), 3).M == 1);
    CHECK(compute_M(Polynomial::parse("1,2"), 64).M == 4);
    CHECK(compute_M(Polynomial::parse("2,-2,1"), 64).M == 4);
}

TEST_CASE("vset_asymptotic examples") {
    CHECK(vset_asymptotic(Polynomial::parse("0,0,1"), 8, 1, 1) == Approx(4.0));
    CHECK(vset_asymptotic(Polynomial::parse("0,0,1"), 8, 1, 3) == 0.0);
    for (std::uint64_t w = 0; w < 3; ++w)
        CHECK(vset_asymptotic(Polynomial::parse("0,1"), 3, 2, w) ==
              Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("indicator-zero law") {
    for (const char* poly : {"0,0,1", "1,2", "2,-2,1"}) {
        Polynomial F = Polynomial::parse(poly);
        for (std::uint64_t q : {8ull, 9ull, 12ull}) {
            ConstancyModulus cm = compute_M(F, q);
            mpz_class f1 = F.eval(1);
            for (unsigned J : {2u, 3u, 4u}) {
                auto exact = vset_exact(F, q, J);
                for (std::uint64_t w = 0; w < q; ++w) {
                    mpz_class delta = f1 * static_cast<unsigned long>(J) -
                                      mpz_class(static_cast<unsigned long>(w));
                    if (!mpz_divisible_ui_p(delta.get_mpz_t(), cm.M))
                        CHECK(exact[w] == 0);
                }
            }
        }
    }
}

TEST_CASE("local_spectrum") {
    LocalSpectrum s1 = local_spectrum(Polynomial::parse("0,0,1"), 2, 3, 4);
    CHECK(s1.D == 3);
    CHECK(s1.X == std::vector<int>{1, 2, 3});
    CHECK(s1.Y.empty());
    CHECK(s1.Z.empty());

    // E_2 = 13 for a quadratic with C_F = 8.82
    LocalSpectrum s2 = local_spectrum(Polynomial::parse("0,0,1"), 2, 13, 4);
    CHECK(s2.E == 13);
    CHECK(s2.Y == std::vector<int>{13});

    LocalSpectrum s3 = local_spectrum(Polynomial::parse("0,1"), 3, 2, 4);
    CHECK(s3.D == 0);
    CHECK(s3.X.empty());
    CHECK(s3.Z.size() + s3.Y.size() == 2);  // Y u Z covers [1,2]

    // B is strictly decreasing in k
    for (int k = 2; k <= 13; ++k) CHECK(s2.B.at(k) < s2.B.at(k - 1));
}

TEST_CASE("x_sum_check examples") {
    XSumCheck a = x_sum_check(Polynomial::parse("0,1"), 3, 1, 2, 0);
    CHECK(a.computed == Approx(0.0).scale(1.0));
    CHECK(a.closed_form == 0.0);

    XSumCheck b = x_sum_check(Polynomial::parse("0,0,1"), 3, 1, 2, 2);
    CHECK(b.computed == Approx(2.0).epsilon(1e-9));
    CHECK(b.closed_form == 2.0);

    XSumCheck c = x_sum_check(Polynomial::parse("0,0,1"), 3, 1, 2, 1);
    CHECK(c.computed == Approx(-1.0).epsilon(1e-9));
    CHECK(c.closed_form == -1.0);
}

TEST_CASE("X-level sum closed form on a grid") {
    for (const char* poly : {"0,1", "0,0,1", "1,2", "2,-2,1"}) {
        Polynomial F = Polynomial::parse(poly);
        for (std::uint64_t ell : {2ull, 3ull, 5ull}) {
            for (int e = 1; e <= 3; ++e) {
                for (unsigned J : {1u, 4u, 9u}) {
                    auto rows = x_sum_check_all(F, ell, e, J);
                    for (const auto& row : rows)
                        CHECK(std::abs(row.computed - row.closed_form) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("X-level sum batching matches the single-w operation") {
    Polynomial F = Polynomial::parse("0,0,1");
    auto rows = x_sum_check_all(F, 2, 3, 5);
    for (std::uint64_t w = 0; w < 8; ++w) {
        XSumCheck single = x_sum_check(F, 2, 3, 5, w);
        CHECK(rows[w].closed_form == single.closed_form);
        CHECK(rows[w].computed == Approx(single.computed).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("xi_max_roots") {
    CHECK(xi_max_roots(Polynomial::parse("0,1"), 7) == 1);
    CHECK(xi_max_roots(Polynomial::parse("0,1"), 360) == 1);
    CHECK(xi_max_roots(Polynomial::parse("0,0,1"), 8) == 4);
    CHECK(xi_max_roots(Polynomial::parse("0,0,1"), 3) == 2);
    CHECK(xi_max_roots(Polynomial::parse("0,0,1"), 1) == 1);
}

TEST_CASE("xi agrees with direct enumeration mod q") {
    for (const char* poly : {"0,1", "0,0,1", "-1,0,1", "1,2"}) {
        Polynomial F = Polynomial::parse(poly);
        for (std::uint64_t q = 2; q <= 200; ++q) {
            std::vector<std::uint32_t> counts(q, 0);
            std::uint32_t best = 0;
            for (std::uint64_t v = 0; v < q; ++v)
                best = std::max(best, ++counts[F.eval_mod(static_cast<std::int64_t>(v), q)]);
            CHECK(xi_max_roots(F, q) == best);
        }
    }
}

TEST_CASE("eta_and_l0 for the linear catalog entries") {
    EtaEll0 e = eta_and_l0(Polynomial::parse("0,1"));
    // (2 * 8.82)^4 = 96826.52...
    CHECK(e.ell0 >= 96827);
    CHECK(e.eta > 0.0);
    CHECK(e.eta < 1.0);
}

TEST_CASE("geometric tail bound for primes with Y = S") {
    // For primes with E_ell = 1 (no constancy, B(ell,1) < 1) the Y-sum over a
    // single level obeys twice-the-first-term once J >= 2(d+1).
    Polynomial F = Polynomial::parse("1,1,1");
    double CF = corollary_CF(F);
    int d = F.degree();
    unsigned J = 2 * (d + 1);
    int tested = 0;
    for (std::uint64_t ell = 687; ell < 800 && tested < 3; ++ell) {
        if (!is_prime(ell)) continue;
        double B1 = CF * std::pow(static_cast<double>(ell), 1.0 - 1.0 / (d + 1.0)) /
                    static_cast<double>(ell - 1);
        if (B1 >= 1.0) continue;
        if (compute_M(F, ell).M != 1) continue;
        ++tested;
        double bound = 2.0 * std::pow(B1, J) * static_cast<double>(ell);
        double h = H_term(F, ell, 1, J, 1);
        CHECK(std::abs(h) <= bound + 1e-9);
    }
    CHECK(tested == 3);
}

TEST_CASE("convergence of exact to asymptotic in J") {
    // x^2 at q=8 has empty Y and Z: the asymptotic is exact for every J.
    Polynomial F = Polynomial::parse("0,0,1");
    for (unsigned J : {1u, 4u, 9u}) {
        auto exact = vset_exact(F, 8, J);
        for (std::uint64_t w = 0; w < 8; ++w)
            CHECK(exact[w].get_d() == Approx(vset_asymptotic(F, 8, J, w)).scale(1.0));
    }
}

TEST_CASE("charsum is omitted above its modulus cap") {
    VSetReport rep = vset_report(Polynomial::parse("0,1"), 16384, 1);
    CHECK_FALSE(rep.charsum.has_value());
    mpz_class total = 0;
    for (const auto& v : rep.exact) total += v;
    CHECK(total == 8192);  // phi(2^14)

    CHECK_THROWS_AS(vset_exact(Polynomial::parse("0,1"), 2'000'000, 1), resource_error);
}

TEST_CASE("vset_report fields") {
    VSetReport rep = vset_report(Polynomial::parse("0,0,1"), 8, 1);
    CHECK(rep.M == 8);
    CHECK(rep.exact == to_mpz({0, 4, 0, 0, 0, 0, 0, 0}));
    REQUIRE(rep.charsum.has_value());
    CHECK(rep.max_relative_error < 1e-6);
    CHECK(rep.asymptotic[1] == Approx(4.0));
    CHECK(rep.indicator[1]);
    CHECK_FALSE(rep.indicator[0]);

    VSetReport diag = vset_report(Polynomial::parse("0,0,1"), 8, 2, true);
    REQUIRE(diag.spectra.size() == 1);
    CHECK(diag.spectra[0].D == 3);
    REQUIRE(diag.eta.has_value());
    CHECK(diag.eta->eta > 0.0);
    REQUIRE(diag.xi.has_value());
    CHECK(*diag.xi == 4);
}
