#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uniadd/modarith.hpp"
#include "uniadd/polynomial.hpp"

using namespace uniadd;

TEST_CASE("parse canonical coefficient lists") {
    Polynomial F = Polynomial::parse("1,1,1");
    CHECK(F.degree() == 2);
    CHECK(F.coeff(0) == 1);
    CHECK(F.coeff(2) == 1);

    CHECK(Polynomial::parse("0,1").degree() == 1);

    // (x-1)^2 + 1 expanded
    Polynomial G = Polynomial::parse("2,-2,1");
    mpz_class v = 5;
    CHECK(G.eval(v) == (v - 1) * (v - 1) + 1);

    // trailing zeros are stripped
    CHECK(Polynomial::parse("1,2,0,0").degree() == 1);
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS_AS(Polynomial::parse(""), domain_error);
    CHECK_THROWS_AS(Polynomial::parse("  "), domain_error);
    CHECK_THROWS_AS(Polynomial::parse("1,a,2"), domain_error);
    CHECK_THROWS_AS(Polynomial::parse("0,0,0"), domain_error);
    CHECK_THROWS_AS(Polynomial::parse("1,,2"), domain_error);
    CHECK_THROWS_AS(Polynomial::parse("1,2,"), domain_error);
    try {
        Polynomial::parse("1,x2,3");
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("x2") != std::string::npos);
    }
}

TEST_CASE("eval_mod examples") {
    CHECK(Polynomial::parse("1,1,1").eval_mod(2, 3) == 1);
    CHECK(Polynomial::parse("0,1").eval_mod(5, 7) == 5);
    CHECK(Polynomial::parse("2,-2,1").eval_mod(1, 1024) == 1);
}

TEST_CASE("eval_mod agrees with big-integer evaluation on random inputs") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    std::uniform_int_distribution<std::int64_t> vdist(-1'000'000'000, 1'000'000'000);
    std::uniform_int_distribution<std::uint64_t> mdist(1, 1'000'000'000);
    std::uniform_int_distribution<int> ddist(1, 6);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<mpz_class> cs;
        int d = ddist(rng);
        for (int i = 0; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 1;
        Polynomial F(cs);
        std::int64_t v = vdist(rng);
        std::uint64_t m = mdist(rng);
        mpz_class big = F.eval(mpz_class(v));
        std::uint64_t expect = mpz_fdiv_ui(big.get_mpz_t(), m);
        CHECK(F.eval_mod(v, m) == expect);
    }
}

TEST_CASE("derivative") {
    CHECK(Polynomial::parse("0,0,1").derivative() == Polynomial::parse("0,2"));
    CHECK(Polynomial::parse("1,1,1").derivative() == Polynomial::parse("1,2"));
    CHECK(Polynomial::parse("0,-3,0,5").derivative() == Polynomial::parse("-3,0,15"));
    CHECK(Polynomial::parse("7").derivative().is_zero());
}

TEST_CASE("content") {
    CHECK(Polynomial::parse("1,2").content(false) == 2);
    CHECK(Polynomial::parse("1,1,1").content(true) == 1);
    CHECK(Polynomial::parse("0,4,6").content(true) == 2);
    CHECK(Polynomial::parse("5").content(false) == 0);  // empty selection
}

TEST_CASE("shifted_content_split") {
    auto [t, G, c0] = shifted_content_split(Polynomial::parse("1,2"), 2);
    CHECK(t == 1);
    CHECK(G == Polynomial::parse("0,1"));
    CHECK(c0 == 1);

    auto s2 = shifted_content_split(Polynomial::parse("0,0,1"), 3);
    CHECK(s2.t == 0);
    CHECK(s2.G == Polynomial::parse("0,0,1"));
    CHECK(s2.c0 == 0);

    auto s3 = shifted_content_split(Polynomial::parse("3,8,4"), 2);
    CHECK(s3.t == 2);
    CHECK(s3.G == Polynomial::parse("0,2,1"));
    CHECK(s3.c0 == 3);
}

TEST_CASE("shifted_content_split reconstruction on random polynomials") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> coeff(-40, 40);
    const std::uint64_t primes[] = {2, 3, 5, 7};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<mpz_class> cs{coeff(rng)};
        int d = 1 + static_cast<int>(rng() % 5);
        for (int i = 1; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 3;
        Polynomial F(cs);
        std::uint64_t ell = primes[rng() % 4];
        auto [t, G, c0] = shifted_content_split(F, ell);
        mpz_class scale = 1;
        for (int i = 0; i < t; ++i) scale *= static_cast<unsigned long>(ell);
        // reconstruction and coprimality of the remaining content
        std::vector<mpz_class> rebuilt = G.coeffs();
        for (auto& a : rebuilt) a *= scale;
        rebuilt[0] += c0;
        CHECK(Polynomial(rebuilt) == F);
        CHECK(mpz_fdiv_ui(G.content(true).get_mpz_t(), ell) != 0);
    }
}

TEST_CASE("is_constant_map_mod") {
    CHECK(is_constant_map_mod(Polynomial::parse("1,1,1"), 2));
    CHECK_FALSE(is_constant_map_mod(Polynomial::parse("0,1"), 2));
    CHECK_FALSE(is_constant_map_mod(Polynomial::parse("1,1,1"), 3));
    CHECK_THROWS_AS(is_constant_map_mod(Polynomial::parse("0,1"), 4), domain_error);
}

TEST_CASE("is_constant_map_mod equals exhaustive evaluation for ell <= 101") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<mpz_class> cs{coeff(rng)};
        int d = 1 + static_cast<int>(rng() % 6);
        for (int i = 1; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 1;
        Polynomial F(cs);
        for (std::uint64_t ell = 2; ell <= 101; ++ell) {
            if (!is_prime(ell)) continue;
            std::uint64_t first = F.eval_mod(0, ell);
            bool expect = true;
            for (std::uint64_t v = 1; v < ell && expect; ++v)
                expect = F.eval_mod(static_cast<std::int64_t>(v), ell) == first;
            CHECK(is_constant_map_mod(F, ell) == expect);
        }
    }
}

TEST_CASE("alternating_sum") {
    CHECK(Polynomial::parse("1,1,1").alternating_sum() == 1);
    CHECK(Polynomial::parse("0,1").alternating_sum() == -1);
    CHECK(Polynomial::parse("2,-2,1").alternating_sum() == 5);
}

TEST_CASE("alternating_sum equals the even/odd coefficient split") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<std::int64_t> coeff(-1000, 1000);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<mpz_class> cs;
        int d = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 1;
        Polynomial F(cs);
        mpz_class even = 0, odd = 0;
        for (std::size_t i = 0; i < cs.size(); ++i) (i % 2 ? odd : even) += cs[i];
        CHECK(F.alternating_sum() == even - odd);
    }
}

TEST_CASE("sparse_form") {
    SparseForm sf = sparse_form(Polynomial::parse("1,1,1"));
    CHECK(sf.s() == 2);
    CHECK(sf.d_s() == 2);
    CHECK(sf.terms[0].exponent == 1);

    CHECK(sparse_form(Polynomial::parse("0,1")).s() == 1);

    SparseForm sf3 = sparse_form(Polynomial::parse("0,0,-3,0,0,0,0,5"));
    CHECK(sf3.s() == 2);
    CHECK(sf3.terms[0].coefficient == -3);
    CHECK(sf3.terms[0].exponent == 2);
    CHECK(sf3.terms[1].coefficient == 5);
    CHECK(sf3.d_s() == 7);

    CHECK_THROWS_AS(sparse_form(Polynomial::parse("5")), domain_error);
}
