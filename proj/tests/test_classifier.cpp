#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "uniadd/classifier.hpp"
#include "uniadd/modarith.hpp"

using namespace uniadd;

namespace {
const ExtensionPolicy kCA = ExtensionPolicy::completely_additive();
const ExtensionPolicy kSA = ExtensionPolicy::strongly_additive();
const ExtensionPolicy kPPE = ExtensionPolicy::prime_power_eval();
}  // namespace

TEST_CASE("check_At") {
    CHECK(check_At(Polynomial::parse("0,1"), 3));
    CHECK_FALSE(check_At(Polynomial::parse("-1,0,1"), 3));
    CHECK(check_At(Polynomial::parse("1,1,1"), 2));
    CHECK_THROWS_AS(check_At(Polynomial::parse("0,1"), 1), domain_error);
}

TEST_CASE("check_At equals independent unit re-enumeration") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpz_class> cs{coeff(rng)};
        int d = 1 + static_cast<int>(rng() % 6);
        for (int i = 1; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 1;
        Polynomial F(cs);
        for (std::uint64_t t : {2ull, 4ull, 6ull, 9ull, 12ull, 97ull}) {
            bool expect = false;
            for (std::uint32_t a : units_mod(t))
                expect = expect || F.eval_mod(a, t) != 0;
            CHECK(check_At(F, t) == expect);
        }
    }
}

TEST_CASE("check_Bt per policy") {
    CHECK(check_Bt(kCA, Polynomial::parse("0,1"), 2) == Verdict::Fails);
    CHECK(check_Bt(kPPE, Polynomial::parse("1,1,1"), 2) == Verdict::Holds);
    CHECK(check_Bt(kSA, Polynomial::parse("1,2"), 2) == Verdict::Holds);
    CHECK(check_Bt(kSA, Polynomial::parse("0,1"), 2) == Verdict::Fails);
    CHECK(check_Bt(kPPE, Polynomial::parse("0,1"), 2) == Verdict::Fails);

    // custom tables refute or stay undecidable
    auto odd_table = ExtensionPolicy::custom_table(
        {mpz_class(1), mpz_class(3), mpz_class(5)}, PolicyKind::CompletelyAdditive);
    CHECK(check_Bt(odd_table, Polynomial::parse("0,1"), 2) == Verdict::Undecidable);
    auto even_table = ExtensionPolicy::custom_table(
        {mpz_class(1), mpz_class(4)}, PolicyKind::CompletelyAdditive);
    CHECK(check_Bt(even_table, Polynomial::parse("0,1"), 2) == Verdict::Fails);
}

TEST_CASE("check_Bt PrimePowerEval matches direct truncation at larger t") {
    // 2 F(2^k) / t odd for all k: compare the cycle-based decision against a
    // deep direct scan.
    for (std::uint64_t t : {2ull, 3ull, 4ull, 6ull, 10ull}) {
        for (const char* poly : {"1,1,1", "0,1", "3,0,2", "1,2", "5,4"}) {
            Polynomial F = Polynomial::parse(poly);
            Verdict got = check_Bt(kPPE, F, t);
            bool all_ok = true;
            mpz_class p2 = 1;
            for (int k = 1; k <= 64 && all_ok; ++k) {
                p2 *= 2;
                mpz_class num = 2 * F.eval(p2);
                mpz_class rem;
                mpz_fdiv_r_ui(rem.get_mpz_t(), num.get_mpz_t(), 2 * t);
                all_ok = (rem == t);
            }
            CHECK(got == (all_ok ? Verdict::Holds : Verdict::Fails));
        }
    }
}

TEST_CASE("delange_classify examples") {
    CHECK(delange_classify(Polynomial::parse("0,1"), kCA, 4).in_sf == Verdict::Holds);
    CHECK(delange_classify(Polynomial::parse("1,1,1"), kCA, 2).in_sf == Verdict::Holds);
    CHECK(delange_classify(Polynomial::parse("-1,0,1"), kCA, 3).in_sf == Verdict::Fails);
    CHECK(delange_classify(Polynomial::parse("0,1"), kCA, 1).in_sf == Verdict::Holds);

    // x^2+x+1 is uniformly distributed for every q under any policy: A_2 holds.
    for (std::uint64_t q = 1; q <= 60; ++q) {
        CHECK(delange_classify(Polynomial::parse("1,1,1"), kCA, q).in_sf == Verdict::Holds);
        CHECK(delange_classify(Polynomial::parse("1,1,1"), kPPE, q).in_sf == Verdict::Holds);
    }

    // x^2-1, completely additive: fails exactly at multiples of 2 or 3.
    for (std::uint64_t q = 1; q <= 36; ++q) {
        Verdict v = delange_classify(Polynomial::parse("-1,0,1"), kCA, q).in_sf;
        bool expect_in = q % 2 != 0 && q % 3 != 0;
        CHECK(v == (expect_in ? Verdict::Holds : Verdict::Fails));
    }

    // x^2-1 under prime-power evaluation: B_2 holds (odd constant), so 2||q
    // survives but 4|q does not (A_4 fails).
    CHECK(delange_classify(Polynomial::parse("-1,0,1"), kPPE, 2).in_sf == Verdict::Holds);
    CHECK(delange_classify(Polynomial::parse("-1,0,1"), kPPE, 4).in_sf == Verdict::Fails);
    CHECK(delange_classify(Polynomial::parse("-1,0,1"), kPPE, 10).in_sf == Verdict::Holds);

    // undecidable propagation: custom table with A_2 failing
    auto odd_table = ExtensionPolicy::custom_table(
        {mpz_class(1), mpz_class(3)}, PolicyKind::CompletelyAdditive);
    Polynomial even_sum = Polynomial::parse("0,1,1");  // A_2 fails
    CHECK(check_Bt(odd_table, even_sum, 2) == Verdict::Undecidable);
    CHECK(delange_classify(even_sum, odd_table, 2).in_sf == Verdict::Undecidable);
}

TEST_CASE("prop21_classify examples") {
    // policy-independent odd case
    CHECK(prop21_classify(Polynomial::parse("-1,0,1"), kCA, 3).in_sf == Verdict::Fails);
    CHECK(prop21_classify(Polynomial::parse("0,1"), kCA, 5).in_sf == Verdict::Holds);

    // condition (ii) needs the standing hypothesis; supply it by table
    auto hyp_table = ExtensionPolicy::custom_table(
        {mpz_class(6), mpz_class(1), mpz_class(3)}, PolicyKind::CompletelyAdditive);
    ClassificationReport r = prop21_classify(Polynomial::parse("0,1,1"), hyp_table, 2);
    CHECK(r.applicable);
    CHECK(r.in_sf == Verdict::Fails);
    REQUIRE(r.triggered.size() == 1);
    CHECK(r.triggered[0] == "ii");

    // completely additive violates the hypothesis on even q
    ClassificationReport r2 = prop21_classify(Polynomial::parse("0,1,1"), kCA, 2);
    CHECK_FALSE(r2.applicable);
    CHECK(r2.in_sf == Verdict::Undecidable);
}

TEST_CASE("prop21 bullet iii vs its proof variant") {
    // x^2+1: alternating sum 2 mod 4 triggers the bullet, but F(1) = 2 is not
    // 0 mod 4, so A_4 holds and Delange still yields membership.
    Polynomial F = Polynomial::parse("1,0,1");
    ClassificationReport p = prop21_classify(F, kPPE, 4);
    REQUIRE(p.applicable);
    CHECK(p.in_sf == Verdict::Fails);
    CHECK(*p.iii_bullet);
    CHECK_FALSE(*p.iii_proof);
    CHECK(p.iii_disagreement);
    CHECK(delange_classify(F, kPPE, 4).in_sf == Verdict::Holds);

    // x^2-1: both forms agree
    ClassificationReport p2 = prop21_classify(Polynomial::parse("-1,0,1"), kPPE, 4);
    CHECK(*p2.iii_bullet);
    CHECK(*p2.iii_proof);
    CHECK_FALSE(p2.iii_disagreement);
}

TEST_CASE("prop21 condition (i) is the exact negation of A_p") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpz_class> cs{coeff(rng)};
        int d = 1 + static_cast<int>(rng() % 6);
        for (int i = 1; i <= d; ++i) cs.emplace_back(coeff(rng));
        if (cs.back() == 0) cs.back() = 1;
        Polynomial F(cs);
        for (std::uint64_t p = 3; p <= 97; ++p) {
            if (!is_prime(p)) continue;
            ClassificationReport r = prop21_classify(F, kCA, p);
            bool triggered = !r.triggered.empty();
            CHECK(triggered == !check_At(F, p));
        }
    }
}

TEST_CASE("sf_scan") {
    auto rows = sf_scan(Polynomial::parse("1,1,1"), kCA, 50);
    REQUIRE(rows.size() == 50);
    for (const auto& row : rows) {
        CHECK(row.delange == Verdict::Holds);
        CHECK_FALSE(row.discrepancy);
    }

    auto one = sf_scan(Polynomial::parse("0,1"), kCA, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].delange == Verdict::Holds);
    CHECK(one[0].prop21 == Verdict::Holds);
    CHECK_FALSE(one[0].discrepancy);

    auto rows2 = sf_scan(Polynomial::parse("-1,0,1"), kCA, 12);
    for (const auto& row : rows2) {
        if (row.q % 3 == 0) CHECK(row.delange == Verdict::Fails);
    }

    CHECK_THROWS_AS(sf_scan(Polynomial::parse("0,1"), kCA, 200'000), resource_error);
}

TEST_CASE("divisor closure up to q=500") {
    for (const char* poly : {"0,1", "1,1,1", "-1,0,1", "1,2", "2,-2,1", "0,1,1"}) {
        Polynomial F = Polynomial::parse(poly);
        for (const auto& policy : {kCA, kPPE}) {
            std::vector<Verdict> v(501, Verdict::Holds);
            for (std::uint64_t q = 1; q <= 500; ++q)
                v[q] = delange_classify(F, policy, q).in_sf;
            for (std::uint64_t q = 1; q <= 500; ++q) {
                if (v[q] != Verdict::Holds) continue;
                for (std::uint64_t d = 1; d * d <= q; ++d) {
                    if (q % d != 0) continue;
                    CHECK(v[d] == Verdict::Holds);
                    CHECK(v[q / d] == Verdict::Holds);
                }
            }
        }
    }
}

TEST_CASE("q=1 is always a member") {
    for (const char* poly : {"0,1", "1,1,1", "-1,0,1"}) {
        CHECK(delange_classify(Polynomial::parse(poly), kCA, 1).in_sf == Verdict::Holds);
        CHECK(prop21_classify(Polynomial::parse(poly), kCA, 1).in_sf == Verdict::Holds);
    }
}

TEST_CASE("policy parsing and naming") {
    CHECK(ExtensionPolicy::parse("complete").kind == PolicyKind::CompletelyAdditive);
    CHECK(ExtensionPolicy::parse("strong").kind == PolicyKind::StronglyAdditive);
    CHECK(ExtensionPolicy::parse("prime-power").kind == PolicyKind::PrimePowerEval);
    ExtensionPolicy c = ExtensionPolicy::parse("custom:1,3,5:strong");
    CHECK(c.kind == PolicyKind::CustomTable);
    CHECK(c.two_power_values.size() == 3);
    CHECK(c.odd_fallback == PolicyKind::StronglyAdditive);
    CHECK_THROWS_AS(ExtensionPolicy::parse("bogus"), domain_error);
    CHECK_THROWS_AS(ExtensionPolicy::parse("custom:"), domain_error);
}

TEST_CASE("policy value_mod") {
    Polynomial F = Polynomial::parse("0,1");  // f(p) = p
    CHECK(kCA.value_mod(F, 3, 2, 100) == 6);   // 2*3
    CHECK(kSA.value_mod(F, 3, 2, 100) == 3);
    CHECK(kPPE.value_mod(F, 3, 2, 100) == 9);  // F(9)
    auto table = ExtensionPolicy::custom_table({mpz_class(7), mpz_class(-1)},
                                               PolicyKind::StronglyAdditive);
    CHECK(table.value_mod(F, 2, 1, 100) == 7);
    CHECK(table.value_mod(F, 2, 2, 100) == 99);  // -1 mod 100
    CHECK(table.value_mod(F, 5, 3, 100) == 5);   // odd fallback: strongly additive
    CHECK_THROWS_AS(table.value_mod(F, 2, 3, 100), domain_error);
}
