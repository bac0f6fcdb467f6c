#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "brim/engine.hpp"
#include "oracle.hpp"

using namespace brim;

namespace {

ModuleSpec two_one()  // R/m^2 + R/m
{
    return ModuleSpec(2, {parse_ideal("x^2, x*y, y^2", 2), parse_ideal("x, y", 2)});
}

ModuleSpec max_pair()  // R/m + R/m
{
    return ModuleSpec(2, {parse_ideal("x, y", 2), parse_ideal("x, y", 2)});
}

}  // namespace

TEST_CASE("composition and subset helpers")
{
    int count = 0;
    for_each_composition(5, 3, [&](const std::vector<long long>& n) {
        ++count;
        CHECK(n[0] + n[1] + n[2] == 5);
    });
    CHECK(count == 21);  // C(7,2)

    CHECK(subsets_of_size(4, 2).size() == 6);
    CHECK(subsets_of_size(3, 0) == std::vector<std::vector<int>>{{}});
    CHECK(subsets_of_size(3, 3).size() == 1);
}

TEST_CASE("J ideal")
{
    BrEngine eng(two_one());

    CHECK(eng.J_ideal(0, {3, 4}) == MonomialIdeal::unit(2));
    // Admissible exponents for p=2, n=(1,3): (1,1) and (0,2); the sum of
    // m^2*m and m^2 is m^2.
    CHECK(eng.J_ideal(2, {1, 3}) == parse_ideal("x^2, x*y, y^2", 2));
    CHECK_THROWS_AS(eng.J_ideal(3, {1, 1}), std::domain_error);
    CHECK_THROWS_AS(eng.J_ideal(1, {1}), std::invalid_argument);

    // Rank one: J(p, n) = I^p regardless of q.
    ModuleSpec single(2, {parse_ideal("x^2, y", 2)});
    BrEngine s(single);
    for (long long p = 0; p <= 4; ++p)
        CHECK(s.J_ideal(p, {p + 7}) == ideal_power(single.ideals[0], static_cast<int>(p)));

    // Entries above p never matter.
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        ModuleSpec C = random_module_spec(2, 2 + static_cast<int>(rng() % 2), 3, 1, rng());
        BrEngine e(C);
        long long p = 1 + static_cast<long long>(rng() % 3);
        std::vector<long long> n, capped;
        long long total = 0;
        for (int i = 0; i < C.rank(); ++i) {
            long long v = static_cast<long long>(rng() % (p + 4));
            n.push_back(v);
            capped.push_back(std::min(v, p));
            total += v;
        }
        if (total < p)
            continue;
        CHECK(e.J_ideal(p, n) == e.J_ideal(p, capped));
    }
}

TEST_CASE("lambda fixed points")
{
    BrEngine a(two_one());
    // p(p+1)(7p+5)/6 for p = 0..5
    std::vector<Int> expect{0, 4, 19, 52, 110, 200};
    for (long long p = 0; p <= 5; ++p)
        CHECK(a.lambda(p) == expect[static_cast<size_t>(p)]);

    BrEngine b(max_pair());
    for (long long p = 0; p <= 5; ++p)
        CHECK(b.lambda(p) == Int(p + 1) * (p + 1) * p / 2);
}

TEST_CASE("lambda of equal ideals collapses to a binomial multiple")
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        MonomialIdeal I = random_m_primary_ideal(2, 3, 1, rng());
        ModuleSpec C(2, std::vector<MonomialIdeal>(static_cast<size_t>(r), I));
        BrEngine eng(C);
        for (long long p = 0; p <= 3; ++p)
            CHECK(eng.lambda(p) ==
                  binomial_comb(Int(p + r - 1), r - 1) *
                      colength(ideal_power(I, static_cast<int>(p))));
    }
}

TEST_CASE("Lambda fixed points")
{
    BrEngine a(two_one());
    CHECK(a.Lambda(1, 2) == 6);
    CHECK(a.Lambda(1, 4) == 8);
    CHECK(a.Lambda(2, 4) == 31);
    CHECK(a.Lambda(2, 6) == 37);
    CHECK(a.Lambda(3, 8) == 100);
    // (q+1)C(p+1,2) + C(2p+2,3) - C(p+2,3) in the admissible range.
    for (long long p = 1; p <= 4; ++p)
        for (long long q = 2 * (p + 1); q <= 2 * (p + 1) + 4; ++q)
            CHECK(a.Lambda(p, q) == Int(q + 1) * binomial_comb(Int(p + 1), 2) +
                                        binomial_comb(Int(2 * p + 2), 3) -
                                        binomial_comb(Int(p + 2), 3));

    BrEngine b(max_pair());
    for (long long p = 1; p <= 4; ++p)
        for (long long q = 2 * (p + 1); q <= 2 * (p + 1) + 4; ++q)
            CHECK(b.Lambda(p, q) == Int(p + q + 1) * binomial_comb(Int(p + 1), 2));

    // Rank four, all maximal: every J(p,n) is m^p, so Lambda factors as
    // #H_{p,q} * colength(m^p) = C(p+q+3,3) * C(p+1,2).
    ModuleSpec m4(2, std::vector<MonomialIdeal>(4, parse_ideal("x, y", 2)));
    BrEngine c(m4);
    CHECK(c.Lambda(1, 8) == 220);
    CHECK(c.Lambda(2, 10) == 1365);
    for (long long p = 1; p <= 3; ++p)
        CHECK(c.lambda(p) == binomial_comb(Int(p + 3), 3) * binomial_comb(Int(p + 1), 2));
}

TEST_CASE("Lambda edge behavior")
{
    BrEngine a(two_one());
    for (long long p = 0; p <= 4; ++p)
        CHECK(a.Lambda(p, 0) == a.lambda(p));
    for (long long q = 0; q <= 6; ++q)
        CHECK(a.Lambda(0, q) == 0);

    ModuleSpec single(2, {parse_ideal("x^2, y", 2)});
    BrEngine s(single);
    for (long long p = 0; p <= 4; ++p)
        for (long long q = 0; q <= 4; ++q)
            CHECK(s.Lambda(p, q) == colength(ideal_power(single.ideals[0], static_cast<int>(p))));
}

TEST_CASE("Lambda agrees with the definition on random instances")
{
    std::mt19937_64 rng(61);
    for (int t = 0; t < 12; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        ModuleSpec C = random_module_spec(2, r, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1 + static_cast<long long>(rng() % 2);
        long long q = static_cast<long long>(rng() % (2 * static_cast<unsigned long long>(r))) +
                      (p + 1) * r - 2;  // straddles the admissible threshold
        CHECK(eng.Lambda(p, q) == oracle::Lambda_direct(C, p, q));
    }

    // One rank-four trial keeps the aggregation honest beyond r = 3.
    ModuleSpec C4 = random_module_spec(2, 4, 2, 1, 64);
    BrEngine eng4(C4);
    for (long long q = 7; q <= 9; ++q)
        CHECK(eng4.Lambda(1, q) == oracle::Lambda_direct(C4, 1, q));
}

TEST_CASE("Lambda respects ideal permutations and grows with q")
{
    std::mt19937_64 rng(62);
    for (int t = 0; t < 8; ++t) {
        ModuleSpec C = random_module_spec(2, 3, 3, 1, rng());
        std::vector<MonomialIdeal> rotated{C.ideals[1], C.ideals[2], C.ideals[0]};
        std::vector<MonomialIdeal> swapped{C.ideals[2], C.ideals[1], C.ideals[0]};
        BrEngine e0(C), e1(ModuleSpec(2, rotated)), e2(ModuleSpec(2, swapped));
        long long p = 1 + static_cast<long long>(rng() % 2);
        for (long long q = p; q <= p + 6; ++q) {
            Int v = e0.Lambda(p, q);
            CHECK(v == e1.Lambda(p, q));
            CHECK(v == e2.Lambda(p, q));
            CHECK(e0.Lambda(p, q + 1) >= v);
        }
    }
}

TEST_CASE("region specs validate and classify")
{
    RegionSpec bad = RegionSpec::block(1, {0}, 2, 12);  // needs #A = r-k = 2 for r=3
    CHECK_THROWS_AS(bad.validate(3), std::invalid_argument);
    CHECK_THROWS_AS(RegionSpec::block(1, {0, 0}, 2, 12).validate(3), std::invalid_argument);
    CHECK_THROWS_AS(RegionSpec::block(1, {0, 5}, 2, 12).validate(3), std::invalid_argument);
    CHECK_THROWS_AS(RegionSpec::level(4, 2, 12).validate(3), std::invalid_argument);
    RegionSpec::block(1, {1, 2}, 2, 12).validate(3);
    RegionSpec::prefix(3, 2, 12).validate(3);

    // Membership: n = (5,1,2), p = 2 has one entry above p.
    std::vector<long long> n{5, 1, 2};
    CHECK(RegionSpec::level(1, 2, 6).contains(n));
    CHECK_FALSE(RegionSpec::level(2, 2, 6).contains(n));
    CHECK(RegionSpec::block(1, {1, 2}, 2, 6).contains(n));
    CHECK_FALSE(RegionSpec::block(1, {0, 1}, 2, 6).contains(n));
    CHECK_FALSE(RegionSpec::block_low(1, {1, 2}, 2, 6).contains(n));  // 1+2 > p
    CHECK(RegionSpec::block_high(1, {1, 2}, 2, 6).contains(n));
    CHECK(RegionSpec::prefix(1, 2, 6).contains({6, 1, 1}));
    CHECK_FALSE(RegionSpec::prefix(1, 2, 6).contains({6, 1, 2}));
    CHECK(RegionSpec::full_region(2, 6).contains(n));

    CHECK(RegionSpec::block(1, {1, 2}, 2, 6).str() == "D_{2,3}^(1)[p=2,q=6]");
}

TEST_CASE("regions partition H and the full region reproduces Lambda")
{
    std::mt19937_64 rng(71);
    for (int t = 0; t < 6; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        ModuleSpec C = random_module_spec(2, r, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1 + static_cast<long long>(rng() % 2);
        long long q = (p + 1) * r + static_cast<long long>(rng() % 3);

        Int whole = eng.Lambda(p, q);
        CHECK(eng.Lambda_region(RegionSpec::full_region(p, q)) == whole);

        Int level_sum = 0, block_sum = 0;
        for (int k = 1; k <= r; ++k) {
            level_sum += eng.Lambda_region(RegionSpec::level(k, p, q));
            for (const auto& A : subsets_of_size(r, r - k)) {
                Int block = eng.Lambda_region(RegionSpec::block(k, A, p, q));
                block_sum += block;
                if (k <= r - 2) {
                    Int low = eng.Lambda_region(RegionSpec::block_low(k, A, p, q));
                    Int high = eng.Lambda_region(RegionSpec::block_high(k, A, p, q));
                    CHECK(low + high == block);
                }
            }
        }
        CHECK(level_sum == whole);
        CHECK(block_sum == whole);

        // Prefix regions coincide with the stated blocks.
        CHECK(eng.Lambda_region(RegionSpec::prefix(r, p, q)) ==
              eng.Lambda_region(RegionSpec::level(r, p, q)));
        std::vector<int> last{r - 1};
        CHECK(eng.Lambda_region(RegionSpec::prefix(r - 1, p, q)) ==
              eng.Lambda_region(RegionSpec::block(r - 1, last, p, q)));
    }
}

TEST_CASE("region sums match the slow path")
{
    std::mt19937_64 rng(73);
    for (int t = 0; t < 5; ++t) {
        ModuleSpec C = random_module_spec(2, 3, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1, q = 6 + static_cast<long long>(rng() % 3);
        for (int k = 1; k <= 3; ++k) {
            RegionSpec level = RegionSpec::level(k, p, q);
            CHECK(eng.Lambda_region(level) == oracle::Lambda_region_direct(C, level));
        }
        RegionSpec pre = RegionSpec::prefix(2, p, q);
        CHECK(eng.Lambda_region(pre) == oracle::Lambda_region_direct(C, pre));
    }
}

TEST_CASE("prefix-region closed forms")
{
    std::mt19937_64 rng(79);
    for (int t = 0; t < 8; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        ModuleSpec C = random_module_spec(2, r, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1 + static_cast<long long>(rng() % 2);
        long long q = (p + 1) * r + static_cast<long long>(rng() % 4);
        for (int k = 1; k <= r; ++k) {
            Int direct = eng.Lambda_region(RegionSpec::prefix(k, p, q));
            CHECK(eng.delta_closed_direct(k, p, q) == direct);
            CHECK(eng.delta_closed_module(k, p, q) == direct);
        }
        // Top level: single binomial times the colength of the sum's power.
        MonomialIdeal total = C.ideals[0];
        for (int i = 1; i < r; ++i)
            total = ideal_sum(total, C.ideals[static_cast<size_t>(i)]);
        CHECK(eng.delta_closed_direct(r, p, q) ==
              binomial_comb(Int(q - (r - 1) * p - 1), r - 1) *
                  colength(ideal_power(total, static_cast<int>(p))));
    }
    BrEngine eng(two_one());
    CHECK_THROWS_AS(eng.delta_closed_direct(0, 2, 12), std::invalid_argument);
    CHECK_THROWS_AS(eng.delta_closed_direct(1, 2, 3), std::invalid_argument);
}

TEST_CASE("low-region closed form covers every level")
{
    std::mt19937_64 rng(83);
    for (int t = 0; t < 6; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        ModuleSpec C = random_module_spec(2, r, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1 + static_cast<long long>(rng() % 2);
        long long q = (p + 1) * r + static_cast<long long>(rng() % 3);
        for (int k = 1; k <= r; ++k) {
            Int direct = 0;
            for (const auto& A : subsets_of_size(r, r - k))
                direct += (k <= r - 2)
                              ? eng.Lambda_region(RegionSpec::block_low(k, A, p, q))
                              : eng.Lambda_region(RegionSpec::block(k, A, p, q));
            CHECK(eng.minus_region_closed(k, p, q) == direct);
        }
    }
}

TEST_CASE("corner modules")
{
    ModuleSpec C(2, {parse_ideal("x^3, y", 2), parse_ideal("x, y^2", 2),
                     parse_ideal("x^2, y^2", 2)});
    BrEngine eng(C);

    ModuleSpec empty_A = eng.L_module({});
    CHECK(empty_A.rank() == 1);
    CHECK(empty_A.ideals[0] == parse_ideal("x, y", 2));

    ModuleSpec last = eng.L_module({2});
    CHECK(last.rank() == 2);
    CHECK(last.ideals[0] == parse_ideal("x, y", 2));          // I1 + I2
    CHECK(last.ideals[1] == parse_ideal("x, y", 2));          // I1 + I2 + I3

    ModuleSpec pair = eng.L_module({0, 1});
    CHECK(pair.rank() == 3);
    CHECK(pair.ideals[0] == parse_ideal("x^2, y^2", 2));      // I3
    CHECK(pair.ideals[1] == parse_ideal("x^2, y^2, x^3, y", 2));
    CHECK(pair.ideals[2] == parse_ideal("x, y^2", 2));

    CHECK_THROWS_AS(eng.L_module({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(eng.L_module({3}), std::invalid_argument);
    CHECK_THROWS_AS(eng.L_module({1, 1}), std::invalid_argument);

    // Equal ideals: every corner module collapses to copies of R/I.
    MonomialIdeal I = parse_ideal("x^2, x*y, y^2", 2);
    BrEngine same(ModuleSpec(2, {I, I, I}));
    ModuleSpec collapsed = same.L_module({0, 2});
    for (const auto& J : collapsed.ideals)
        CHECK(J == I);
}

TEST_CASE("subset aggregates and remainder")
{
    std::mt19937_64 rng(89);
    for (int t = 0; t < 6; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        ModuleSpec C = random_module_spec(2, r, 3, 1, rng());
        BrEngine eng(C);
        long long p = 1 + static_cast<long long>(rng() % 2);
        long long q = (p + 1) * r + static_cast<long long>(rng() % 3);

        MonomialIdeal total = C.ideals[0];
        for (int i = 1; i < r; ++i)
            total = ideal_sum(total, C.ideals[static_cast<size_t>(i)]);
        CHECK(eng.subset_lambda_sum(r, p) == colength(ideal_power(total, static_cast<int>(p))));
        CHECK(eng.subset_correction(r, p, q) == 0);
        CHECK(eng.subset_correction(1, p, q) == 0);

        // Remainder after peeling the top two levels, plus the correction,
        // equals Lambda minus those levels.
        if (r >= 2) {
            Int lhs = eng.lambda_remainder(2, p, q) + eng.subset_correction(r - 1, p, q);
            Int rhs = eng.Lambda(p, q) - eng.Lambda_region(RegionSpec::level(r, p, q)) -
                      eng.Lambda_region(RegionSpec::level(r - 1, p, q));
            CHECK(lhs == rhs);
        }
    }

    // Rank one: the remainder vanishes identically.
    ModuleSpec single(2, {parse_ideal("x^2, x*y, y^3", 2)});
    BrEngine s(single);
    for (long long p = 1; p <= 3; ++p)
        for (long long q = p + 1; q <= p + 4; ++q)
            CHECK(s.lambda_remainder(1, p, q) == 0);
}
