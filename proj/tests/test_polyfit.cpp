#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "brim/fit.hpp"
#include "brim/ideal.hpp"
#include "brim/poly.hpp"

using namespace brim;

namespace {

// Integer-coefficient random polynomial: integer-valued at integer points,
// which is all the fitters' callbacks can return.
RatPoly random_int_poly(std::mt19937_64& rng, int arity, int max_deg_per_var)
{
    RatPoly p(arity);
    int terms = 1 + static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
        RatPoly::Key k(static_cast<size_t>(arity));
        for (auto& e : k)
            e = static_cast<int>(rng() % static_cast<unsigned>(max_deg_per_var + 1));
        p.add_term(k, Rat(static_cast<long long>(rng() % 19) - 9));
    }
    return p;
}

}  // namespace

TEST_CASE("polynomial container basics")
{
    RatPoly z(2);
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z.degree_in(0) == -1);

    RatPoly p = RatPoly::variable(2, 0) + RatPoly::variable(2, 1);
    RatPoly sq = p * p;
    CHECK(sq.coeff({2, 0}) == 1);
    CHECK(sq.coeff({1, 1}) == 2);
    CHECK(sq.coeff({0, 2}) == 1);
    CHECK(sq.degree() == 2);
    CHECK(sq.degree_in(1) == 2);
    CHECK(sq.eval({Rat(3), Rat(4)}) == 49);

    // Cancellation removes the stored term.
    RatPoly c = sq - sq;
    CHECK(c.is_zero());
    CHECK((sq - sq == RatPoly(2)));

    RatPoly scaled = sq * Rat(1, 2);
    CHECK(scaled.coeff({1, 1}) == 1);
    CHECK(scaled.coeff({2, 0}) == Rat(1, 2));

    CHECK_THROWS_AS(p.coeff({1}), std::invalid_argument);
    CHECK_THROWS_AS(p.eval({Rat(1)}), std::invalid_argument);
    CHECK_THROWS_AS(RatPoly(0), std::invalid_argument);
    RatPoly bad(2);
    CHECK_THROWS_AS(bad.add_term({-1, 0}, Rat(1)), std::invalid_argument);
    CHECK_THROWS_AS((RatPoly(1) += RatPoly(2)), std::invalid_argument);
}

TEST_CASE("polynomial printing and JSON round trip")
{
    RatPoly p(1);
    p.add_term({2}, Rat(1, 2));
    p.add_term({1}, Rat(1, 2));
    CHECK(p.str({"p"}) == "1/2*p^2 + 1/2*p");

    RatPoly m(2);
    m.add_term({1, 1}, Rat(-3));
    m.add_term({0, 0}, Rat(7, 3));
    CHECK(m.str({"p", "q"}) == "-3*p*q + 7/3");
    CHECK(RatPoly(2).str({"p", "q"}) == "0");

    std::mt19937_64 rng(5);
    for (int t = 0; t < 40; ++t) {
        int arity = 1 + static_cast<int>(rng() % 3);
        RatPoly r = random_int_poly(rng, arity, 4);
        r.add_term(RatPoly::Key(static_cast<size_t>(arity), 1), Rat(5, 7));
        CHECK(RatPoly::from_json(r.to_json(), arity) == r);
    }
    CHECK(coeff_of(p, 2) == Rat(1, 2));
    CHECK(coeff_of(m, 1, 1) == -3);
    CHECK_THROWS_AS(coeff_of(m, 2), std::invalid_argument);
}

TEST_CASE("newton interpolation is exact")
{
    // C(x, 3) from its values: coefficients have denominator 6.
    std::vector<Rat> samples;
    for (long long x = 2; x <= 6; ++x)
        samples.emplace_back(binomial(Int(x), 3, BinomialConvention::polynomial));
    RatPoly p = newton_interpolate(samples, 2);
    CHECK(p.degree() == 3);
    for (long long x = -4; x <= 12; ++x)
        CHECK(p.eval({Rat(Int(x))}) == Rat(binomial(Int(x), 3, BinomialConvention::polynomial)));

    // Trailing zero differences keep the degree minimal.
    std::vector<Rat> line{Rat(3), Rat(5), Rat(7), Rat(9), Rat(11)};
    CHECK(newton_interpolate(line, 10).degree() == 1);
}

TEST_CASE("univariate fit on exact polynomials")
{
    FitReport tri = fit_univariate([](long long p) { return Int(p) * (p + 1) / 2; }, 2);
    CHECK(tri.stabilized);
    CHECK(tri.advances == 0);
    CHECK(tri.poly.coeff({2}) == Rat(1, 2));
    CHECK(tri.poly.coeff({1}) == Rat(1, 2));
    CHECK(tri.poly.coeff({0}) == 0);

    // Same function through the lattice: colength((x,y)^p).
    MonomialIdeal m = parse_ideal("x, y", 2);
    FitReport viaIdeal = fit_univariate(
        [&](long long p) { return Int(colength(ideal_power(m, static_cast<int>(p)))); }, 2);
    CHECK(viaIdeal.stabilized);
    CHECK(viaIdeal.poly == tri.poly);

    // colength((x^2,y)^p) has leading coefficient e/d! = 2/2! = 1.
    MonomialIdeal I = parse_ideal("x^2, y", 2);
    FitReport f = fit_univariate(
        [&](long long p) { return Int(colength(ideal_power(I, static_cast<int>(p)))); }, 2);
    CHECK(f.stabilized);
    CHECK(f.poly.coeff({2}) == 1);

    // A degree bound above the true degree still returns the minimal degree.
    FitReport wide = fit_univariate([](long long p) { return Int(p) * (p + 1) / 2; }, 5);
    CHECK(wide.stabilized);
    CHECK(wide.poly.degree() == 2);

    FitReport constant = fit_univariate([](long long) { return Int(42); }, 0);
    CHECK(constant.stabilized);
    CHECK(constant.poly.coeff({0}) == 42);
}

TEST_CASE("univariate fit advances past a pre-polynomial head")
{
    auto f = [](long long p) { return p < 6 ? Int(999) : Int(p) * p; };
    FitReport r = fit_univariate(f, 2);
    CHECK(r.stabilized);
    CHECK(r.window_start >= 6);
    CHECK(r.advances > 0);
    CHECK(r.poly.coeff({2}) == 1);
    CHECK(r.poly.degree() == 2);
}

TEST_CASE("univariate fit refuses non-polynomial data")
{
    auto f = [](long long p) {
        Int v = 1;
        for (long long t = 0; t < p; ++t)
            v *= 2;
        return v;
    };
    FitOptions opts;
    opts.max_advances = 3;
    FitReport r = fit_univariate(f, 4, opts);
    CHECK_FALSE(r.stabilized);
    CHECK(r.advances == 3);
}

TEST_CASE("window cap halts advancing early")
{
    auto f = [](long long p) { return p < 6 ? Int(999) : Int(p) * p; };
    FitOptions opts;
    opts.cap = 3;
    FitReport r = fit_univariate(f, 2, opts);
    CHECK_FALSE(r.stabilized);
    CHECK(r.window_start <= 3);

    opts.cap = 50;
    CHECK(fit_univariate(f, 2, opts).stabilized);
}

TEST_CASE("univariate fit recovers random integer polynomials")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 30; ++t) {
        RatPoly truth = random_int_poly(rng, 1, 5);
        FitReport r = fit_univariate(
            [&](long long x) { return rat_to_int(truth.eval({Rat(Int(x))})); }, 6);
        CHECK(r.stabilized);
        CHECK(r.poly == truth);
    }
}

TEST_CASE("multivariate fit")
{
    // colength(m^{p1} m^{p2}) = C(p1+p2+1, 2).
    MonomialIdeal m = parse_ideal("x, y", 2);
    FitReport r = fit_multivariate(
        [&](const std::vector<long long>& p) {
            return Int(colength(ideal_power(m, static_cast<int>(p[0] + p[1]))));
        },
        2, 2);
    CHECK(r.stabilized);
    CHECK(r.poly.coeff({2, 0}) == Rat(1, 2));
    CHECK(r.poly.coeff({1, 1}) == 1);
    CHECK(r.poly.coeff({0, 2}) == Rat(1, 2));

    FitReport c = fit_multivariate([](const std::vector<long long>&) { return Int(-3); }, 3, 0);
    CHECK(c.stabilized);
    CHECK(c.poly.degree() == 0);
    CHECK(c.poly.coeff({0, 0, 0}) == -3);

    std::mt19937_64 rng(123);
    for (int t = 0; t < 12; ++t) {
        int arity = 2 + static_cast<int>(rng() % 2);
        RatPoly truth(arity);
        // Keep total degree within the fit bound.
        for (int tries = 0; tries < 4; ++tries) {
            RatPoly::Key k(static_cast<size_t>(arity), 0);
            int budget = 3;
            for (auto& e : k) {
                e = static_cast<int>(rng() % static_cast<unsigned>(budget + 1));
                budget -= e;
            }
            truth.add_term(k, Rat(static_cast<long long>(rng() % 15) - 7));
        }
        FitReport fit = fit_multivariate(
            [&](const std::vector<long long>& x) {
                std::vector<Rat> xr(x.begin(), x.end());
                return rat_to_int(truth.eval(xr));
            },
            arity, 3);
        CHECK(fit.stabilized);
        CHECK(fit.poly == truth);
    }
}

TEST_CASE("nested bivariate fit")
{
    auto q_min = [](long long p) { return 2 * (p + 1); };

    FitReport pq = fit_bivariate_nested([](long long p, long long q) { return Int(p) * q; }, 1,
                                        1, q_min);
    CHECK(pq.stabilized);
    RatPoly expect(2);
    expect.add_term({1, 1}, Rat(1));
    CHECK(pq.poly == expect);

    std::mt19937_64 rng(2024);
    for (int t = 0; t < 12; ++t) {
        RatPoly truth(2);
        for (int terms = 0; terms < 4; ++terms) {
            int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 3);
            truth.add_term({a, b}, Rat(static_cast<long long>(rng() % 15) - 7));
        }
        auto F = [&](long long p, long long q) {
            return rat_to_int(truth.eval({Rat(Int(p)), Rat(Int(q))}));
        };
        FitReport nested = fit_bivariate_nested(F, 2, 3, q_min);
        CHECK(nested.stabilized);
        CHECK(nested.poly == truth);

        // Dense single solve sees the same surface.
        FitReport dense = fit_bivariate_dense(F, 5, q_min);
        CHECK(dense.stabilized);
        CHECK(dense.poly == truth);
    }
}

TEST_CASE("nested fit reports failure on non-polynomial surfaces")
{
    FitOptions opts;
    opts.max_advances = 2;
    auto F = [](long long p, long long q) {
        Int v = 1;
        for (long long t = 0; t < p; ++t)
            v *= q;
        return v;
    };
    FitReport r = fit_bivariate_nested(F, 2, 2, [](long long p) { return 3 * (p + 1); }, opts);
    CHECK_FALSE(r.stabilized);
}
