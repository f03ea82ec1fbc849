#include "arithvol/error.hpp"
#include "arithvol/okounkov.hpp"
#include "arithvol/sections.hpp"
#include "arithvol/valuation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

using namespace arithvol;

namespace {

HermitianLineBundle can(std::int64_t a, Rational c, ModelKind k = ModelKind::P1Z) {
    return make_bundle(make_model(k), a, {MetricFamily::Canonical, c});
}

HermitianLineBundle fs(std::int64_t a, Rational c) {
    return make_bundle(make_model(ModelKind::P1Z), a, {MetricFamily::FubiniStudy, c});
}

std::set<Coeffs> as_set(const std::vector<Coeffs>& v) { return {v.begin(), v.end()}; }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

std::set<Point> oracle_image_p1(const std::set<Coeffs>& members, std::int64_t p, std::int64_t alpha) {
    std::set<Point> out;
    for (const auto& a : members)
        if (std::any_of(a.begin(), a.end(), [](auto x) { return x != 0; })) out.insert(oracle::nu_p1(a, p, alpha));
    return out;
}

}  // namespace

TEST_CASE("c = 0, m = 2 has exactly the seven signed monomials") {
    const auto s = enumerate_effective(can(1, 0), 2);
    CHECK(s.rank == 3);
    CHECK(s.ambiguous_count == 0);
    const std::set<Coeffs> want{{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(as_set(s.members) == want);
    CHECK(std::is_sorted(s.members.begin(), s.members.end()));
}

TEST_CASE("e^{mc} just above 2 at m = 1 gives the 13-point cross polytope") {
    const auto s = enumerate_effective(can(1, Rational(7, 10)), 1);
    CHECK(s.members.size() == 13);
    for (const auto& a : s.members) CHECK(std::abs(a[0]) + std::abs(a[1]) <= 2);
}

TEST_CASE("enumeration matches the brute-force box oracle on P1Z") {
    for (const auto& c : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(7, 10), Rational(11, 10)})
        for (int m = 1; m <= 3; ++m) {
            const double R = std::exp(static_cast<double>(c) * m);
            if (R > 9) continue;
            const auto ref = oracle::box_members(m + 1, static_cast<std::int64_t>(std::floor(R)),
                                                 [&](const oracle::Vec& a) { return oracle::circle_side(a, R); });
            if (!ref) continue;
            const auto got = enumerate_effective(can(1, c), m);
            CAPTURE(to_string(c));
            CAPTURE(m);
            CHECK(got.ambiguous_count == 0);
            CHECK(as_set(got.members) == *ref);
        }
}

TEST_CASE("enumeration matches the torus oracle on P2Z") {
    for (const auto& c : {Rational(1, 5), Rational(1, 2), Rational(9, 10)}) {
        const double R = std::exp(static_cast<double>(c));
        const auto exps = monomial_exponents(ModelKind::P2Z, 1);
        const auto ref = oracle::box_members(3, static_cast<std::int64_t>(std::floor(R)),
                                             [&](const oracle::Vec& a) { return oracle::torus_side(exps, a, R); });
        REQUIRE(ref);
        const auto got = enumerate_effective(can(1, c, ModelKind::P2Z), 1);
        CHECK(as_set(got.members) == *ref);
    }
}

TEST_CASE("FS enumeration is consistent with sampled norms") {
    const auto b = fs(1, Rational(1, 4));
    const int m = 2;
    const double R = std::exp(0.5);
    const auto s = enumerate_effective(b, m);
    CHECK(s.ambiguous_count == 0);
    const auto members = as_set(s.members);
    for (std::int64_t x = -3; x <= 3; ++x)
        for (std::int64_t y = -3; y <= 3; ++y)
            for (std::int64_t z = -3; z <= 3; ++z) {
                const Coeffs a{x, y, z};
                double mx = 0;
                for (int i = 0; i <= 200; ++i)
                    for (int j = 0; j < 64; ++j) {
                        const double ph = (std::numbers::pi / 2) * i / 200, th = 2 * std::numbers::pi * j / 64;
                        const double c = std::cos(ph), sn = std::sin(ph);
                        const auto v = static_cast<double>(x) * c * c +
                                       static_cast<double>(y) * c * sn * std::polar(1.0, th) +
                                       static_cast<double>(z) * sn * sn * std::polar(1.0, 2 * th);
                        mx = std::max(mx, std::abs(v));
                    }
                // Sampled values bound the sup from below: members must pass.
                if (members.count(a)) CHECK(mx <= R + 1e-9);
                // Comfortably inside: the sampling gap is tiny at this resolution.
                if (mx < 0.97 * R) CHECK(members.count(a) == 1);
            }
}

TEST_CASE("enumeration budget and threads") {
    EnumerateOptions o;
    o.budget = 0;
    CHECK(kind_of([&] { enumerate_effective(can(1, 0), 2, o); }) == ErrorKind::BudgetExhausted);
    EnumerateOptions t1, t3;
    t1.threads = 1;
    t3.threads = 3;
    const auto b = can(1, Rational(1, 2));
    CHECK(enumerate_effective(b, 4, t1).members == enumerate_effective(b, 4, t3).members);
}

TEST_CASE("hzero values") {
    CHECK(hzero_exact(can(1, 0), 2) == doctest::Approx(std::log(7.0)));
    CHECK(hzero_exact(can(1, 0), 5) == doctest::Approx(std::log(13.0)));
    CHECK(hzero_exact(can(1, Rational(-1, 10)), 3) == doctest::Approx(0.0));
    const auto band = hzero_band(can(1, 0), 4);
    CHECK(band.first == doctest::Approx(std::log(11.0)));
    CHECK(band.second == doctest::Approx(std::log(11.0)));
    const auto wide = hzero_band(can(1, Rational(7, 10)), 1);
    CHECK(wide.first >= std::log(13.0) - 1e-12);
    CHECK(wide.first <= wide.second);
    const auto big = hzero_band(can(1, 1), 60);
    CHECK(big.first <= big.second);
}

TEST_CASE("twisted enumeration returns multiples of the divisor") {
    const auto b = twist(can(1, Rational(3, 2)), 0, {{2, 1}});
    const auto s = enumerate_effective(b, 1);
    const double R = std::exp(1.5);
    const auto ref = oracle::box_members(2, 2, [&](const oracle::Vec& v) {
        return oracle::circle_side({2 * v[0], 2 * v[1]}, R);
    });
    REQUIRE(ref);
    std::set<Coeffs> scaled;
    for (const auto& v : *ref) scaled.insert({2 * v[0], 2 * v[1]});
    CHECK(as_set(s.members) == scaled);
}

TEST_CASE("section products") {
    const Coeffs f{1, 2}, g{3, 0, -1};
    CHECK(multiply_sections(ModelKind::P1Z, 1, f, 2, g) == oracle::convolve(f, g));
    const auto one = product_set(can(1, 0), 1, 1);
    CHECK(one.members == enumerate_effective(can(1, 0), 1).members);
    const auto two = product_set(can(1, 0), 1, 2);
    const std::set<Coeffs> want{{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(as_set(two.members) == want);

    const auto b = can(1, Rational(7, 10));
    const auto base = enumerate_effective(b, 1);
    std::set<Coeffs> conv;
    for (const auto& x : base.members)
        for (const auto& y : base.members) conv.insert(oracle::convolve(x, y));
    const auto v21 = product_set(base, 2);
    CHECK(as_set(v21.members) == conv);
    const auto full = as_set(enumerate_effective(b, 2).members);
    for (const auto& x : v21.members) CHECK(full.count(x) == 1);
}

TEST_CASE("flags") {
    CHECK_NOTHROW(make_flag_p1(5, 0));
    CHECK(kind_of([] { make_flag_p1(4, 1); }) == ErrorKind::NotPrime);
    CHECK_NOTHROW(make_flag_p1_infinity(7));
    CHECK_NOTHROW(standard_flag_p2(3));
    CHECK(kind_of([] { make_flag_p2(3, {0, 0, 1}, {0, 0, 1}); }) == ErrorKind::NotRational);
}

TEST_CASE("nu on worked sections") {
    const auto b = can(1, 0);
    const Flag f5 = make_flag_p1(5, 0);
    const Coeffs f{0, 0, 10, 25};
    CHECK(nu(f5, b, 3, f) == Point{1, 2});
    const Coeffs one{1, 0, 0, 0};
    CHECK(nu(f5, b, 3, one) == Point{0, 0});
    const Coeffs g5t{0, 5}, tm1{-1, 1};
    const auto prod = multiply_sections(ModelKind::P1Z, 1, g5t, 1, tm1);
    CHECK(nu(f5, b, 1, g5t) == Point{1, 1});
    CHECK(nu(f5, b, 1, tm1) == Point{0, 0});
    CHECK(nu(f5, b, 2, prod) == Point{1, 1});
    const Coeffs zero{0, 0};
    CHECK(kind_of([&] { nu(f5, b, 1, zero); }) == ErrorKind::ZeroSection);
}

TEST_CASE("nu property: P1 valuations match synthetic division") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-60, 60);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + trial % 6;
            Coeffs a(n + 1);
            for (auto& x : a) x = coef(rng);
            if (std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; })) a[n] = 1;
            const std::int64_t alpha = trial % p;
            FiberValuation fv(make_flag_p1(p, alpha), n);
            CHECK(fv.nu(std::span<const std::int64_t>(a)) == oracle::nu_p1(a, p, alpha));
            FiberValuation inf(make_flag_p1_infinity(p), n);
            CHECK(inf.nu(std::span<const std::int64_t>(a)) == oracle::nu_p1(a, p, 0, true));
        }
    }
}

TEST_CASE("nu property: P2 standard flag and additivity on general flags") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> coef(-20, 20);
    const std::int64_t p = 5;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 3;
        const auto exps = monomial_exponents(ModelKind::P2Z, n);
        Coeffs a(exps.size());
        for (auto& x : a) x = coef(rng);
        a[trial % a.size()] = 7;
        FiberValuation fv(standard_flag_p2(p), n);
        CHECK(fv.nu(std::span<const std::int64_t>(a)) == oracle::nu_p2_standard(exps, a, p));
    }
    const Flag general = make_flag_p2(5, {1, 1, 1}, {1, 2, 2});
    for (int trial = 0; trial < 30; ++trial) {
        const int n1 = 1 + trial % 2, n2 = 1 + (trial / 2) % 2;
        Coeffs f(monomial_exponents(ModelKind::P2Z, n1).size()), g(monomial_exponents(ModelKind::P2Z, n2).size());
        for (auto& x : f) x = coef(rng);
        for (auto& x : g) x = coef(rng);
        f[0] = 13;
        g[0] = 11;
        const auto h = multiply_sections(ModelKind::P2Z, n1, f, n2, g);
        const auto vf = FiberValuation(general, n1).nu(std::span<const std::int64_t>(f));
        const auto vg = FiberValuation(general, n2).nu(std::span<const std::int64_t>(g));
        const auto vh = FiberValuation(general, n1 + n2).nu(std::span<const std::int64_t>(h));
        for (int i = 0; i < 3; ++i) CHECK(vh[i] == vf[i] + vg[i]);
    }
}

TEST_CASE("nu bounds") {
    const auto b = nu_bounds(make_flag_p1(7, 0), can(1, 1), 20);
    CHECK(b.upper[0] == 10);
    CHECK(b.upper[1] == 20);
    CHECK(nu_bounds(make_flag_p1(7, 0), can(1, 0), 20).upper[0] == 0);
    CHECK(nu_bounds(make_flag_p1(3, 0), can(1, 0), 4).upper[1] == 4);
}

TEST_CASE("exact valuation images") {
    const auto v = valuation_image_exact(can(1, Rational(7, 10)), 1, make_flag_p1(2, 0));
    CHECK(v.verified == std::vector<Point>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(v.unknown.empty());
    for (std::int64_t p : {2, 3, 11}) {
        const auto w = valuation_image_exact(can(1, 0), 2, make_flag_p1(p, 0));
        CHECK(w.verified == std::vector<Point>{{0, 0}, {0, 1}, {0, 2}});
    }
    CHECK(valuation_image_exact(can(1, Rational(-1)), 2, make_flag_p1(3, 0)).verified.empty());
}

TEST_CASE("valuation image property: equals nu of the brute-force members") {
    for (const auto& c : {Rational(1, 2), Rational(7, 10), Rational(11, 10)})
        for (int m = 1; m <= 2; ++m)
            for (std::int64_t p : {2, 3})
                for (std::int64_t alpha = 0; alpha < p; ++alpha) {
                    const double R = std::exp(static_cast<double>(c) * m);
                    const auto ref = oracle::box_members(m + 1, static_cast<std::int64_t>(std::floor(R)),
                                                         [&](const oracle::Vec& a) { return oracle::circle_side(a, R); });
                    REQUIRE(ref);
                    const auto img = valuation_image_exact(can(1, c), m, make_flag_p1(p, alpha));
                    const auto want = oracle_image_p1(*ref, p, alpha);
                    CHECK(std::set<Point>(img.verified.begin(), img.verified.end()) == want);
                }
}

TEST_CASE("LLL and determinants") {
    const IntMatrix b{{1, 0}, {7, 1}};
    const auto r = lll_reduce(b);
    for (const auto& row : r)
        for (const auto& x : row) CHECK(abs(x) <= 1);
    CHECK(abs(determinant(r)) == 1);
    const IntMatrix id{{1, 0}, {0, 1}};
    const auto ri = lll_reduce(id);
    CHECK(abs(determinant(ri)) == 1);
    for (const auto& row : ri) CHECK(abs(row[0]) + abs(row[1]) == 1);
    const IntMatrix two{{2, 0}, {0, 2}};
    CHECK(abs(determinant(lll_reduce(two))) == 4);
    CHECK(gram_determinant(two) == 16);
    CHECK(kind_of([] { lll_reduce({{1, 2}, {2, 4}}); }) == ErrorKind::RankDeficient);

    // Property: the transform is unimodular and reproduces the basis.
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> coef(-50, 50);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix B(3, std::vector<BigInt>(3));
        for (auto& row : B)
            for (auto& x : row) x = coef(rng);
        if (determinant(B) == 0) continue;
        const auto full = lll_reduce_full(B);
        CHECK(abs(determinant(full.transform)) == 1);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                BigInt s = 0;
                for (int k = 0; k < 3; ++k) s += full.transform[i][k] * B[k][j];
                CHECK(s == full.basis[i][j]);
            }
        CHECK(abs(determinant(full.basis)) == abs(determinant(B)));
    }
}

TEST_CASE("short vector search") {
    SublatticeProblem prob;
    prob.basis = {{2, 0}, {0, 2}};
    prob.space = {ModelKind::P1Z, MetricFamily::Canonical, 1};
    prob.bound = NormBound(0, 2);
    auto r = short_vector_search(prob, 100000);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(abs(r.vector[0]) + abs(r.vector[1]) == 2);
    prob.bound = NormBound(0, 1);
    CHECK(short_vector_search(prob, 100000).status == SearchStatus::None);
    prob.basis = {{1000003, 0, 0}, {0, 1000033, 0}, {0, 0, 1000037}};
    prob.space = {ModelKind::P1Z, MetricFamily::Canonical, 2};
    prob.bound = NormBound(0, 10'000'000);
    CHECK(short_vector_search(prob, 0).status == SearchStatus::Unknown);
}

TEST_CASE("lattice images agree with exact images on small instances") {
    for (std::int64_t p : {2, 3, 5})
        for (int m = 1; m <= 4; ++m) {
            const auto b = can(1, Rational(1, 2));
            const Flag f = make_flag_p1(p, 1 % p);
            const auto ex = valuation_image_exact(b, m, f);
            const auto la = valuation_image_lattice(b, m, f);
            CHECK(la.verified == ex.verified);
            CHECK(la.unknown.empty());
        }
    const auto b2 = can(1, Rational(1, 2), ModelKind::P2Z);
    const Flag f2 = standard_flag_p2(3);
    CHECK(valuation_image_lattice(b2, 2, f2).verified == valuation_image_exact(b2, 2, f2).verified);
}

TEST_CASE("witnessed rectangle in lattice mode") {
    const auto img = valuation_image_lattice(can(1, 1), 20, make_flag_p1(7, 0));
    std::set<Point> got(img.verified.begin(), img.verified.end());
    CHECK(img.unknown.empty());
    for (std::int64_t x = 0; x <= 10; ++x)
        for (std::int64_t y = 0; y <= 20; ++y) CHECK(got.count({x, y}) == 1);
    CHECK(got.size() == 11 * 21);
}
