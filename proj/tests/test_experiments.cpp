#include "arithvol/experiments.hpp"
#include "arithvol/io.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

using namespace arithvol;

namespace {

HermitianLineBundle can(std::int64_t a, Rational c, ModelKind k = ModelKind::P1Z) {
    return make_bundle(make_model(k), a, {MetricFamily::Canonical, c});
}

std::int64_t brute_count(int m, double R, std::int64_t D = 1) {
    const auto B = static_cast<std::int64_t>(std::floor(R / static_cast<double>(D)));
    const auto s = oracle::box_members(m + 1, B, [&](const oracle::Vec& v) {
        oracle::Vec a(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) a[i] = D * v[i];
        return oracle::circle_side(a, R);
    });
    REQUIRE(s);
    return static_cast<std::int64_t>(s->size());
}

ExperimentConfig witnessed_config(std::vector<std::int64_t> schedule) {
    ExperimentConfig cfg;
    cfg.bundle = can(1, 1);
    cfg.m_schedule = std::move(schedule);
    return cfg;
}

}  // namespace

TEST_CASE("theorem A rows on the witnessed family") {
    const auto rep = run_theorem_a(witnessed_config({5, 10, 20}));
    REQUIRE(rep.rows.size() == 9);
    CHECK(self_consistent(rep));
    for (const auto& r : rep.rows) {
        const double logp = std::log(static_cast<double>(r.p));
        const double oracle_gap = std::abs(std::floor(r.m / logp) / r.m * logp - 1.0);
        CHECK(r.gap == doctest::Approx(oracle_gap).epsilon(1e-12));
        CHECK(r.gap <= logp / r.m + 1e-12);
        REQUIRE(r.oracle_gap);
        CHECK(*r.oracle_gap == doctest::Approx(r.gap));
        CHECK(r.hull_volume == Rational(static_cast<std::int64_t>(std::floor(r.m / logp)), r.m));
    }
    const auto& p7 = rep.rows[2];
    CHECK(p7.p == 7);
    CHECK(p7.m == 20);
    CHECK(p7.hull_volume_times_logp == doctest::Approx(0.972955).epsilon(1e-5));
    CHECK(p7.gap == doctest::Approx(0.027045).epsilon(1e-4));
    CHECK(rep.summary.volumes_nondecreasing);
    CHECK(rep.summary.within_discretization);
    CHECK(rep.summary.matches_oracle);
    CHECK(rep.summary.comparison_constant == doctest::Approx(4.0));
}

TEST_CASE("theorem A preconditions and CSV") {
    auto cfg = witnessed_config({20});
    cfg.bundle = can(1, 0);
    CHECK_THROWS_AS(run_theorem_a(cfg), Error);
    cfg = witnessed_config({10, 5});
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg = witnessed_config({20});
    cfg.primes = {7, 9};
    CHECK_THROWS_AS(validate(cfg), Error);

    const auto rep = run_theorem_a(witnessed_config({20}));
    const auto csv = theorem_a_csv(rep);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "p,m,verified_count,hull_volume,hull_volume_times_logp,target,gap");
    std::getline(in, line);
    CHECK(line.rfind("7,20,231,1/2,", 0) == 0);
    auto broken = rep;
    broken.rows[0].gap += 0.5;
    CHECK_FALSE(self_consistent(broken));
}

TEST_CASE("rescaling against brute-force counts") {
    const auto b = can(1, Rational(7, 10));
    const auto rep = verify_rescaling(b, 1, {{0, 1}, {0, 2}, {Rational(1, 2), 1}, {5, 1}});
    CHECK(rep.all_hold);
    const double R = std::exp(0.7);
    CHECK(rep.rows[0].count == brute_count(1, R));
    CHECK(rep.rows[0].count == 13);
    CHECK(rep.rows[0].count_shifted == 13);
    CHECK(rep.rows[0].difference == doctest::Approx(0.0));
    CHECK(rep.rows[1].count_shifted == brute_count(1, R, 2));
    CHECK(rep.rows[1].count_shifted == 5);
    CHECK(rep.rows[1].bound == doctest::Approx(2 * std::log(6.0)));
    CHECK(rep.rows[2].count_shifted == brute_count(1, std::exp(0.2)));
    CHECK(rep.rows[3].count_shifted == 1);
    CHECK(rep.rows[3].difference == doctest::Approx(std::log(13.0)));
}

TEST_CASE("reduction worked instance") {
    const auto r = verify_reduction(can(1, Rational(7, 10)), 1, 2);
    CHECK(r.image_count == 4);
    CHECK(r.count == 13);
    CHECK(r.count_up == 41);
    CHECK(r.count_zn == 5);
    CHECK(r.count_low == 13);
    CHECK(r.upper_holds);
    CHECK(r.lower_holds);
    const double R = std::exp(0.7);
    CHECK(r.count_up == brute_count(1, 2 * R));
    CHECK(r.count_low == brute_count(1, 2 * R, 2));
    const auto huge = verify_reduction(can(1, Rational(7, 10)), 1, 1000);
    CHECK(huge.image_count == huge.count);
    CHECK(huge.upper_holds);
}

TEST_CASE("compatibility identity") {
    const auto r = verify_compatibility(can(1, Rational(7, 10)), 1, make_flag_p1(2, 0));
    CHECK(r.image_count == 4);
    CHECK(r.restricted_counts == std::vector<std::int64_t>{2, 2});
    CHECK(r.holds);
    const auto flat = verify_compatibility(can(1, 0), 3, make_flag_p1(5, 0));
    CHECK(flat.image_count == 4);
    CHECK(flat.restricted_counts == std::vector<std::int64_t>{4});
    const auto empty = verify_compatibility(can(1, Rational(-1)), 2, make_flag_p1(3, 0));
    CHECK(empty.image_count == 0);
    CHECK(empty.restricted_total == 0);
    CHECK(empty.holds);
}

TEST_CASE("fujita table against direct convolution") {
    const auto b = can(1, Rational(7, 10));
    const Flag f = make_flag_p1(2, 0);
    const auto rep = verify_fujita_finite(b, f, {1}, 3);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].image_count == 4);
    CHECK(rep.rows[0].ratio == Rational(4, 1));
    // k = 2 by brute force: products of the 13 level-one sections.
    const double R = std::exp(0.7);
    const auto base = oracle::box_members(2, 2, [&](const oracle::Vec& a) { return oracle::circle_side(a, R); });
    REQUIRE(base);
    std::set<oracle::Vec> prods;
    for (const auto& x : *base)
        for (const auto& y : *base) prods.insert(oracle::convolve(x, y));
    std::set<oracle::Vec> img;
    for (const auto& s : prods)
        if (std::any_of(s.begin(), s.end(), [](auto v) { return v != 0; })) img.insert(oracle::nu_p1(s, 2, 0));
    CHECK(rep.rows[1].product_count == static_cast<std::int64_t>(prods.size()));
    CHECK(rep.rows[1].image_count == static_cast<std::int64_t>(img.size()));
    for (const auto& row : rep.rows) {
        CHECK(row.inclusion_holds);
        if (row.full_ratio) CHECK(row.ratio <= *row.full_ratio);
    }
}

TEST_CASE("theorem B") {
    const auto r = run_theorem_b(can(1, 1), can(1, 4), make_flag_p1(7, 0), 4);
    CHECK(r.inclusion_failures == 0);
    CHECK(r.inclusion_holds);
    CHECK(r.hull_check.holds);
    REQUIRE(r.closed_form_available);
    CHECK(r.closed_form.lhs == doctest::Approx(std::sqrt(20.0)));
    CHECK(r.closed_form.rhs == doctest::Approx(std::sqrt(2.0) + std::sqrt(8.0)));
    CHECK(r.closed_form.holds);
    const auto same = run_theorem_b(can(1, 1), can(1, 1), make_flag_p1(3, 0), 3);
    CHECK(same.inclusion_holds);
    CHECK(same.hull_check.holds);
}

TEST_CASE("suites on small seeds") {
    const auto a = inequality_sweep(1, 30);
    CHECK(a.cases >= 30);
    CHECK(a.failures == 0);
    CHECK(hodge_sweep(2, 10).failures == 0);
    CHECK(quadrature_crosscheck(3, 4).failures == 0);
    const auto again = inequality_sweep(1, 30);
    CHECK(dump(Json(a)) == dump(Json(again)));
}

TEST_CASE("JSON round trips") {
    const auto b = twist(can(2, Rational(-3, 7)), 0, {{5, 2}, {2, 1}});
    CHECK(read_as<HermitianLineBundle>(Json(b)) == b);
    const auto fb = make_bundle(make_model(ModelKind::P1Z), 1, {MetricFamily::FubiniStudy, Rational(1, 4)});
    CHECK(read_as<HermitianLineBundle>(parse_json(dump(Json(fb)))) == fb);

    const Flag f = make_flag_p2(5, {1, 1, 1}, {1, 2, 2});
    CHECK(read_as<Flag>(Json(f)) == f);

    const auto img = valuation_image_exact(can(1, Rational(7, 10)), 1, make_flag_p1(2, 0));
    const auto img2 = read_as<ValuationImage>(Json(img));
    CHECK(img2.verified == img.verified);
    CHECK(img2.bundle == img.bundle);
    CHECK(dump(Json(img2)) == dump(Json(img)));

    const auto P = convex_hull({{0, 0, 0}, {1, 0, 0}, {0, Rational(1, 3), 0}, {0, 0, 1}});
    const auto P2 = read_as<RationalPolytope>(Json(P));
    CHECK(P2.volume == P.volume);
    CHECK(P2.vertices == P.vertices);
    CHECK(P2.faces == P.faces);

    auto cfg = witnessed_config({5, 10});
    cfg.bundle2 = can(1, 4);
    cfg.seed = 42;
    cfg.mode = ImageMode::Lattice;
    const auto text = dump(Json(cfg));
    CHECK(dump(Json(read_as<ExperimentConfig>(parse_json(text)))) == text);

    const auto rep = run_theorem_a(witnessed_config({10}));
    const auto rtext = dump(Json(rep));
    CHECK(dump(Json(read_as<TheoremAReport>(parse_json(rtext)))) == rtext);

    const auto red = verify_reduction(can(1, Rational(7, 10)), 1, 2);
    CHECK(dump(Json(read_as<ReductionReport>(Json(red)))) == dump(Json(red)));
    const auto cor = corollary_checks(can(1, 1), can(1, 4));
    CHECK(dump(Json(read_as<CorollaryReport>(Json(cor)))) == dump(Json(cor)));
}

TEST_CASE("JSON rejects malformed input") {
    CHECK_THROWS_AS(parse_json("{bad"), Error);
    CHECK_THROWS_AS(read_as<HermitianLineBundle>(parse_json(R"({"model":"P1Z","family":"Canonical"})")), Error);
    CHECK_THROWS_AS(read_as<ExperimentConfig>(parse_json(R"({"bundle":{}, "extra":1})")), Error);
    const auto good = dump(Json(can(1, 1)));
    auto j = parse_json(good);
    j["unknown"] = 3;
    CHECK_THROWS_AS(read_as<HermitianLineBundle>(j), Error);
}
