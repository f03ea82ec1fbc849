#include "arithvol/error.hpp"
#include "arithvol/okounkov.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

using namespace arithvol;

namespace {

HermitianLineBundle can(std::int64_t a, Rational c) {
    return make_bundle(make_model(ModelKind::P1Z), a, {MetricFamily::Canonical, c});
}

QPoint q2(Rational x, Rational y) { return {x, y}; }

std::vector<QPoint> random_points(std::mt19937_64& rng, int dim, int count, int range, int den) {
    std::uniform_int_distribution<int> u(-range, range);
    std::vector<QPoint> pts;
    for (int i = 0; i < count; ++i) {
        QPoint p;
        for (int k = 0; k < dim; ++k) p.emplace_back(u(rng), den);
        pts.push_back(p);
    }
    return pts;
}

Rational oracle_volume(const std::vector<QPoint>& pts, int dim) {
    return dim == 2 ? oracle::area2d(pts) : oracle::volume3d(pts);
}

}  // namespace

TEST_CASE("scale_points divides by m") {
    ValuationImage img;
    img.m = 2;
    img.verified = {{1, 2}};
    const auto s = scale_points(img);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == q2(Rational(1, 2), 1));
    img.m = 1;
    CHECK(scale_points(img)[0] == q2(1, 2));
}

TEST_CASE("hulls of simple sets") {
    const auto sq = convex_hull({q2(0, 0), q2(0, 1), q2(1, 0), q2(1, 1)});
    CHECK(sq.volume == 1);
    CHECK(sq.vertices.size() == 4);
    CHECK(sq.affine_dim == 2);
    const auto tri = convex_hull({q2(0, 0), q2(1, 0), q2(0, 1)});
    CHECK(tri.volume == Rational(1, 2));
    const auto seg = convex_hull({q2(0, 0), q2(1, 1), q2(2, 2), q2(Rational(1, 2), Rational(1, 2))});
    CHECK(seg.volume == 0);
    CHECK(seg.affine_dim == 1);
    CHECK(seg.vertices.size() == 2);
    CHECK(convex_hull({}).affine_dim == -1);
    const auto cube = convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                   {1, 1, 1}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}});
    CHECK(cube.volume == 1);
    CHECK(cube.vertices.size() == 8);
    CHECK(cube.faces.size() == 6);
    CHECK(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).volume == Rational(1, 6));
}

TEST_CASE("hull property: volume matches the brute-force oracle in 2D and 3D") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 2 + trial % 2;
        const auto pts = random_points(rng, dim, 5 + trial % 9, 6, 1 + trial % 3);
        const auto P = convex_hull(pts);
        CHECK(P.volume == oracle_volume(pts, dim));
        for (const auto& x : pts) CHECK(contains(P, x));
        for (const auto& v : P.vertices) CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
    }
}

TEST_CASE("hull property: points outside are rejected") {
    const auto sq = convex_hull({q2(0, 0), q2(0, 1), q2(1, 0), q2(1, 1)});
    CHECK(contains(sq, q2(Rational(1, 2), 1)));
    CHECK_FALSE(contains(sq, q2(Rational(1, 2), Rational(1001, 1000))));
    CHECK_FALSE(contains(sq, q2(-1, 0)));
}

TEST_CASE("minkowski sums") {
    const auto sq = convex_hull({q2(0, 0), q2(0, 1), q2(1, 0), q2(1, 1)});
    CHECK(minkowski_sum(sq, sq).volume == 4);
    const auto pt = convex_hull({q2(3, -2)});
    const auto tr = minkowski_sum(sq, pt);
    CHECK(tr.volume == 1);
    CHECK(contains(tr, q2(4, -1)));
    const auto tri = convex_hull({q2(0, 0), q2(1, 0), q2(0, 1)});
    CHECK(minkowski_sum(tri, tri).volume == 2);
    CHECK(minkowski_sum(sq, convex_hull({})).affine_dim == -1);
}

TEST_CASE("minkowski property: sum equals hull of pairwise vertex sums") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + trial % 2;
        const auto a = random_points(rng, dim, 4 + trial % 4, 4, 1);
        const auto b = random_points(rng, dim, 4 + trial % 3, 4, 2);
        const auto S = minkowski_sum(convex_hull(a), convex_hull(b));
        CHECK(S.volume == oracle_volume(oracle::pairwise_sums(a, b), dim));
    }
}

TEST_CASE("Brunn-Minkowski reports") {
    const auto sq = convex_hull({q2(0, 0), q2(0, 1), q2(1, 0), q2(1, 1)});
    const auto eq = brunn_minkowski_check(sq, sq);
    CHECK(eq.holds);
    CHECK(eq.equality);
    CHECK(eq.vol_sum == 4);
    const auto tri = convex_hull({q2(0, 0), q2(1, 0), q2(0, 1)});
    const auto st = brunn_minkowski_check(sq, tri);
    CHECK(st.vol_sum == oracle::area2d(oracle::pairwise_sums(sq.vertices, tri.vertices)));
    CHECK(st.holds);
    CHECK_FALSE(st.equality);
    CHECK(st.slack.lo >= 0);
    const auto seg = convex_hull({q2(0, 0), q2(2, 0)});
    const auto deg = brunn_minkowski_check(sq, seg);
    CHECK(deg.holds);
    CHECK(deg.vol_sum >= deg.vol_p);
    CHECK(deg.vol_sum == 3);

    bool equal = false;
    CHECK(brunn_minkowski_holds(2, 4, 1, 1, &equal));
    CHECK(equal);
    CHECK_FALSE(brunn_minkowski_holds(2, Rational(39, 10), 1, 1));
    CHECK(brunn_minkowski_holds(3, 8, 1, 1, &equal));
    CHECK(equal);
    CHECK_FALSE(brunn_minkowski_holds(3, Rational(79, 10), 1, 1));
}

TEST_CASE("Brunn-Minkowski property: slack is nonnegative on random pairs") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 2 + trial % 2;
        const auto P = convex_hull(random_points(rng, dim, 6, 5, 1));
        const auto Q = convex_hull(random_points(rng, dim, 6, 3, 2));
        const auto r = brunn_minkowski_check(P, Q);
        CHECK(r.holds);
        CHECK(r.slack.hi >= 0);
        // Homothety gives equality.
        const auto PP = brunn_minkowski_check(P, P);
        if (P.volume > 0) CHECK(PP.equality);
    }
}

TEST_CASE("okounkov runs on the witnessed family") {
    const auto run = okounkov_run(can(1, 1), make_flag_p1(7, 0), {20});
    CHECK(run.polytope.volume == Rational(1, 2));
    CHECK(run.volume_lower == Rational(1, 2));
    CHECK(run.verified_point_count == 11 * 21);
    CHECK(run.unknown_point_count == 0);
    CHECK(static_cast<double>(run.polytope.volume) * std::log(7.0) == doctest::Approx(0.972955).epsilon(1e-5));
    for (const auto& x : run.points) CHECK(contains(run.polytope, x));

    const auto flat = okounkov_run(can(1, 0), make_flag_p1(7, 0), {4});
    CHECK(flat.polytope.volume == 0);
    CHECK(flat.polytope.affine_dim == 1);
    for (const auto& v : flat.polytope.vertices) CHECK(v[0] == 0);
}

TEST_CASE("okounkov property: divisibility chains give nested images") {
    const auto b = can(1, Rational(1, 2));
    const Flag f = make_flag_p1(3, 1);
    const auto s2 = scale_points(valuation_image(b, 2, f));
    const auto s4 = scale_points(valuation_image(b, 4, f));
    const std::set<QPoint> big(s4.begin(), s4.end());
    for (const auto& x : s2) CHECK(big.count(x) == 1);
    const auto run = okounkov_run(b, f, {2, 4});
    CHECK(run.polytope.volume >= convex_hull(s2).volume);
    CHECK(run.volume_lower <= run.volume_upper);
}

TEST_CASE("exact scope and modes") {
    CHECK(exact_in_scope(can(1, 0), 4));
    CHECK_FALSE(exact_in_scope(can(1, 1), 120));
    CHECK_FALSE(exact_in_scope(can(1, 1), 4));
    CHECK(exact_in_scope(can(1, Rational(1, 2)), 4));
    OkounkovOptions ex;
    ex.mode = ImageMode::Exact;
    try {
        valuation_image(can(1, 1), 120, make_flag_p1(7, 0), ex);
        FAIL("expected ScopeExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ScopeExceeded);
    }
}

TEST_CASE("svg output") {
    const auto sq = convex_hull({q2(0, 0), q2(0, 1), q2(1, 0), q2(1, 1)});
    const auto svg = hull_svg(sq, SvgBox{0, 0, 1, 1}, SvgBox{0, 0, 1, 1});
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    const auto seg = hull_svg(convex_hull({q2(0, 0), q2(0, 1)}));
    CHECK(seg.find("<polyline") != std::string::npos);
}
