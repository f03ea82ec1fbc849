#include "arithvol/okounkov.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

namespace arithvol {

namespace {

using I2 = std::array<BigInt, 2>;
using I3 = std::array<BigInt, 3>;

BigInt lcm_of_denominators(const std::vector<QPoint>& pts) {
    BigInt L = 1;
    for (const auto& p : pts)
        for (const auto& c : p) {
            const BigInt d = boost::multiprecision::denominator(c);
            L = L / boost::multiprecision::gcd(L, d) * d;
        }
    return L;
}

BigInt to_scaled_int(const Rational& c, const BigInt& L) {
    return boost::multiprecision::numerator(c) * (L / boost::multiprecision::denominator(c));
}

BigInt cross2(const I2& o, const I2& a, const I2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Indices of the 2D hull vertices, counterclockwise from the lexicographic
// minimum; collinear boundary points are dropped. Degenerate inputs give one
// or two indices.
std::vector<int> hull2d_indices(const std::vector<I2>& pts) {
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
    idx.erase(std::unique(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] == pts[b]; }), idx.end());
    if (idx.size() <= 2) return idx;
    std::vector<int> h(2 * idx.size());
    std::size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
        const int i = idx[t];
        while (k >= lo && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
        h[k++] = i;
    }
    h.resize(k - 1);
    return h;
}

BigInt orient3(const I3& a, const I3& b, const I3& c, const I3& d) {
    const BigInt u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
    const BigInt v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
    const BigInt w0 = d[0] - a[0], w1 = d[1] - a[1], w2 = d[2] - a[2];
    return u0 * (v1 * w2 - v2 * w1) - u1 * (v0 * w2 - v2 * w0) + u2 * (v0 * w1 - v1 * w0);
}

I3 cross3(const I3& a, const I3& b, const I3& c) {
    const BigInt u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
    const BigInt v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
    return {u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0};
}

bool is_zero(const I3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

// Coordinate to drop when projecting a plane with normal n: one with
// nonzero normal component (the largest).
int drop_axis(const I3& n) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (boost::multiprecision::abs(n[i]) > boost::multiprecision::abs(n[k])) k = i;
    return k;
}

I2 project(const I3& p, int k) { return {p[(k + 1) % 3], p[(k + 2) % 3]}; }

QPoint unscale(const I3& p, const BigInt& L) {
    return {Rational(p[0], L), Rational(p[1], L), Rational(p[2], L)};
}

QPoint unscale(const I2& p, const BigInt& L) { return {Rational(p[0], L), Rational(p[1], L)}; }

RationalPolytope hull2(const std::vector<QPoint>& points) {
    RationalPolytope P;
    P.dim = 2;
    const BigInt L = lcm_of_denominators(points);
    std::vector<I2> pts;
    pts.reserve(points.size());
    for (const auto& q : points) pts.push_back({to_scaled_int(q[0], L), to_scaled_int(q[1], L)});
    const auto h = hull2d_indices(pts);
    for (int i : h) P.vertices.push_back(unscale(pts[i], L));
    P.affine_dim = static_cast<int>(std::min<std::size_t>(h.size(), 3)) - 1;
    if (h.size() >= 3) {
        BigInt twice = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const I2& a = pts[h[i]];
            const I2& b = pts[h[(i + 1) % h.size()]];
            twice += a[0] * b[1] - a[1] * b[0];
        }
        P.volume = Rational(twice, 2 * L * L);
    }
    return P;
}

RationalPolytope hull3(const std::vector<QPoint>& points) {
    RationalPolytope P;
    P.dim = 3;
    const BigInt L = lcm_of_denominators(points);
    std::vector<I3> pts;
    for (const auto& q : points) pts.push_back({to_scaled_int(q[0], L), to_scaled_int(q[1], L), to_scaled_int(q[2], L)});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n == 0) return P;

    int i1 = -1, i2 = -1, i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i)
        if (pts[i] != pts[0]) i1 = i;
    if (i1 < 0) {
        P.affine_dim = 0;
        P.vertices.push_back(unscale(pts[0], L));
        return P;
    }
    for (int i = 1; i < n && i2 < 0; ++i)
        if (!is_zero(cross3(pts[0], pts[i1], pts[i]))) i2 = i;
    if (i2 < 0) {
        // Collinear: lexicographic extremes are the endpoints.
        P.affine_dim = 1;
        P.vertices = {unscale(pts.front(), L), unscale(pts.back(), L)};
        return P;
    }
    for (int i = 1; i < n && i3 < 0; ++i)
        if (orient3(pts[0], pts[i1], pts[i2], pts[i]) != 0) i3 = i;
    if (i3 < 0) {
        P.affine_dim = 2;
        const int k = drop_axis(cross3(pts[0], pts[i1], pts[i2]));
        std::vector<I2> proj;
        for (const auto& p : pts) proj.push_back(project(p, k));
        std::vector<QPoint> verts;
        for (int i : hull2d_indices(proj)) verts.push_back(unscale(pts[i], L));
        std::sort(verts.begin(), verts.end());
        P.vertices = std::move(verts);
        return P;
    }

    struct Face {
        int a, b, c;
        bool alive;
    };
    std::vector<Face> faces;
    // Outward orientation: orient3(face, interior point) < 0.
    auto add_face = [&](int a, int b, int c, int inside) {
        if (orient3(pts[a], pts[b], pts[c], pts[inside]) > 0) std::swap(b, c);
        faces.push_back({a, b, c, true});
    };
    const int t[4] = {0, i1, i2, i3};
    add_face(t[0], t[1], t[2], t[3]);
    add_face(t[0], t[1], t[3], t[2]);
    add_face(t[0], t[2], t[3], t[1]);
    add_face(t[1], t[2], t[3], t[0]);

    for (int q = 0; q < n; ++q) {
        if (q == t[0] || q == t[1] || q == t[2] || q == t[3]) continue;
        std::set<std::pair<int, int>> edges;
        std::vector<int> visible;
        for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
            const Face& F = faces[f];
            if (!F.alive) continue;
            if (orient3(pts[F.a], pts[F.b], pts[F.c], pts[q]) > 0) {
                visible.push_back(f);
                edges.insert({F.a, F.b});
                edges.insert({F.b, F.c});
                edges.insert({F.c, F.a});
            }
        }
        if (visible.empty()) continue;
        for (int f : visible) faces[f].alive = false;
        for (const auto& [u, v] : edges)
            if (!edges.count({v, u})) faces.push_back({u, v, q, true});
    }

    // Merge coplanar triangles into facets.
    std::map<std::pair<I3, BigInt>, std::set<int>> facets;
    for (const Face& F : faces) {
        if (!F.alive) continue;
        I3 nrm = cross3(pts[F.a], pts[F.b], pts[F.c]);
        BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(boost::multiprecision::abs(nrm[0]),
                                                                       boost::multiprecision::abs(nrm[1])),
                                              boost::multiprecision::abs(nrm[2]));
        for (auto& x : nrm) x /= g;
        const BigInt off = nrm[0] * pts[F.a][0] + nrm[1] * pts[F.a][1] + nrm[2] * pts[F.a][2];
        auto& s = facets[{nrm, off}];
        s.insert(F.a);
        s.insert(F.b);
        s.insert(F.c);
    }
    std::vector<std::vector<int>> polys;
    std::set<int> used;
    for (const auto& [key, members] : facets) {
        const I3& nrm = key.first;
        const int k = drop_axis(nrm);
        std::vector<int> ids(members.begin(), members.end());
        std::vector<I2> proj;
        for (int i : ids) proj.push_back(project(pts[i], k));
        std::vector<int> order;
        for (int j : hull2d_indices(proj)) order.push_back(ids[j]);
        if (nrm[k] < 0) std::reverse(order.begin(), order.end());
        for (int i : order) used.insert(i);
        polys.push_back(std::move(order));
    }
    std::vector<int> vids(used.begin(), used.end());  // sorted = lexicographic since pts are sorted
    std::map<int, int> remap;
    for (std::size_t i = 0; i < vids.size(); ++i) {
        remap[vids[i]] = static_cast<int>(i);
        P.vertices.push_back(unscale(pts[vids[i]], L));
    }
    BigInt six_vol = 0;
    for (auto& poly : polys) {
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
            const I3& a = pts[poly[0]];
            const I3& b = pts[poly[i]];
            const I3& c = pts[poly[i + 1]];
            six_vol += a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                       a[2] * (b[0] * c[1] - b[1] * c[0]);
        }
        std::vector<int> face;
        for (int i : poly) face.push_back(remap[i]);
        std::rotate(face.begin(), std::min_element(face.begin(), face.end()), face.end());
        P.faces.push_back(std::move(face));
    }
    std::sort(P.faces.begin(), P.faces.end());
    P.affine_dim = 3;
    P.volume = Rational(six_vol, 6 * L * L * L);
    return P;
}

Rational cross2q(const QPoint& o, const QPoint& a, const QPoint& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const QPoint& a, const QPoint& b, const QPoint& x) {
    const std::size_t d = a.size();
    // x = a + t (b - a) with 0 <= t <= 1
    std::size_t k = 0;
    while (k < d && a[k] == b[k]) ++k;
    if (k == d) return x == a;
    const Rational t = (x[k] - a[k]) / (b[k] - a[k]);
    if (t < 0 || t > 1) return false;
    for (std::size_t i = 0; i < d; ++i)
        if (x[i] != a[i] + t * (b[i] - a[i])) return false;
    return true;
}

bool in_polygon(const std::vector<QPoint>& ccw, const QPoint& x) {
    for (std::size_t i = 0; i < ccw.size(); ++i)
        if (cross2q(ccw[i], ccw[(i + 1) % ccw.size()], x) < 0) return false;
    return true;
}

std::array<Rational, 3> normal_q(const QPoint& a, const QPoint& b, const QPoint& c) {
    const Rational u0 = b[0] - a[0], u1 = b[1] - a[1], u2 = b[2] - a[2];
    const Rational v0 = c[0] - a[0], v1 = c[1] - a[1], v2 = c[2] - a[2];
    return {u1 * v2 - u2 * v1, u2 * v0 - u0 * v2, u0 * v1 - u1 * v0};
}

}  // namespace

std::vector<QPoint> scale_points(const ValuationImage& image) {
    if (image.m < 1) throw Error(ErrorKind::InvalidArgument, "scale_points needs m >= 1");
    std::vector<QPoint> out;
    out.reserve(image.verified.size());
    for (const auto& p : image.verified) {
        QPoint q;
        for (auto x : p) q.emplace_back(Rational(x, image.m));
        out.push_back(std::move(q));
    }
    return out;
}

RationalPolytope convex_hull(const std::vector<QPoint>& points) {
    if (points.empty()) return {};
    const std::size_t d = points[0].size();
    for (const auto& p : points)
        if (p.size() != d) throw Error(ErrorKind::DimensionMismatch, "points of mixed dimension");
    if (d == 2) return hull2(points);
    if (d == 3) return hull3(points);
    throw Error(ErrorKind::DimensionMismatch, "hulls are supported in dimension 2 and 3");
}

RationalPolytope minkowski_sum(const RationalPolytope& P, const RationalPolytope& Q) {
    if (P.dim != Q.dim) throw Error(ErrorKind::DimensionMismatch, "Minkowski sum of polytopes of different dimension");
    if (P.vertices.empty() || Q.vertices.empty()) {
        RationalPolytope E;
        E.dim = P.dim;
        return E;
    }
    std::vector<QPoint> sums;
    sums.reserve(P.vertices.size() * Q.vertices.size());
    for (const auto& a : P.vertices)
        for (const auto& b : Q.vertices) {
            QPoint s(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
            sums.push_back(std::move(s));
        }
    return convex_hull(sums);
}

bool contains(const RationalPolytope& P, const QPoint& x) {
    if (static_cast<int>(x.size()) != P.dim) throw Error(ErrorKind::DimensionMismatch, "point dimension");
    switch (P.affine_dim) {
        case -1: return false;
        case 0: return x == P.vertices[0];
        case 1: return on_segment(P.vertices[0], P.vertices[1], x);
        default: break;
    }
    if (P.dim == 2) return in_polygon(P.vertices, x);
    if (P.affine_dim == 3) {
        for (const auto& f : P.faces) {
            const auto n = normal_q(P.vertices[f[0]], P.vertices[f[1]], P.vertices[f[2]]);
            const auto& a = P.vertices[f[0]];
            if (n[0] * (x[0] - a[0]) + n[1] * (x[1] - a[1]) + n[2] * (x[2] - a[2]) > 0) return false;
        }
        return true;
    }
    // Planar polygon in space: coplanarity, then a projected polygon test.
    const auto& v = P.vertices;
    std::size_t j = 2;
    std::array<Rational, 3> n{};
    for (; j < v.size(); ++j) {
        n = normal_q(v[0], v[1], v[j]);
        if (n[0] != 0 || n[1] != 0 || n[2] != 0) break;
    }
    if (n[0] * (x[0] - v[0][0]) + n[1] * (x[1] - v[0][1]) + n[2] * (x[2] - v[0][2]) != 0) return false;
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (boost::multiprecision::abs(n[i]) > boost::multiprecision::abs(n[k])) k = i;
    std::vector<QPoint> proj;
    for (const auto& p : v) proj.push_back({p[(k + 1) % 3], p[(k + 2) % 3]});
    const RationalPolytope poly = hull2(proj);
    return in_polygon(poly.vertices, {x[(k + 1) % 3], x[(k + 2) % 3]});
}

bool brunn_minkowski_holds(int d, const Rational& A, const Rational& B, const Rational& C, bool* equal) {
    if (A < 0 || B < 0 || C < 0) throw Error(ErrorKind::InvalidArgument, "volumes must be nonnegative");
    const Rational s = A - B - C;
    bool holds = false, eq = false;
    if (d == 2) {
        // sqrt A >= sqrt B + sqrt C  <=>  s >= 0 and s^2 >= 4 B C
        if (s >= 0) {
            const Rational lhs = s * s, rhs = 4 * B * C;
            holds = lhs >= rhs;
            eq = lhs == rhs;
        }
    } else if (d == 3) {
        // With u = (BC)^(1/3) (B^(1/3) + C^(1/3)): u^3 - 3BC u - BC(B+C) = 0,
        // and the cube-root inequality is T = s/3 >= u, i.e. g(T) >= 0.
        if (s >= 0) {
            const Rational T = s / 3;
            const Rational g = T * T * T - 3 * B * C * T - B * C * (B + C);
            holds = g >= 0;
            eq = g == 0;
        }
    } else {
        throw Error(ErrorKind::DimensionMismatch, "Brunn-Minkowski check supports d = 2, 3");
    }
    if (equal) *equal = eq;
    return holds;
}

BrunnMinkowskiReport brunn_minkowski_check(const RationalPolytope& P, const RationalPolytope& Q) {
    if (P.dim != Q.dim) throw Error(ErrorKind::DimensionMismatch, "polytopes of different dimension");
    BrunnMinkowskiReport r;
    r.dim = P.dim;
    r.vol_p = P.volume;
    r.vol_q = Q.volume;
    r.vol_sum = minkowski_sum(P, Q).volume;
    r.holds = brunn_minkowski_holds(r.dim, r.vol_sum, r.vol_p, r.vol_q, &r.equality);
    const Real50 e = Real50(1) / r.dim;
    auto root = [&](const Rational& v) { return v == 0 ? Real50(0) : boost::multiprecision::pow(to_real(v), e); };
    const Real50 slack = root(r.vol_sum) - root(r.vol_p) - root(r.vol_q);
    const Real50 pad("1e-30");
    r.slack = {enclose(slack - pad).lo, enclose(slack + pad).hi};
    return r;
}

bool exact_in_scope(const HermitianLineBundle& bundle, std::int64_t m, const EnumerateOptions& options) {
    if (m < 1) return false;
    const std::int64_t k = section_rank(bundle.model(), bundle.degree(), m);
    if (k > options.max_rank) return false;
    const NormBound Rd = NormBound(bundle.c() * m, 1).divided_by(bundle.divisor(m));
    if (Rd.value() > Real50(options.box_limit)) return false;
    // Members lie in the L2 ball of radius R + sqrt(k) around the origin.
    const double r = static_cast<double>(Rd.value()) + std::sqrt(static_cast<double>(k));
    const double half = 0.5 * static_cast<double>(k);
    const double log_members = half * std::log(std::numbers::pi) - std::lgamma(half + 1) + static_cast<double>(k) * std::log(r);
    return log_members <= std::log(options.member_limit);
}

ValuationImage valuation_image(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                               const OkounkovOptions& options) {
    switch (options.mode) {
        case ImageMode::Exact: return valuation_image_exact(bundle, m, flag, options.enumerate);
        case ImageMode::Lattice: return valuation_image_lattice(bundle, m, flag, options.lattice);
        case ImageMode::Auto: break;
    }
    if (exact_in_scope(bundle, m, options.enumerate)) return valuation_image_exact(bundle, m, flag, options.enumerate);
    return valuation_image_lattice(bundle, m, flag, options.lattice);
}

OkounkovApprox okounkov_run(const HermitianLineBundle& bundle, const Flag& flag,
                            const std::vector<std::int64_t>& m_schedule, const OkounkovOptions& options) {
    if (m_schedule.empty()) throw Error(ErrorKind::InvalidArgument, "empty m schedule");
    for (std::size_t i = 0; i < m_schedule.size(); ++i) {
        if (m_schedule[i] < 1) throw Error(ErrorKind::InvalidArgument, "schedule entries must be >= 1");
        if (i > 0 && m_schedule[i] <= m_schedule[i - 1])
            throw Error(ErrorKind::InvalidArgument, "schedule must be increasing");
    }
    OkounkovApprox out;
    out.m_schedule = m_schedule;
    const int d = bundle.model().d;
    std::set<QPoint> pts;
    std::set<QPoint> unknown;
    Rational x_lo = 0, x_hi = 0;
    bool first = true;
    for (auto m : m_schedule) {
        ValuationImage img = valuation_image(bundle, m, flag, options);
        for (auto& q : scale_points(img)) pts.insert(std::move(q));
        for (const auto& u : img.unknown) {
            QPoint q;
            for (auto x : u) q.emplace_back(Rational(x, m));
            unknown.insert(std::move(q));
        }
        const Rational lo(img.bounds.x_min, m), hi(img.bounds.upper[0], m);
        if (first || lo < x_lo) x_lo = lo;
        if (first || hi > x_hi) x_hi = hi;
        first = false;
        out.images.push_back(std::move(img));
    }
    for (const auto& u : unknown) pts.erase(u);
    out.points.assign(pts.begin(), pts.end());
    out.verified_point_count = static_cast<std::int64_t>(out.points.size());
    out.unknown_point_count = static_cast<std::int64_t>(unknown.size());
    out.polytope = convex_hull(out.points);
    out.polytope.dim = d;
    out.volume_lower = out.polytope.volume;
    const Rational a(bundle.degree());
    const Rational fibre = d == 2 ? a : a * a / 2;
    out.volume_upper = x_hi > x_lo ? (x_hi - x_lo) * fibre : Rational(0);
    return out;
}

namespace {
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}
}  // namespace

std::string hull_svg(const RationalPolytope& P, const std::optional<SvgBox>& bound_box,
                     const std::optional<SvgBox>& target) {
    if (P.dim != 2) throw Error(ErrorKind::DimensionMismatch, "SVG output draws 2D polytopes only");
    double xmin = 0, ymin = 0, xmax = 1e-9, ymax = 1e-9;
    auto extend = [&](double x, double y) {
        xmin = std::min(xmin, x);
        ymin = std::min(ymin, y);
        xmax = std::max(xmax, x);
        ymax = std::max(ymax, y);
    };
    for (const auto& v : P.vertices) extend(to_real(v[0]).convert_to<double>(), to_real(v[1]).convert_to<double>());
    for (const auto* b : {&bound_box, &target})
        if (*b) {
            extend((*b)->x0, (*b)->y0);
            extend((*b)->x1, (*b)->y1);
        }
    const double size = 400.0, margin = 40.0;
    const double sx = size / (xmax - xmin), sy = size / (ymax - ymin);
    auto X = [&](double x) { return num(margin + (x - xmin) * sx); };
    auto Y = [&](double y) { return num(margin + size - (y - ymin) * sy); };
    auto rect = [&](const SvgBox& b, const char* style) {
        return "  <rect x=\"" + X(std::min(b.x0, b.x1)) + "\" y=\"" + Y(std::max(b.y0, b.y1)) + "\" width=\"" +
               num(std::abs(b.x1 - b.x0) * sx) + "\" height=\"" + num(std::abs(b.y1 - b.y0) * sy) + "\" " + style +
               "/>\n";
    };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
    s += "  <rect x=\"0\" y=\"0\" width=\"480\" height=\"480\" fill=\"white\"/>\n";
    s += "  <line x1=\"" + X(xmin) + "\" y1=\"" + Y(0) + "\" x2=\"" + X(xmax) + "\" y2=\"" + Y(0) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "  <line x1=\"" + X(0) + "\" y1=\"" + Y(ymin) + "\" x2=\"" + X(0) + "\" y2=\"" + Y(ymax) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "  <text x=\"" + X(xmax) + "\" y=\"" + num(margin + size + 20) + "\" font-size=\"12\" text-anchor=\"end\">" +
         num(xmax) + "</text>\n";
    s += "  <text x=\"" + num(margin - 5) + "\" y=\"" + Y(ymax) + "\" font-size=\"12\" text-anchor=\"end\">" +
         num(ymax) + "</text>\n";
    if (bound_box) s += rect(*bound_box, "fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"");
    if (target) s += rect(*target, "fill=\"none\" stroke=\"firebrick\" stroke-dasharray=\"8 4\"");
    if (!P.vertices.empty()) {
        std::string pts;
        for (const auto& v : P.vertices) {
            if (!pts.empty()) pts += ' ';
            pts += X(to_real(v[0]).convert_to<double>()) + "," + Y(to_real(v[1]).convert_to<double>());
        }
        if (P.affine_dim >= 2)
            s += "  <polygon points=\"" + pts + "\" fill=\"steelblue\" fill-opacity=\"0.4\" stroke=\"navy\"/>\n";
        else
            s += "  <polyline points=\"" + pts + "\" fill=\"none\" stroke=\"navy\" stroke-width=\"2\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace arithvol
