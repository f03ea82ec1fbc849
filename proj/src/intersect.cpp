#include "arithvol/intersect.hpp"
#include "arithvol/error.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace arithvol {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();
constexpr int kMaxLevel = 12;

using GL = boost::math::quadrature::gauss<double, 20>;

// log ||X1|| at |t| = r for O(1) with the given family.
double log_norm_x1(MetricFamily f, double log_r, double log1p_r2_half) {
    if (f == MetricFamily::Canonical) return std::min(log_r, 0.0);
    return log_r - log1p_r2_half;
}

// Composite rule on [a, b] with `panels` equal panels.
double composite(const std::function<double(double)>& g, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = 0.0;
    for (int i = 0; i < panels; ++i) s += GL::integrate(g, a + i * h, a + (i + 1) * h);
    return s;
}

// Panels on [a, b] graded geometrically toward a: [a, a + w 2^-depth], then
// doubling widths up to b.
double graded(const std::function<double(double)>& g, double a, double b, int depth) {
    const double w = b - a;
    double s = GL::integrate(g, a, a + std::ldexp(w, -depth));
    for (int j = depth; j > 0; --j) s += GL::integrate(g, a + std::ldexp(w, -j), a + std::ldexp(w, -j + 1));
    return s;
}

// Integral of log ||X1||_f2 against the curvature measure of O(1)_f1, at
// refinement level L.
double pairing_quadrature(MetricFamily f2, MetricFamily f1, int L) {
    const int theta_panels = 1 << std::min(L, 3);
    if (f1 == MetricFamily::Canonical) {
        // Haar measure on |t| = 1.
        auto g = [&](double) { return log_norm_x1(f2, 0.0, 0.5 * std::log(2.0)); };
        return composite(g, 0.0, 2 * kPi, theta_panels) / (2 * kPi);
    }
    // Fubini-Study measure with |t| = tan(phi): (1/pi) sin cos dphi dtheta.
    auto radial = [&](double phi) {
        const double s = std::sin(phi), c = std::cos(phi);
        const double log_r = std::log(s) - std::log(c);
        return s * c * log_norm_x1(f2, log_r, -std::log(c));
    };
    const double quarter = kPi / 4;
    const double inner = graded(radial, 0.0, quarter, 12 * L) + composite(radial, quarter, 2 * quarter, 1 << L);
    auto angular = [&](double) { return inner; };
    return composite(angular, 0.0, 2 * kPi, theta_panels) / kPi;
}

double pairing_closed(MetricFamily f2, MetricFamily f1) {
    const bool fs2 = f2 == MetricFamily::FubiniStudy, fs1 = f1 == MetricFamily::FubiniStudy;
    if (!fs1 && !fs2) return 0.0;
    if (fs1 && fs2) return -0.5;
    return -0.5 * std::log(2.0);
}

// Integral over the torus |t1| = |t2| = 1 of log ||X2||_can, which is the
// P2Z correction term for three canonical bundles.
double torus_term_quadrature(int L) {
    const int panels = 1 << std::min(L, 3);
    auto inner = [&](double) {
        auto g = [](double) { return 0.0; };  // |t2| / max(1, |t1|, |t2|) = 1 on the torus
        return composite(g, 0.0, 2 * kPi, panels) / (2 * kPi);
    };
    return composite(inner, 0.0, 2 * kPi, panels) / (2 * kPi);
}

double c_of(const HermitianLineBundle& b) { return b.c_total().convert_to<double>(); }

IntersectionValue p1_value(const IntersectionForm& form, const HermitianLineBundle& b1, const HermitianLineBundle& b2) {
    const double a1 = static_cast<double>(b1.degree()), a2 = static_cast<double>(b2.degree());
    const double linear = a2 * c_of(b1) + a1 * c_of(b2);
    IntersectionValue v;
    v.method = form.method;
    if (form.method == IntersectionMethod::ClosedForm) {
        v.value = linear - a1 * a2 * pairing_closed(b2.family(), b1.family());
        v.error = 4e-16 * (std::abs(linear) + a1 * a2 + 1.0);
        return v;
    }
    double prev = pairing_quadrature(b2.family(), b1.family(), 1);
    for (int L = 2; L <= kMaxLevel; ++L) {
        const double cur = pairing_quadrature(b2.family(), b1.family(), L);
        const double diff = std::abs(cur - prev);
        if (diff < form.tolerance / 2) {
            v.value = linear - a1 * a2 * cur;
            v.error = a1 * a2 * diff + 4e-16 * (std::abs(linear) + 1.0);
            return v;
        }
        prev = cur;
    }
    throw Error(ErrorKind::QuadratureNotConverged, "pairing integral did not reach the tolerance");
}

IntersectionValue p2_value(const IntersectionForm& form, const std::vector<HermitianLineBundle>& b) {
    for (const auto& x : b)
        if (x.family() != MetricFamily::Canonical)
            throw Error(ErrorKind::UnsupportedCombination, "P2Z supports the canonical family only");
    const double a[3] = {static_cast<double>(b[0].degree()), static_cast<double>(b[1].degree()),
                         static_cast<double>(b[2].degree())};
    const double linear = c_of(b[0]) * a[1] * a[2] + c_of(b[1]) * a[0] * a[2] + c_of(b[2]) * a[0] * a[1];
    const double prod = a[0] * a[1] * a[2];
    IntersectionValue v;
    v.method = form.method;
    if (form.method == IntersectionMethod::ClosedForm) {
        v.value = linear;
        v.error = 4e-16 * (std::abs(linear) + 1.0);
        return v;
    }
    // O(1)_can^3 = O(1)_can^2 on the line {X2 = 0} minus the torus term.
    auto top = [&](int L) {
        return pairing_quadrature(MetricFamily::Canonical, MetricFamily::Canonical, L) * -1.0 - torus_term_quadrature(L);
    };
    double prev = top(1);
    for (int L = 2; L <= kMaxLevel; ++L) {
        const double cur = top(L);
        const double diff = std::abs(cur - prev);
        if (diff < form.tolerance / 2) {
            v.value = linear + prod * cur;
            v.error = prod * diff + 4e-16 * (std::abs(linear) + 1.0);
            return v;
        }
        prev = cur;
    }
    throw Error(ErrorKind::QuadratureNotConverged, "torus integral did not reach the tolerance");
}

}  // namespace

IntersectionValue intersection_number(const IntersectionForm& form, const std::vector<HermitianLineBundle>& bundles) {
    if (!(form.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
    const int d = form.model.d;
    if (static_cast<int>(bundles.size()) != d)
        throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(d) + " bundles");
    for (const auto& b : bundles)
        if (!(b.model() == form.model)) throw Error(ErrorKind::ModelMismatch, "bundle lives on another model");
    if (form.model.kind == ModelKind::P1Z) return p1_value(form, bundles[0], bundles[1]);
    return p2_value(form, bundles);
}

double intersect(const std::vector<HermitianLineBundle>& bundles) {
    if (bundles.empty()) throw Error(ErrorKind::InvalidArgument, "no bundles");
    IntersectionForm form;
    form.model = bundles[0].model();
    return intersection_number(form, bundles).value;
}

bool in_ample_catalog(const HermitianLineBundle& bundle) {
    if (bundle.degree() < 1) return false;
    const Real50 c = bundle.c_total();
    return bundle.family() == MetricFamily::Canonical ? c > 0 : c >= 0;
}

double volume_closed_form(const HermitianLineBundle& bundle) {
    if (!in_ample_catalog(bundle))
        throw Error(ErrorKind::NotAmpleInCatalog, "bundle is outside the declared ample catalog");
    return intersect(std::vector<HermitianLineBundle>(bundle.model().d, bundle));
}

double geometric_volume(const HermitianLineBundle& bundle) {
    const double a = static_cast<double>(bundle.degree());
    return bundle.model().kind == ModelKind::P1Z ? a : a * a;
}

double comparison_constant(const HermitianLineBundle& bundle, const HermitianLineBundle& reference_ample) {
    if (!(bundle.model() == reference_ample.model()))
        throw Error(ErrorKind::ModelMismatch, "bundles live on different models");
    if (!in_ample_catalog(reference_ample))
        throw Error(ErrorKind::NotAmpleInCatalog, "reference bundle is outside the ample catalog");
    const int d = bundle.model().d;
    std::vector<HermitianLineBundle> slots(d, reference_ample);
    slots[0] = bundle;
    const double mixed = intersect(slots);
    const double e0 = bundle.model().e0;
    const double fact = d == 2 ? 1.0 : 2.0;
    return 2.0 * e0 * (geometric_volume(bundle) / geometric_volume(reference_ample)) * mixed / fact;
}

CorollaryReport corollary_checks(const HermitianLineBundle& b1, const HermitianLineBundle& b2, double tolerance) {
    if (!(b1.model() == b2.model())) throw Error(ErrorKind::ModelMismatch, "bundles live on different models");
    if (!in_ample_catalog(b1) || !in_ample_catalog(b2))
        throw Error(ErrorKind::NotAmpleInCatalog, "corollary checks need ample-catalog bundles");
    CorollaryReport r;
    r.d = b1.model().d;
    const int d = r.d;
    auto power = [&](int k) {
        std::vector<HermitianLineBundle> s(d, b2);
        for (int i = 0; i < k; ++i) s[i] = b1;
        return intersect(s);
    };
    r.l1_top = power(d);
    r.l2_top = power(0);
    r.mixed = power(d - 1);
    r.mixed2 = power(d - 2);
    r.lambda = r.mixed / r.l1_top;
    r.hodge_value = r.mixed2 - 2 * r.lambda * r.mixed + r.lambda * r.lambda * r.l1_top;

    auto add = [&](std::string name, double lhs, double rhs) {
        InequalityCheck c{std::move(name), lhs, rhs, lhs - rhs, false};
        c.holds = c.slack >= -tolerance * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        r.checks.push_back(std::move(c));
    };
    add("mixed_lower_bound", r.mixed,
        std::pow(r.l1_top, static_cast<double>(d - 1) / d) * std::pow(r.l2_top, 1.0 / d));
    add("mixed_squared", r.mixed * r.mixed, r.l1_top * r.mixed2);
    add("volume_bound", std::pow(r.mixed, d) / std::pow(r.l1_top, d - 1), r.l2_top);
    add("hodge_index_sign", 0.0, r.hodge_value);
    r.all_hold = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.holds; });
    return r;
}

std::string to_string(IntersectionMethod method) {
    return method == IntersectionMethod::ClosedForm ? "closed-form" : "quadrature";
}

IntersectionMethod parse_intersection_method(const std::string& text) {
    if (text == "closed-form" || text == "closed") return IntersectionMethod::ClosedForm;
    if (text == "quadrature") return IntersectionMethod::Quadrature;
    throw Error(ErrorKind::InvalidArgument, "unknown intersection method '" + text + "'");
}

}  // namespace arithvol
