#include "arithvol/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace arithvol;

namespace {

HermitianLineBundle make(const std::string& model, std::int64_t degree, const std::string& family, std::int64_t c_num,
                         std::int64_t c_den, const std::vector<std::pair<std::int64_t, std::int64_t>>& twists) {
    if (c_den <= 0) throw Error(ErrorKind::InvalidArgument, "c_den must be positive");
    auto b = make_bundle(make_model(parse_model_kind(model)), degree, {parse_metric_family(family), Rational(c_num, c_den)});
    std::vector<VerticalTwist> v;
    for (const auto& [p, k] : twists) v.push_back({p, k});
    return v.empty() ? b : twist(b, 0, v);
}

Flag flag_for(const HermitianLineBundle& b, std::int64_t p, std::int64_t alpha, bool at_infinity,
              const std::array<std::int64_t, 3>& line, const std::array<std::int64_t, 3>& point) {
    FlagSpec s{at_infinity, alpha, line, point};
    return make_flag(b.model(), p, s);
}

EnumerateOptions enum_opts(int threads, std::int64_t budget) {
    EnumerateOptions o;
    o.threads = threads;
    o.budget = budget;
    return o;
}

std::string js(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Arithmetic volumes, valuation images and Okounkov bodies";

    // Messages start with the error kind, e.g. "BudgetExhausted: ...".
    py::register_exception<Error>(m, "ArithvolError", PyExc_RuntimeError);

    py::class_<HermitianLineBundle>(m, "Bundle")
        .def(py::init(&make), py::arg("model") = "p1z", py::arg("degree") = 1, py::arg("family") = "canonical",
             py::arg("c_num") = 0, py::arg("c_den") = 1,
             py::arg("twists") = std::vector<std::pair<std::int64_t, std::int64_t>>{})
        .def_property_readonly("model", [](const HermitianLineBundle& b) { return to_string(b.model().kind); })
        .def_property_readonly("degree", &HermitianLineBundle::degree)
        .def_property_readonly("family", [](const HermitianLineBundle& b) { return to_string(b.family()); })
        .def_property_readonly("c", [](const HermitianLineBundle& b) { return to_string(b.c()); })
        .def_property_readonly("twists",
                               [](const HermitianLineBundle& b) {
                                   std::vector<std::pair<std::int64_t, std::int64_t>> out;
                                   for (const auto& t : b.twists()) out.emplace_back(t.p, t.k);
                                   return out;
                               })
        .def("to_json", [](const HermitianLineBundle& b) { return js(Json(b)); })
        .def_static("from_json", [](const std::string& s) { return read_as<HermitianLineBundle>(parse_json(s)); })
        .def("__add__", &add_bundles)
        .def("__eq__", [](const HermitianLineBundle& a, const HermitianLineBundle& b) { return a == b; })
        .def("__repr__", [](const HermitianLineBundle& b) { return "Bundle(" + js(Json(b)) + ")"; });

    m.def("section_rank", &basis_rank, py::arg("bundle"), py::arg("m"));
    m.def(
        "hzero_exact",
        [](const HermitianLineBundle& b, std::int64_t mm, int threads, std::int64_t budget) {
            py::gil_scoped_release release;
            return hzero_exact(b, mm, enum_opts(threads, budget));
        },
        py::arg("bundle"), py::arg("m"), py::arg("threads") = 0, py::arg("budget") = 2'000'000'000);
    m.def(
        "hzero_band",
        [](const HermitianLineBundle& b, std::int64_t mm, int threads, std::int64_t budget) {
            py::gil_scoped_release release;
            return hzero_band(b, mm, enum_opts(threads, budget));
        },
        py::arg("bundle"), py::arg("m"), py::arg("threads") = 0, py::arg("budget") = 2'000'000'000);
    m.def(
        "enumerate_effective_json",
        [](const HermitianLineBundle& b, std::int64_t mm, int threads, std::int64_t budget) {
            py::gil_scoped_release release;
            return js(Json(enumerate_effective(b, mm, enum_opts(threads, budget))));
        },
        py::arg("bundle"), py::arg("m"), py::arg("threads") = 0, py::arg("budget") = 2'000'000'000);
    m.def(
        "sup_norm",
        [](const HermitianLineBundle& b, std::int64_t mm, const std::vector<std::int64_t>& coeffs) {
            const Enclosure e = sup_norm(b, mm, coeffs);
            return std::make_pair(e.lo, e.hi);
        },
        py::arg("bundle"), py::arg("m"), py::arg("coeffs"));
    m.def(
        "nu",
        [](const HermitianLineBundle& b, std::int64_t mm, const std::vector<std::int64_t>& coeffs, std::int64_t p,
           std::int64_t alpha, bool at_infinity, const std::array<std::int64_t, 3>& line,
           const std::array<std::int64_t, 3>& point) {
            return nu(flag_for(b, p, alpha, at_infinity, line, point), b, mm, coeffs);
        },
        py::arg("bundle"), py::arg("m"), py::arg("coeffs"), py::arg("p"), py::arg("alpha") = 0,
        py::arg("at_infinity") = false, py::arg("line") = std::array<std::int64_t, 3>{0, 0, 1},
        py::arg("point") = std::array<std::int64_t, 3>{1, 0, 0});
    m.def(
        "valuation_image_json",
        [](const HermitianLineBundle& b, std::int64_t mm, std::int64_t p, std::int64_t alpha, bool at_infinity,
           const std::array<std::int64_t, 3>& line, const std::array<std::int64_t, 3>& point, const std::string& mode) {
            OkounkovOptions o;
            o.mode = parse_image_mode(mode);
            const Flag f = flag_for(b, p, alpha, at_infinity, line, point);
            py::gil_scoped_release release;
            return js(Json(valuation_image(b, mm, f, o)));
        },
        py::arg("bundle"), py::arg("m"), py::arg("p"), py::arg("alpha") = 0, py::arg("at_infinity") = false,
        py::arg("line") = std::array<std::int64_t, 3>{0, 0, 1}, py::arg("point") = std::array<std::int64_t, 3>{1, 0, 0},
        py::arg("mode") = "auto");
    m.def(
        "okounkov_run_json",
        [](const HermitianLineBundle& b, const std::vector<std::int64_t>& schedule, std::int64_t p, std::int64_t alpha,
           bool at_infinity, const std::string& mode) {
            OkounkovOptions o;
            o.mode = parse_image_mode(mode);
            const Flag f = flag_for(b, p, alpha, at_infinity, {0, 0, 1}, {1, 0, 0});
            py::gil_scoped_release release;
            auto run = okounkov_run(b, f, schedule, o);
            run.images.clear();
            return js(Json(run));
        },
        py::arg("bundle"), py::arg("schedule"), py::arg("p"), py::arg("alpha") = 0, py::arg("at_infinity") = false,
        py::arg("mode") = "auto");
    m.def(
        "convex_hull_json",
        [](const std::vector<std::vector<std::string>>& points) {
            std::vector<QPoint> pts;
            for (const auto& p : points) {
                QPoint q;
                for (const auto& x : p) q.push_back(parse_rational(x));
                pts.push_back(std::move(q));
            }
            return js(Json(convex_hull(pts)));
        },
        py::arg("points"));
    m.def(
        "hull_svg",
        [](const std::string& polytope_json) { return hull_svg(read_as<RationalPolytope>(parse_json(polytope_json))); },
        py::arg("polytope_json"));
    m.def(
        "intersection_number",
        [](const std::vector<HermitianLineBundle>& bundles, const std::string& method, double tolerance) {
            if (bundles.empty()) throw Error(ErrorKind::InvalidArgument, "no bundles");
            IntersectionForm form{bundles[0].model(), parse_intersection_method(method), tolerance};
            const auto v = intersection_number(form, bundles);
            return std::make_pair(v.value, v.error);
        },
        py::arg("bundles"), py::arg("method") = "closed-form", py::arg("tolerance") = 1e-10);
    m.def("volume_closed_form", &volume_closed_form, py::arg("bundle"));
    m.def("comparison_constant", &comparison_constant, py::arg("bundle"), py::arg("reference"));
    m.def(
        "corollary_checks_json",
        [](const HermitianLineBundle& a, const HermitianLineBundle& b) { return js(Json(corollary_checks(a, b))); },
        py::arg("b1"), py::arg("b2"));
    m.def(
        "run_theorem_a",
        [](const std::string& config_json) {
            const auto cfg = read_as<ExperimentConfig>(parse_json(config_json));
            py::gil_scoped_release release;
            const auto rep = run_theorem_a(cfg);
            return std::make_pair(theorem_a_csv(rep), js(Json(rep)));
        },
        py::arg("config_json"));
    m.def(
        "verify_rescaling_json",
        [](const HermitianLineBundle& b, std::int64_t mm, const std::vector<std::pair<std::string, std::int64_t>>& alphas) {
            std::vector<LogShift> v;
            for (const auto& [q, n] : alphas) v.push_back({parse_rational(q), n});
            return js(Json(verify_rescaling(b, mm, v)));
        },
        py::arg("bundle"), py::arg("m"), py::arg("alphas"));
    m.def(
        "verify_reduction_json",
        [](const HermitianLineBundle& b, std::int64_t mm, std::int64_t n) { return js(Json(verify_reduction(b, mm, n))); },
        py::arg("bundle"), py::arg("m"), py::arg("n"));
    m.def(
        "verify_compatibility_json",
        [](const HermitianLineBundle& b, std::int64_t mm, std::int64_t p, std::int64_t alpha) {
            return js(Json(verify_compatibility(b, mm, flag_for(b, p, alpha, false, {0, 0, 1}, {1, 0, 0}))));
        },
        py::arg("bundle"), py::arg("m"), py::arg("p"), py::arg("alpha") = 0);
    m.def(
        "verify_fujita_json",
        [](const HermitianLineBundle& b, std::int64_t p, std::int64_t alpha, const std::vector<std::int64_t>& n_list,
           std::int64_t k_max) {
            return js(Json(verify_fujita_finite(b, flag_for(b, p, alpha, false, {0, 0, 1}, {1, 0, 0}), n_list, k_max)));
        },
        py::arg("bundle"), py::arg("p"), py::arg("alpha"), py::arg("n_list"), py::arg("k_max"));
}
