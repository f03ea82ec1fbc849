// Command-line front end. Exit codes: 0 success, 2 invalid arguments or
// configuration, 3 budget exhausted or undecidable within budget, 4 a
// theorem gate failed.

#include "arithvol/error.hpp"
#include "arithvol/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using namespace arithvol;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitGate = 4;

struct BundleOpts {
    std::string model = "p1z";
    std::int64_t degree = 1;
    std::string metric = "canonical";
    std::int64_t c_num = 0;
    std::int64_t c_den = 1;
    std::vector<std::string> twists;  // "p:k"

    HermitianLineBundle build() const {
        if (c_den <= 0) throw Error(ErrorKind::InvalidArgument, "--c-den must be positive");
        const auto m = make_model(parse_model_kind(model));
        auto b = make_bundle(m, degree, {parse_metric_family(metric), Rational(c_num, c_den)});
        std::vector<VerticalTwist> v;
        for (const auto& t : twists) {
            const auto colon = t.find(':');
            if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "twist must be p:k, got " + t);
            try {
                v.push_back({std::stoll(t.substr(0, colon)), std::stoll(t.substr(colon + 1))});
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::InvalidArgument, "twist must be p:k, got " + t);
            }
        }
        return v.empty() ? b : twist(b, 0, v);
    }
};

void add_bundle_options(CLI::App* app, BundleOpts& o, const std::string& suffix = "") {
    app->add_option("--model" + suffix, o.model, "p1z or p2z")->capture_default_str();
    app->add_option("--degree" + suffix, o.degree, "degree a of O(a)")->capture_default_str();
    app->add_option("--metric" + suffix, o.metric, "canonical or fubini-study")->capture_default_str();
    app->add_option("--c-num" + suffix, o.c_num, "numerator of the constant twist c")->capture_default_str();
    app->add_option("--c-den" + suffix, o.c_den, "denominator of c")->capture_default_str();
    app->add_option("--twist" + suffix, o.twists, "vertical twist p:k (repeatable)");
}

struct FlagOpts {
    std::int64_t p = 2;
    std::int64_t alpha = 0;
    bool infinity = false;
    std::vector<std::int64_t> line{0, 0, 1};
    std::vector<std::int64_t> point{1, 0, 0};

    Flag build(const ArithmeticModel& model) const {
        FlagSpec s;
        s.at_infinity = infinity;
        s.alpha = alpha;
        std::copy(line.begin(), line.end(), s.line.begin());
        std::copy(point.begin(), point.end(), s.point.begin());
        return make_flag(model, p, s);
    }
};

void add_flag_options(CLI::App* app, FlagOpts& o) {
    app->add_option("--p", o.p, "residue characteristic of the flag")->capture_default_str();
    app->add_option("--alpha", o.alpha, "P1Z flag point [1:alpha]")->capture_default_str();
    app->add_flag("--infinity", o.infinity, "P1Z flag point at infinity");
    app->add_option("--line", o.line, "P2Z line l0,l1,l2")->expected(3)->delimiter(',');
    app->add_option("--point", o.point, "P2Z point on the line")->expected(3)->delimiter(',');
}

struct Common {
    std::string out;
    int threads = 0;
    std::int64_t budget = 2'000'000'000;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "write the result here instead of stdout");
    app->add_option("--threads", c.threads, "worker threads (default: ARITHVOL_THREADS or 1)");
    app->add_option("--budget", c.budget, "enumeration node budget")->capture_default_str();
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty())
        std::cout << text;
    else
        write_text_file(c.out, text);
}

EnumerateOptions enumerate_options(const Common& c) {
    EnumerateOptions o;
    o.threads = c.threads;
    o.budget = c.budget;
    return o;
}

std::vector<LogShift> parse_shifts(const std::vector<std::string>& items) {
    std::vector<LogShift> out;
    for (const auto& s : items) {
        const auto colon = s.find(':');
        LogShift a;
        a.q = parse_rational(s.substr(0, colon));
        if (colon != std::string::npos) {
            try {
                a.n = std::stoll(s.substr(colon + 1));
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::InvalidArgument, "alpha must be q or q:n, got " + s);
            }
        }
        out.push_back(a);
    }
    return out;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::BudgetExhausted:
        case ErrorKind::AmbiguousBoundary:
        case ErrorKind::QuadratureNotConverged: return kExitBudget;
        default: return kExitInvalid;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic volumes, valuation images and Okounkov bodies"};
    app.require_subcommand(1);

    // hzero
    BundleOpts hz_b;
    Common hz_c;
    std::int64_t hz_m = 1;
    auto* hz = app.add_subcommand("hzero", "log-count of effective sections (exact or band)");
    add_bundle_options(hz, hz_b);
    add_common(hz, hz_c);
    hz->add_option("--m", hz_m, "power m")->capture_default_str();

    // sections
    BundleOpts se_b;
    Common se_c;
    std::int64_t se_m = 1;
    auto* se = app.add_subcommand("sections", "enumerate effective sections as JSON");
    add_bundle_options(se, se_b);
    add_common(se, se_c);
    se->add_option("--m", se_m, "power m")->capture_default_str();

    // valimage
    BundleOpts vi_b;
    FlagOpts vi_f;
    Common vi_c;
    std::int64_t vi_m = 1;
    std::string vi_mode = "auto";
    auto* vi = app.add_subcommand("valimage", "valuation image v(mL) as JSON");
    add_bundle_options(vi, vi_b);
    add_flag_options(vi, vi_f);
    add_common(vi, vi_c);
    vi->add_option("--m", vi_m, "power m")->capture_default_str();
    vi->add_option("--mode", vi_mode, "auto, exact or lattice")->capture_default_str();

    // okounkov
    BundleOpts ok_b;
    FlagOpts ok_f;
    Common ok_c;
    std::vector<std::int64_t> ok_schedule{1};
    std::string ok_mode = "auto";
    bool ok_images = false;
    std::string ok_svg;
    auto* ok = app.add_subcommand("okounkov", "Okounkov body approximation as JSON");
    add_bundle_options(ok, ok_b);
    add_flag_options(ok, ok_f);
    add_common(ok, ok_c);
    ok->add_option("--schedule", ok_schedule, "increasing m values, comma separated")->delimiter(',');
    ok->add_option("--mode", ok_mode, "auto, exact or lattice")->capture_default_str();
    ok->add_flag("--with-images", ok_images, "include the per-m valuation images");
    ok->add_option("--svg", ok_svg, "also write the hull as SVG");

    // intersect
    BundleOpts in_b1, in_b2;
    Common in_c;
    std::string in_method = "closed-form";
    double in_tol = 1e-10;
    auto* in = app.add_subcommand("intersect", "intersection numbers, volume and corollary checks");
    add_bundle_options(in, in_b1);
    in->add_option("--degree2", in_b2.degree, "second bundle degree");
    in->add_option("--metric2", in_b2.metric, "second bundle metric");
    in->add_option("--c-num2", in_b2.c_num, "second bundle c numerator");
    in->add_option("--c-den2", in_b2.c_den, "second bundle c denominator");
    in->add_option("--twist2", in_b2.twists, "second bundle vertical twist p:k");
    in->add_option("--method", in_method, "closed-form or quadrature")->capture_default_str();
    in->add_option("--tolerance", in_tol, "quadrature tolerance")->capture_default_str();
    add_common(in, in_c);

    // theorem-a
    std::string ta_config, ta_json, ta_svg_dir;
    Common ta_c;
    auto* ta = app.add_subcommand("theorem-a", "volume limit table as CSV");
    ta->add_option("--config", ta_config, "experiment config JSON")->required();
    ta->add_option("--json", ta_json, "also write the report JSON here");
    ta->add_option("--svg-dir", ta_svg_dir, "write one SVG per hull into this directory");
    ta->add_option("--out", ta_c.out, "write the CSV here instead of stdout");
    ta->add_option("--threads", ta_c.threads, "worker threads");

    // theorem-b
    std::string tb_config;
    Common tb_c;
    auto* tb = app.add_subcommand("theorem-b", "Brunn-Minkowski checks for two bundles as JSON");
    tb->add_option("--config", tb_config, "experiment config JSON with bundle2")->required();
    tb->add_option("--out", tb_c.out, "write the JSON here instead of stdout");
    tb->add_option("--threads", tb_c.threads, "worker threads");

    // verify
    auto* ve = app.add_subcommand("verify", "lemma and inequality checks");
    ve->require_subcommand(1);
    BundleOpts vr_b;
    Common vr_c;
    std::int64_t vr_m = 1;
    std::vector<std::string> vr_alpha{"0"};
    auto* vr = ve->add_subcommand("rescaling", "h0(L) - h0(L(-alpha)) bounds");
    add_bundle_options(vr, vr_b);
    add_common(vr, vr_c);
    vr->add_option("--m", vr_m, "power m")->capture_default_str();
    vr->add_option("--alpha", vr_alpha, "shift q or q:n meaning q + log n (repeatable)");

    BundleOpts vd_b;
    Common vd_c;
    std::int64_t vd_m = 1, vd_n = 2;
    auto* vd = ve->add_subcommand("reduction", "reduction-mod-n cardinality bounds");
    add_bundle_options(vd, vd_b);
    add_common(vd, vd_c);
    vd->add_option("--m", vd_m, "power m")->capture_default_str();
    vd->add_option("--n", vd_n, "modulus n >= 2")->capture_default_str();

    BundleOpts vc_b;
    FlagOpts vc_f;
    Common vc_c;
    std::int64_t vc_m = 1;
    auto* vc = ve->add_subcommand("compatibility", "image count against restricted counts");
    add_bundle_options(vc, vc_b);
    add_flag_options(vc, vc_f);
    add_common(vc, vc_c);
    vc->add_option("--m", vc_m, "power m")->capture_default_str();

    BundleOpts vf_b;
    FlagOpts vf_f;
    Common vf_c;
    std::vector<std::int64_t> vf_n{1};
    std::int64_t vf_k = 4;
    bool vf_gate = false;
    auto* vf = ve->add_subcommand("fujita", "finite table of #v(V_{k,n}) / (nk)^d");
    add_bundle_options(vf, vf_b);
    add_flag_options(vf, vf_f);
    add_common(vf, vf_c);
    vf->add_option("--n", vf_n, "values of n, comma separated")->delimiter(',');
    vf->add_option("--k-max", vf_k, "largest k")->capture_default_str();
    vf->add_flag("--gate-monotone", vf_gate, "exit 4 unless the ratio is nondecreasing in k");

    Common vs_c;
    std::uint64_t vs_seed = 0;
    int vs_pairs = 100;
    std::string vs_suite = "inequalities";
    auto* vs = ve->add_subcommand("sweep", "seeded inequality, Hodge-index or quadrature sweep");
    vs->add_option("--suite", vs_suite, "inequalities, hodge or quadrature")->capture_default_str();
    vs->add_option("--seed", vs_seed, "random seed")->capture_default_str();
    vs->add_option("--pairs", vs_pairs, "number of pairs")->capture_default_str();
    vs->add_option("--out", vs_c.out, "write the JSON here instead of stdout");

    // emit-svg
    std::string sv_in;
    std::vector<double> sv_box, sv_target;
    Common sv_c;
    auto* sv = app.add_subcommand("emit-svg", "draw a 2D polytope or Okounkov run JSON as SVG");
    sv->add_option("--input", sv_in, "polytope or okounkov JSON")->required();
    sv->add_option("--bound-box", sv_box, "x0,y0,x1,y1")->expected(4)->delimiter(',');
    sv->add_option("--target", sv_target, "x0,y0,x1,y1")->expected(4)->delimiter(',');
    sv->add_option("--out", sv_c.out, "write the SVG here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*hz) {
            if (hz_m < 1) throw Error(ErrorKind::InvalidArgument, "--m must be >= 1");
            const auto b = hz_b.build();
            const auto opts = enumerate_options(hz_c);
            std::string line = std::to_string(hz_m) + "," + std::to_string(basis_rank(b, hz_m)) + ",";
            try {
                const auto set = enumerate_effective(b, hz_m, opts);
                if (set.ambiguous_count > 0) throw Error(ErrorKind::AmbiguousBoundary, "undecided sections");
                const double h = std::log(static_cast<double>(set.members.size()));
                line += std::to_string(set.members.size()) + ",exact," + format_real(h) + "," + format_real(h);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ScopeExceeded && e.kind() != ErrorKind::BudgetExhausted &&
                    e.kind() != ErrorKind::AmbiguousBoundary)
                    throw;
                const auto band = hzero_band(b, hz_m, opts);
                line += ",band," + format_real(band.first) + "," + format_real(band.second);
            }
            emit(hz_c, "m,rank,count,method,hzero_lower,hzero_upper\n" + line + "\n");
        } else if (*se) {
            if (se_m < 1) throw Error(ErrorKind::InvalidArgument, "--m must be >= 1");
            emit(se_c, dump(Json(enumerate_effective(se_b.build(), se_m, enumerate_options(se_c)))));
        } else if (*vi) {
            const auto b = vi_b.build();
            OkounkovOptions o;
            o.mode = parse_image_mode(vi_mode);
            o.enumerate = enumerate_options(vi_c);
            if (vi_m < 1) throw Error(ErrorKind::InvalidArgument, "--m must be >= 1");
            emit(vi_c, dump(Json(valuation_image(b, vi_m, vi_f.build(b.model()), o))));
        } else if (*ok) {
            const auto b = ok_b.build();
            OkounkovOptions o;
            o.mode = parse_image_mode(ok_mode);
            o.enumerate = enumerate_options(ok_c);
            auto run = okounkov_run(b, ok_f.build(b.model()), ok_schedule, o);
            if (!ok_images) run.images.clear();
            if (!ok_svg.empty()) write_text_file(ok_svg, hull_svg(run.polytope));
            emit(ok_c, dump(Json(run)));
        } else if (*in) {
            const auto b1 = in_b1.build();
            BundleOpts o2 = in_b2;
            o2.model = in_b1.model;
            const bool has_second = in->count("--degree2") + in->count("--metric2") + in->count("--c-num2") +
                                        in->count("--c-den2") + in->count("--twist2") >
                                    0;
            const auto b2 = has_second ? o2.build() : b1;
            IntersectionForm form{b1.model(), parse_intersection_method(in_method), in_tol};
            const int d = b1.model().d;
            Json powers = Json::array();
            for (int k = d; k >= 0; --k) {
                std::vector<HermitianLineBundle> slots(d, b2);
                for (int i = 0; i < k; ++i) slots[i] = b1;
                powers.push_back({{"l1_power", k}, {"l2_power", d - k}, {"value", intersection_number(form, slots)}});
            }
            Json j{{"bundle1", b1}, {"bundle2", b2}, {"intersections", powers}};
            j["volume1"] = in_ample_catalog(b1) ? Json(volume_closed_form(b1)) : Json(nullptr);
            j["volume2"] = in_ample_catalog(b2) ? Json(volume_closed_form(b2)) : Json(nullptr);
            bool gate_ok = true;
            if (in_ample_catalog(b1) && in_ample_catalog(b2)) {
                const auto rep = corollary_checks(b1, b2);
                j["corollary"] = rep;
                j["comparison_constant"] = comparison_constant(b1, b2);
                gate_ok = rep.all_hold;
            }
            emit(in_c, dump(j));
            if (!gate_ok) return kExitGate;
        } else if (*ta) {
            auto cfg = read_as<ExperimentConfig>(parse_json(read_text_file(ta_config)));
            if (ta->count("--threads")) cfg.enumerate.threads = ta_c.threads;
            const auto rep = run_theorem_a(cfg);
            emit(ta_c, theorem_a_csv(rep));
            if (!ta_json.empty()) write_text_file(ta_json, dump(Json(rep)));
            if (!ta_svg_dir.empty()) std::filesystem::create_directories(ta_svg_dir);
            if (!ta_svg_dir.empty())
                for (std::size_t i = 0; i < rep.rows.size(); ++i) {
                    const auto& r = rep.rows[i];
                    if (rep.hulls[i].dim != 2) continue;
                    // Rectangle of area target / log p with the fibre degree as height.
                    const double a = static_cast<double>(rep.bundle.degree());
                    const SvgBox target{0, 0, r.target / (std::log(static_cast<double>(r.p)) * a), a};
                    write_text_file(ta_svg_dir + "/hull_p" + std::to_string(r.p) + "_m" + std::to_string(r.m) + ".svg",
                                    hull_svg(rep.hulls[i], std::nullopt, target));
                }
            const auto& s = rep.summary;
            if (!self_consistent(rep) || !s.within_discretization || !s.matches_oracle || !s.within_envelope ||
                !s.count_within_envelope)
                return kExitGate;
        } else if (*tb) {
            auto cfg = read_as<ExperimentConfig>(parse_json(read_text_file(tb_config)));
            validate(cfg);
            if (!cfg.bundle2) throw Error(ErrorKind::InvalidArgument, "theorem-b needs bundle2 in the config");
            if (tb->count("--threads")) cfg.enumerate.threads = tb_c.threads;
            OkounkovOptions o{cfg.mode, cfg.enumerate, cfg.lattice};
            const auto rep = run_theorem_b(cfg.bundle, *cfg.bundle2, make_flag(cfg.bundle.model(), cfg.primes.front(), cfg.flag),
                                           cfg.m_schedule.back(), o);
            emit(tb_c, dump(Json(rep)));
            if (!rep.inclusion_holds || !rep.hull_check.holds || (rep.closed_form_available && !rep.closed_form.holds))
                return kExitGate;
        } else if (*vr) {
            const auto rep = verify_rescaling(vr_b.build(), vr_m, parse_shifts(vr_alpha), enumerate_options(vr_c));
            emit(vr_c, dump(Json(rep)));
            if (!rep.all_hold) return kExitGate;
        } else if (*vd) {
            const auto rep = verify_reduction(vd_b.build(), vd_m, vd_n, enumerate_options(vd_c));
            emit(vd_c, dump(Json(rep)));
            if (!rep.upper_holds || !rep.lower_holds) return kExitGate;
        } else if (*vc) {
            const auto b = vc_b.build();
            const auto rep = verify_compatibility(b, vc_m, vc_f.build(b.model()), enumerate_options(vc_c));
            emit(vc_c, dump(Json(rep)));
            if (!rep.holds) return kExitGate;
        } else if (*vf) {
            const auto b = vf_b.build();
            const auto rep = verify_fujita_finite(b, vf_f.build(b.model()), vf_n, vf_k, enumerate_options(vf_c));
            emit(vf_c, dump(Json(rep)));
            for (const auto& r : rep.rows)
                if (!r.inclusion_holds) return kExitGate;
            if (vf_gate && !rep.ratio_nondecreasing) return kExitGate;
        } else if (*vs) {
            if (vs_pairs < 1) throw Error(ErrorKind::InvalidArgument, "--pairs must be >= 1");
            SuiteReport rep;
            if (vs_suite == "inequalities")
                rep = inequality_sweep(vs_seed, vs_pairs);
            else if (vs_suite == "hodge")
                rep = hodge_sweep(vs_seed, vs_pairs);
            else if (vs_suite == "quadrature")
                rep = quadrature_crosscheck(vs_seed, vs_pairs);
            else
                throw Error(ErrorKind::InvalidArgument, "unknown suite '" + vs_suite + "'");
            emit(vs_c, dump(Json(rep)));
            if (rep.failures > 0) return kExitGate;
        } else if (*sv) {
            const Json j = parse_json(read_text_file(sv_in));
            const auto P = j.contains("polytope") ? read_as<RationalPolytope>(j.at("polytope")) : read_as<RationalPolytope>(j);
            std::optional<SvgBox> box, target;
            if (sv_box.size() == 4) box = SvgBox{sv_box[0], sv_box[1], sv_box[2], sv_box[3]};
            if (sv_target.size() == 4) target = SvgBox{sv_target[0], sv_target[1], sv_target[2], sv_target[3]};
            emit(sv_c, hull_svg(P, box, target));
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
