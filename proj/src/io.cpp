#include "arithvol/io.hpp"

#include <fstream>
#include <sstream>

namespace arithvol {

namespace {

Json rat(const Rational& q) { return to_string(q); }

Rational rat_of(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    return parse_rational(j.get<std::string>());
}

Json rat_point(const QPoint& p) {
    Json a = Json::array();
    for (const auto& x : p) a.push_back(rat(x));
    return a;
}

QPoint rat_point_of(const Json& j) {
    QPoint p;
    for (const auto& x : j) p.push_back(rat_of(x));
    return p;
}

Json rat_points(const std::vector<QPoint>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(rat_point(p));
    return a;
}

std::vector<QPoint> rat_points_of(const Json& j) {
    std::vector<QPoint> out;
    for (const auto& p : j) out.push_back(rat_point_of(p));
    return out;
}

template <class T>
void opt_get(const Json& j, const char* key, T& out) {
    if (j.contains(key)) j.at(key).get_to(out);
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const char* what) {
    for (const auto& [k, v] : j.items()) {
        bool known = false;
        for (const char* x : keys) known = known || k == x;
        if (!known) throw Error(ErrorKind::InvalidArgument, std::string("unknown key '") + k + "' in " + what);
    }
}

}  // namespace

void to_json(Json& j, const HermitianLineBundle& b) {
    Json tw = Json::array();
    for (const auto& t : b.twists()) tw.push_back({{"p", t.p}, {"k", t.k}});
    j = Json{{"model", to_string(b.model().kind)},
             {"degree", b.degree()},
             {"family", to_string(b.family())},
             {"c_num", to_int64(boost::multiprecision::numerator(b.c()))},
             {"c_den", to_int64(boost::multiprecision::denominator(b.c()))},
             {"twists", tw}};
}

void from_json(const Json& j, HermitianLineBundle& b) {
    reject_unknown(j, {"model", "degree", "family", "c_num", "c_den", "twists"}, "bundle");
    const auto model = make_model(parse_model_kind(j.at("model").get<std::string>()));
    const auto den = j.value("c_den", std::int64_t{1});
    if (den <= 0) throw Error(ErrorKind::InvalidArgument, "c_den must be positive");
    const MetricSpec metric{parse_metric_family(j.value("family", std::string("canonical"))),
                            Rational(j.value("c_num", std::int64_t{0}), den)};
    b = make_bundle(model, j.at("degree").get<std::int64_t>(), metric);
    if (j.contains("twists")) {
        std::vector<VerticalTwist> v;
        for (const auto& t : j.at("twists")) v.push_back({t.at("p").get<std::int64_t>(), t.at("k").get<std::int64_t>()});
        if (!v.empty()) b = twist(b, 0, v);
    }
}

void to_json(Json& j, const Flag& f) {
    j = Json{{"model", to_string(f.model.kind)}, {"p", f.p}};
    if (f.model.kind == ModelKind::P1Z) {
        j["at_infinity"] = f.at_infinity;
        j["alpha"] = f.alpha;
    } else {
        j["line"] = f.line;
        j["point"] = f.point;
    }
}

void from_json(const Json& j, Flag& f) {
    const auto kind = parse_model_kind(j.at("model").get<std::string>());
    const auto p = j.at("p").get<std::int64_t>();
    if (kind == ModelKind::P1Z) {
        f = j.value("at_infinity", false) ? make_flag_p1_infinity(p) : make_flag_p1(p, j.value("alpha", std::int64_t{0}));
    } else {
        f = make_flag_p2(p, j.at("line").get<std::array<std::int64_t, 3>>(),
                         j.at("point").get<std::array<std::int64_t, 3>>());
    }
}

void to_json(Json& j, const FlagSpec& f) {
    j = Json{{"at_infinity", f.at_infinity}, {"alpha", f.alpha}, {"line", f.line}, {"point", f.point}};
}

void from_json(const Json& j, FlagSpec& f) {
    reject_unknown(j, {"at_infinity", "alpha", "line", "point"}, "flag");
    f = FlagSpec{};
    opt_get(j, "at_infinity", f.at_infinity);
    opt_get(j, "alpha", f.alpha);
    opt_get(j, "line", f.line);
    opt_get(j, "point", f.point);
}

void to_json(Json& j, const EffectiveSectionSet& s) {
    j = Json{{"bundle", s.bundle},   {"m", s.m},
             {"rank", s.rank},       {"members", s.members},
             {"ambiguous_count", s.ambiguous_count}, {"nodes", s.nodes}};
}

void from_json(const Json& j, EffectiveSectionSet& s) {
    j.at("bundle").get_to(s.bundle);
    j.at("m").get_to(s.m);
    j.at("rank").get_to(s.rank);
    j.at("members").get_to(s.members);
    s.ambiguous_count = j.value("ambiguous_count", std::int64_t{0});
    s.nodes = j.value("nodes", std::int64_t{0});
}

void to_json(Json& j, const NuBounds& b) { j = Json{{"x_min", b.x_min}, {"upper", b.upper}, {"total", b.total}}; }

void from_json(const Json& j, NuBounds& b) {
    j.at("x_min").get_to(b.x_min);
    j.at("upper").get_to(b.upper);
    j.at("total").get_to(b.total);
}

void to_json(Json& j, const ValuationImage& v) {
    j = Json{{"flag", v.flag},         {"bundle", v.bundle},   {"m", v.m},
             {"verified", v.verified}, {"unknown", v.unknown}, {"bounds", v.bounds}};
}

void from_json(const Json& j, ValuationImage& v) {
    j.at("flag").get_to(v.flag);
    j.at("bundle").get_to(v.bundle);
    j.at("m").get_to(v.m);
    j.at("verified").get_to(v.verified);
    j.at("unknown").get_to(v.unknown);
    j.at("bounds").get_to(v.bounds);
}

void to_json(Json& j, const RationalPolytope& P) {
    j = Json{{"dim", P.dim},
             {"affine_dim", P.affine_dim},
             {"vertices", rat_points(P.vertices)},
             {"faces", P.faces},
             {"volume", rat(P.volume)}};
}

void from_json(const Json& j, RationalPolytope& P) {
    j.at("dim").get_to(P.dim);
    j.at("affine_dim").get_to(P.affine_dim);
    P.vertices = rat_points_of(j.at("vertices"));
    P.faces = j.value("faces", std::vector<std::vector<int>>{});
    P.volume = rat_of(j.at("volume"));
}

void to_json(Json& j, const Enclosure& e) { j = Json::array({e.lo, e.hi}); }

void from_json(const Json& j, Enclosure& e) {
    e.lo = j.at(0).get<double>();
    e.hi = j.at(1).get<double>();
}

void to_json(Json& j, const BrunnMinkowskiReport& r) {
    j = Json{{"dim", r.dim},         {"vol_p", rat(r.vol_p)},       {"vol_q", rat(r.vol_q)},
             {"vol_sum", rat(r.vol_sum)}, {"holds", r.holds}, {"equality", r.equality},
             {"slack", r.slack}};
}

void from_json(const Json& j, BrunnMinkowskiReport& r) {
    j.at("dim").get_to(r.dim);
    r.vol_p = rat_of(j.at("vol_p"));
    r.vol_q = rat_of(j.at("vol_q"));
    r.vol_sum = rat_of(j.at("vol_sum"));
    j.at("holds").get_to(r.holds);
    j.at("equality").get_to(r.equality);
    j.at("slack").get_to(r.slack);
}

void to_json(Json& j, const OkounkovApprox& a) {
    j = Json{{"polytope", a.polytope},
             {"m_schedule", a.m_schedule},
             {"verified_point_count", a.verified_point_count},
             {"unknown_point_count", a.unknown_point_count},
             {"volume_lower", rat(a.volume_lower)},
             {"volume_upper", rat(a.volume_upper)},
             {"points", rat_points(a.points)},
             {"images", a.images}};
}

void from_json(const Json& j, OkounkovApprox& a) {
    j.at("polytope").get_to(a.polytope);
    j.at("m_schedule").get_to(a.m_schedule);
    j.at("verified_point_count").get_to(a.verified_point_count);
    j.at("unknown_point_count").get_to(a.unknown_point_count);
    a.volume_lower = rat_of(j.at("volume_lower"));
    a.volume_upper = rat_of(j.at("volume_upper"));
    a.points = rat_points_of(j.at("points"));
    a.images = j.value("images", std::vector<ValuationImage>{});
}

void to_json(Json& j, const IntersectionValue& v) {
    j = Json{{"value", v.value}, {"error", v.error}, {"method", to_string(v.method)}};
}

void from_json(const Json& j, IntersectionValue& v) {
    j.at("value").get_to(v.value);
    j.at("error").get_to(v.error);
    v.method = parse_intersection_method(j.at("method").get<std::string>());
}

void to_json(Json& j, const InequalityCheck& c) {
    j = Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}, {"holds", c.holds}};
}

void from_json(const Json& j, InequalityCheck& c) {
    j.at("name").get_to(c.name);
    j.at("lhs").get_to(c.lhs);
    j.at("rhs").get_to(c.rhs);
    j.at("slack").get_to(c.slack);
    j.at("holds").get_to(c.holds);
}

void to_json(Json& j, const CorollaryReport& r) {
    j = Json{{"d", r.d},           {"l1_top", r.l1_top},   {"l2_top", r.l2_top},           {"mixed", r.mixed},
             {"mixed2", r.mixed2}, {"lambda", r.lambda},   {"hodge_value", r.hodge_value}, {"checks", r.checks},
             {"all_hold", r.all_hold}};
}

void from_json(const Json& j, CorollaryReport& r) {
    j.at("d").get_to(r.d);
    j.at("l1_top").get_to(r.l1_top);
    j.at("l2_top").get_to(r.l2_top);
    j.at("mixed").get_to(r.mixed);
    j.at("mixed2").get_to(r.mixed2);
    j.at("lambda").get_to(r.lambda);
    j.at("hodge_value").get_to(r.hodge_value);
    j.at("checks").get_to(r.checks);
    j.at("all_hold").get_to(r.all_hold);
}

std::string to_string(ImageMode mode) {
    switch (mode) {
        case ImageMode::Exact: return "exact";
        case ImageMode::Lattice: return "lattice";
        case ImageMode::Auto: break;
    }
    return "auto";
}

ImageMode parse_image_mode(const std::string& text) {
    if (text == "auto") return ImageMode::Auto;
    if (text == "exact") return ImageMode::Exact;
    if (text == "lattice") return ImageMode::Lattice;
    throw Error(ErrorKind::InvalidArgument, "unknown image mode '" + text + "'");
}

void to_json(Json& j, const ExperimentConfig& c) {
    j = Json{{"bundle", c.bundle},
             {"primes", c.primes},
             {"flag", c.flag},
             {"m_schedule", c.m_schedule},
             {"mode", to_string(c.mode)},
             {"budgets",
              {{"enumerate_nodes", c.enumerate.budget},
               {"sup_boxes", c.enumerate.sup_budget},
               {"max_rank", c.enumerate.max_rank},
               {"box_limit", c.enumerate.box_limit},
               {"member_limit", c.enumerate.member_limit},
               {"lattice_nodes", c.lattice.budget},
               {"lattice_sup_boxes", c.lattice.sup_budget}}},
             {"threads", c.enumerate.threads},
             {"tolerance", c.tolerance},
             {"envelope_slack", c.envelope_slack},
             {"epsilon_fraction", c.epsilon_fraction},
             {"fujita", {{"n", c.fujita_n}, {"k_max", c.fujita_k_max}}},
             {"seed", c.seed}};
    if (c.bundle2) j["bundle2"] = *c.bundle2;
}

void from_json(const Json& j, ExperimentConfig& c) {
    reject_unknown(j,
                   {"bundle", "bundle2", "primes", "flag", "m_schedule", "mode", "budgets", "threads", "tolerance",
                    "envelope_slack", "epsilon_fraction", "fujita", "seed"},
                   "config");
    c = ExperimentConfig{};
    j.at("bundle").get_to(c.bundle);
    if (j.contains("bundle2")) c.bundle2 = j.at("bundle2").get<HermitianLineBundle>();
    opt_get(j, "primes", c.primes);
    opt_get(j, "flag", c.flag);
    opt_get(j, "m_schedule", c.m_schedule);
    if (j.contains("mode")) c.mode = parse_image_mode(j.at("mode").get<std::string>());
    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        reject_unknown(b, {"enumerate_nodes", "sup_boxes", "max_rank", "box_limit", "member_limit",
                                   "lattice_nodes", "lattice_sup_boxes"},
                       "budgets");
        opt_get(b, "enumerate_nodes", c.enumerate.budget);
        opt_get(b, "sup_boxes", c.enumerate.sup_budget);
        opt_get(b, "max_rank", c.enumerate.max_rank);
        opt_get(b, "box_limit", c.enumerate.box_limit);
        opt_get(b, "member_limit", c.enumerate.member_limit);
        opt_get(b, "lattice_nodes", c.lattice.budget);
        opt_get(b, "lattice_sup_boxes", c.lattice.sup_budget);
    }
    opt_get(j, "threads", c.enumerate.threads);
    opt_get(j, "tolerance", c.tolerance);
    opt_get(j, "envelope_slack", c.envelope_slack);
    opt_get(j, "epsilon_fraction", c.epsilon_fraction);
    if (j.contains("fujita")) {
        const auto& f = j.at("fujita");
        reject_unknown(f, {"n", "k_max"}, "fujita");
        opt_get(f, "n", c.fujita_n);
        opt_get(f, "k_max", c.fujita_k_max);
    }
    opt_get(j, "seed", c.seed);
}

void to_json(Json& j, const TheoremAReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows) {
        Json row{{"p", x.p},
                 {"m", x.m},
                 {"verified_count", x.verified_count},
                 {"unknown_count", x.unknown_count},
                 {"hull_volume", rat(x.hull_volume)},
                 {"hull_volume_times_logp", x.hull_volume_times_logp},
                 {"target", x.target},
                 {"gap", x.gap},
                 {"discretization_bound", x.discretization_bound}};
        row["oracle_gap"] = x.oracle_gap ? Json(*x.oracle_gap) : Json(nullptr);
        rows.push_back(std::move(row));
    }
    const auto& s = r.summary;
    j = Json{{"bundle", r.bundle},
             {"flag", r.flag},
             {"rows", rows},
             {"summary",
              {{"volumes_nondecreasing", s.volumes_nondecreasing},
               {"within_discretization", s.within_discretization},
               {"matches_oracle", s.matches_oracle},
               {"final_gap", s.final_gap},
               {"comparison_constant", s.comparison_constant},
               {"envelope", s.envelope},
               {"within_envelope", s.within_envelope},
               {"count_ratio", s.count_ratio},
               {"hzero_lower", s.hzero_lower},
               {"hzero_upper", s.hzero_upper},
               {"hzero_mid_ratio", s.hzero_mid_ratio},
               {"count_gap", s.count_gap},
               {"count_within_envelope", s.count_within_envelope}}},
             {"hulls", r.hulls}};
}

void from_json(const Json& j, TheoremAReport& r) {
    j.at("bundle").get_to(r.bundle);
    j.at("flag").get_to(r.flag);
    r.rows.clear();
    for (const auto& x : j.at("rows")) {
        TheoremARow row;
        x.at("p").get_to(row.p);
        x.at("m").get_to(row.m);
        x.at("verified_count").get_to(row.verified_count);
        x.at("unknown_count").get_to(row.unknown_count);
        row.hull_volume = rat_of(x.at("hull_volume"));
        x.at("hull_volume_times_logp").get_to(row.hull_volume_times_logp);
        x.at("target").get_to(row.target);
        x.at("gap").get_to(row.gap);
        x.at("discretization_bound").get_to(row.discretization_bound);
        if (x.contains("oracle_gap") && !x.at("oracle_gap").is_null()) row.oracle_gap = x.at("oracle_gap").get<double>();
        r.rows.push_back(std::move(row));
    }
    const auto& s = j.at("summary");
    auto& o = r.summary;
    s.at("volumes_nondecreasing").get_to(o.volumes_nondecreasing);
    s.at("within_discretization").get_to(o.within_discretization);
    s.at("matches_oracle").get_to(o.matches_oracle);
    s.at("final_gap").get_to(o.final_gap);
    s.at("comparison_constant").get_to(o.comparison_constant);
    s.at("envelope").get_to(o.envelope);
    s.at("within_envelope").get_to(o.within_envelope);
    s.at("count_ratio").get_to(o.count_ratio);
    s.at("hzero_lower").get_to(o.hzero_lower);
    s.at("hzero_upper").get_to(o.hzero_upper);
    s.at("hzero_mid_ratio").get_to(o.hzero_mid_ratio);
    s.at("count_gap").get_to(o.count_gap);
    s.at("count_within_envelope").get_to(o.count_within_envelope);
    j.at("hulls").get_to(r.hulls);
}

void to_json(Json& j, const LogShift& a) { j = Json{{"q", rat(a.q)}, {"n", a.n}}; }

void from_json(const Json& j, LogShift& a) {
    a.q = rat_of(j.at("q"));
    j.at("n").get_to(a.n);
}

void to_json(Json& j, const RescalingReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows)
        rows.push_back({{"alpha", x.alpha},
                        {"count", x.count},
                        {"count_shifted", x.count_shifted},
                        {"rank", x.rank},
                        {"difference", x.difference},
                        {"bound", x.bound},
                        {"lower_holds", x.lower_holds},
                        {"upper_holds", x.upper_holds}});
    j = Json{{"bundle", r.bundle}, {"m", r.m}, {"rows", rows}, {"all_hold", r.all_hold}};
}

void from_json(const Json& j, RescalingReport& r) {
    j.at("bundle").get_to(r.bundle);
    j.at("m").get_to(r.m);
    r.rows.clear();
    for (const auto& x : j.at("rows")) {
        RescalingRow row;
        x.at("alpha").get_to(row.alpha);
        x.at("count").get_to(row.count);
        x.at("count_shifted").get_to(row.count_shifted);
        x.at("rank").get_to(row.rank);
        x.at("difference").get_to(row.difference);
        x.at("bound").get_to(row.bound);
        x.at("lower_holds").get_to(row.lower_holds);
        x.at("upper_holds").get_to(row.upper_holds);
        r.rows.push_back(row);
    }
    j.at("all_hold").get_to(r.all_hold);
}

void to_json(Json& j, const ReductionReport& r) {
    j = Json{{"bundle", r.bundle},          {"m", r.m},
             {"n", r.n},                    {"image_count", r.image_count},
             {"count", r.count},            {"count_up", r.count_up},
             {"count_zn", r.count_zn},      {"count_low", r.count_low},
             {"log_image", r.log_image},    {"upper_bound", r.upper_bound},
             {"lower_bound", r.lower_bound}, {"upper_holds", r.upper_holds},
             {"lower_holds", r.lower_holds}};
}

void from_json(const Json& j, ReductionReport& r) {
    j.at("bundle").get_to(r.bundle);
    j.at("m").get_to(r.m);
    j.at("n").get_to(r.n);
    j.at("image_count").get_to(r.image_count);
    j.at("count").get_to(r.count);
    j.at("count_up").get_to(r.count_up);
    j.at("count_zn").get_to(r.count_zn);
    j.at("count_low").get_to(r.count_low);
    j.at("log_image").get_to(r.log_image);
    j.at("upper_bound").get_to(r.upper_bound);
    j.at("lower_bound").get_to(r.lower_bound);
    j.at("upper_holds").get_to(r.upper_holds);
    j.at("lower_holds").get_to(r.lower_holds);
}

void to_json(Json& j, const CompatibilityReport& r) {
    j = Json{{"bundle", r.bundle},
             {"m", r.m},
             {"flag", r.flag},
             {"image_count", r.image_count},
             {"restricted_counts", r.restricted_counts},
             {"restricted_total", r.restricted_total},
             {"holds", r.holds}};
}

void from_json(const Json& j, CompatibilityReport& r) {
    j.at("bundle").get_to(r.bundle);
    j.at("m").get_to(r.m);
    j.at("flag").get_to(r.flag);
    j.at("image_count").get_to(r.image_count);
    j.at("restricted_counts").get_to(r.restricted_counts);
    j.at("restricted_total").get_to(r.restricted_total);
    j.at("holds").get_to(r.holds);
}

void to_json(Json& j, const FujitaReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows) {
        Json row{{"n", x.n},
                 {"k", x.k},
                 {"product_count", x.product_count},
                 {"image_count", x.image_count},
                 {"ratio", rat(x.ratio)},
                 {"inclusion_holds", x.inclusion_holds}};
        row["full_count"] = x.full_count ? Json(*x.full_count) : Json(nullptr);
        row["full_ratio"] = x.full_ratio ? rat(*x.full_ratio) : Json(nullptr);
        rows.push_back(std::move(row));
    }
    j = Json{{"bundle", r.bundle},
             {"flag", r.flag},
             {"rows", rows},
             {"reference_volume", rat(r.reference_volume)},
             {"epsilon", r.epsilon},
             {"ratio_nondecreasing", r.ratio_nondecreasing}};
}

void from_json(const Json& j, FujitaReport& r) {
    j.at("bundle").get_to(r.bundle);
    j.at("flag").get_to(r.flag);
    r.rows.clear();
    for (const auto& x : j.at("rows")) {
        FujitaRow row;
        x.at("n").get_to(row.n);
        x.at("k").get_to(row.k);
        x.at("product_count").get_to(row.product_count);
        x.at("image_count").get_to(row.image_count);
        row.ratio = rat_of(x.at("ratio"));
        x.at("inclusion_holds").get_to(row.inclusion_holds);
        if (!x.at("full_count").is_null()) row.full_count = x.at("full_count").get<std::int64_t>();
        if (!x.at("full_ratio").is_null()) row.full_ratio = rat_of(x.at("full_ratio"));
        r.rows.push_back(std::move(row));
    }
    r.reference_volume = rat_of(j.at("reference_volume"));
    j.at("epsilon").get_to(r.epsilon);
    j.at("ratio_nondecreasing").get_to(r.ratio_nondecreasing);
}

void to_json(Json& j, const TheoremBReport& r) {
    j = Json{{"bundle1", r.bundle1},
             {"bundle2", r.bundle2},
             {"flag", r.flag},
             {"m", r.m},
             {"pair_count", r.pair_count},
             {"inclusion_failures", r.inclusion_failures},
             {"inclusion_unknown", r.inclusion_unknown},
             {"inclusion_holds", r.inclusion_holds},
             {"hull_check", r.hull_check},
             {"hull1", r.hull1},
             {"hull2", r.hull2},
             {"hull_sum", r.hull_sum},
             {"closed_form_available", r.closed_form_available},
             {"closed_form", r.closed_form}};
}

void from_json(const Json& j, TheoremBReport& r) {
    j.at("bundle1").get_to(r.bundle1);
    j.at("bundle2").get_to(r.bundle2);
    j.at("flag").get_to(r.flag);
    j.at("m").get_to(r.m);
    j.at("pair_count").get_to(r.pair_count);
    j.at("inclusion_failures").get_to(r.inclusion_failures);
    j.at("inclusion_unknown").get_to(r.inclusion_unknown);
    j.at("inclusion_holds").get_to(r.inclusion_holds);
    j.at("hull_check").get_to(r.hull_check);
    j.at("hull1").get_to(r.hull1);
    j.at("hull2").get_to(r.hull2);
    j.at("hull_sum").get_to(r.hull_sum);
    j.at("closed_form_available").get_to(r.closed_form_available);
    j.at("closed_form").get_to(r.closed_form);
}

void to_json(Json& j, const SuiteReport& r) {
    j = Json{{"name", r.name},
             {"cases", r.cases},
             {"failures", r.failures},
             {"worst_slack", r.worst_slack},
             {"failure_notes", r.failure_notes}};
}

void from_json(const Json& j, SuiteReport& r) {
    j.at("name").get_to(r.name);
    j.at("cases").get_to(r.cases);
    j.at("failures").get_to(r.failures);
    j.at("worst_slack").get_to(r.worst_slack);
    j.at("failure_notes").get_to(r.failure_notes);
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    out << text;
}

}  // namespace arithvol
