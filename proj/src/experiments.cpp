#include "arithvol/experiments.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace arithvol {

namespace {

Real50 log_real(std::int64_t p) { return log_integer(p); }

std::vector<Coeffs> certified_members(const SectionSpace& space, const NormBound& R, const BigInt& D,
                                      const EnumerateOptions& options) {
    auto body = enumerate_body(space, R, D, options);
    if (body.ambiguous_count > 0)
        throw Error(ErrorKind::AmbiguousBoundary,
                    std::to_string(body.ambiguous_count) + " sections could not be certified");
    return std::move(body.members);
}

std::int64_t factorial(int d) {
    std::int64_t f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

BigInt ipow(std::int64_t b, std::int64_t e) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

RationalPolytope hull_of(const ValuationImage& img, int d) {
    RationalPolytope P = img.verified.empty() ? RationalPolytope{} : convex_hull(scale_points(img));
    P.dim = d;
    return P;
}

bool witnessed_family(const HermitianLineBundle& b, const FlagSpec& f) {
    return b.model().kind == ModelKind::P1Z && b.family() == MetricFamily::Canonical && b.degree() == 1 &&
           b.twists().empty() && !f.at_infinity && f.alpha == 0;
}

}  // namespace

Flag make_flag(const ArithmeticModel& model, std::int64_t p, const FlagSpec& spec) {
    if (model.kind == ModelKind::P1Z) return spec.at_infinity ? make_flag_p1_infinity(p) : make_flag_p1(p, spec.alpha);
    return make_flag_p2(p, spec.line, spec.point);
}

void validate(const ExperimentConfig& config) {
    const auto& s = config.m_schedule;
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "m_schedule is empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1) throw Error(ErrorKind::InvalidArgument, "m_schedule entries must be >= 1");
        if (i > 0 && s[i] <= s[i - 1]) throw Error(ErrorKind::InvalidArgument, "m_schedule must be increasing");
    }
    if (config.primes.empty()) throw Error(ErrorKind::InvalidArgument, "prime list is empty");
    for (auto p : config.primes)
        if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (config.enumerate.budget <= 0 || config.lattice.budget <= 0 || config.enumerate.sup_budget <= 0 ||
        config.lattice.sup_budget <= 0)
        throw Error(ErrorKind::InvalidArgument, "budgets must be positive");
    if (!(config.tolerance > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (!(config.envelope_slack > 0.0)) throw Error(ErrorKind::InvalidArgument, "envelope slack must be positive");
    if (config.fujita_k_max < 1) throw Error(ErrorKind::InvalidArgument, "fujita k_max must be >= 1");
    for (auto n : config.fujita_n)
        if (n < 1) throw Error(ErrorKind::InvalidArgument, "fujita n must be >= 1");
    if (config.bundle2 && !(config.bundle2->model() == config.bundle.model()))
        throw Error(ErrorKind::ModelMismatch, "bundle2 lives on another model");
}

TheoremAReport run_theorem_a(const ExperimentConfig& config) {
    validate(config);
    const auto& bundle = config.bundle;
    if (!in_ample_catalog(bundle))
        throw Error(ErrorKind::NotAmpleInCatalog, "the volume target needs an ample-catalog bundle");
    const int d = bundle.model().d;
    const double target = volume_closed_form(bundle) / static_cast<double>(factorial(d));
    const bool witnessed = witnessed_family(bundle, config.flag);
    OkounkovOptions opts{config.mode, config.enumerate, config.lattice};

    TheoremAReport report;
    report.bundle = bundle;
    report.flag = config.flag;
    auto& sum = report.summary;
    // Rows run in parallel; assembly below walks them in (p, m) order.
    const std::size_t n_ms = config.m_schedule.size();
    const std::size_t n_rows = config.primes.size() * n_ms;
    std::vector<ValuationImage> images(n_rows);
    {
        const int threads = std::max(1, config.enumerate.threads > 0 ? config.enumerate.threads : default_threads());
        const int workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n_rows));
        OkounkovOptions inner = opts;
        if (workers > 1) inner.enumerate.threads = 1;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(n_rows);
        auto work = [&] {
            for (std::size_t i = next++; i < n_rows; i = next++) {
                try {
                    const std::int64_t p = config.primes[i / n_ms];
                    images[i] = valuation_image(bundle, config.m_schedule[i % n_ms],
                                                make_flag(bundle.model(), p, config.flag), inner);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);
    }

    std::size_t row_index = 0;
    for (auto p : config.primes) {
        const Real50 logp = log_real(p);
        Rational prev_volume = -1;
        for (auto m : config.m_schedule) {
            const ValuationImage& img = images[row_index++];
            RationalPolytope hull = hull_of(img, d);
            TheoremARow row;
            row.p = p;
            row.m = m;
            row.verified_count = static_cast<std::int64_t>(img.verified.size());
            row.unknown_count = static_cast<std::int64_t>(img.unknown.size());
            row.hull_volume = hull.volume;
            row.hull_volume_times_logp = (to_real(hull.volume) * logp).convert_to<double>();
            row.target = target;
            row.gap = std::abs(row.hull_volume_times_logp - target);
            row.discretization_bound = (logp / m).convert_to<double>();
            if (witnessed) {
                BigInt q;
                if (!floor_certified(to_real(bundle.c() * m) / logp, q))
                    throw Error(ErrorKind::AmbiguousBoundary, "m c / log p is too close to an integer");
                row.oracle_gap = std::abs((to_real(Rational(q, m)) * logp - to_real(bundle.c())).convert_to<double>());
                if (std::abs(*row.oracle_gap - row.gap) > 1e-12) sum.matches_oracle = false;
            }
            if (row.gap > row.discretization_bound + config.tolerance) sum.within_discretization = false;
            if (prev_volume > row.hull_volume) sum.volumes_nondecreasing = false;
            prev_volume = row.hull_volume;
            report.rows.push_back(std::move(row));
            report.hulls.push_back(std::move(hull));
        }
    }
    const ValuationImage* last_image = &images.back();
    const auto& last = report.rows.back();
    const std::int64_t p_max = *std::max_element(config.primes.begin(), config.primes.end());
    sum.final_gap = last.gap;
    sum.comparison_constant = comparison_constant(bundle, bundle);
    sum.envelope = config.envelope_slack * sum.comparison_constant / log_real(p_max).convert_to<double>();
    sum.within_envelope = sum.final_gap <= sum.envelope;

    const double md = std::pow(static_cast<double>(last.m), d);
    sum.count_ratio = static_cast<double>(last_image->verified.size()) * log_real(last.p).convert_to<double>() / md;
    const auto band = hzero_band(bundle, last.m, config.enumerate);
    sum.hzero_lower = band.first;
    sum.hzero_upper = band.second;
    sum.hzero_mid_ratio = 0.5 * (band.first + band.second) / md;
    sum.count_gap = std::abs(sum.count_ratio - sum.hzero_mid_ratio);
    const double env_last = config.envelope_slack * sum.comparison_constant / log_real(last.p).convert_to<double>();
    sum.count_within_envelope = sum.count_gap <= env_last;
    return report;
}

std::string theorem_a_csv(const TheoremAReport& report) {
    std::string out = "p,m,verified_count,hull_volume,hull_volume_times_logp,target,gap\n";
    for (const auto& r : report.rows) {
        out += std::to_string(r.p) + "," + std::to_string(r.m) + "," + std::to_string(r.verified_count) + "," +
               to_string(r.hull_volume) + "," + format_real(r.hull_volume_times_logp) + "," +
               format_real(r.target) + "," + format_real(r.gap) + "\n";
    }
    return out;
}

bool self_consistent(const TheoremAReport& report) {
    if (report.rows.size() != report.hulls.size()) return false;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& r = report.rows[i];
        const Real50 logp = log_real(r.p);
        const double x = (to_real(r.hull_volume) * logp).convert_to<double>();
        if (report.hulls[i].volume != r.hull_volume) return false;
        if (std::abs(x - r.hull_volume_times_logp) > 1e-12 * std::max(1.0, std::abs(x))) return false;
        if (std::abs(std::abs(x - r.target) - r.gap) > 1e-12) return false;
        if (std::abs((logp / r.m).convert_to<double>() - r.discretization_bound) > 1e-15) return false;
    }
    return true;
}

double to_double(const LogShift& a) {
    return (to_real(a.q) + log_integer(a.n)).convert_to<double>();
}

RescalingReport verify_rescaling(const HermitianLineBundle& bundle, std::int64_t m, const std::vector<LogShift>& alphas,
                                 const EnumerateOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
    const SectionSpace space = section_space(bundle, m);
    const BigInt D = bundle.divisor(m);
    const Rational cm = bundle.c() * m;
    const auto base = static_cast<std::int64_t>(certified_members(space, NormBound(cm, 1), D, options).size());
    RescalingReport report;
    report.bundle = bundle;
    report.m = m;
    report.all_hold = true;
    for (const auto& a : alphas) {
        if (a.q < 0 || a.n < 1) throw Error(ErrorKind::InvalidArgument, "alpha must be q + log n with q >= 0, n >= 1");
        RescalingRow row;
        row.alpha = a;
        row.rank = space.rank();
        row.count = base;
        row.count_shifted =
            static_cast<std::int64_t>(certified_members(space, NormBound(cm - a.q, 1), D * a.n, options).size());
        const Real50 diff = log_integer(row.count) - log_integer(row.count_shifted);
        const Real50 bound = (to_real(a.q) + log_integer(a.n) + log_integer(3)) * row.rank;
        row.difference = diff.convert_to<double>();
        row.bound = bound.convert_to<double>();
        row.lower_holds = row.count >= row.count_shifted;
        row.upper_holds = diff <= bound;
        report.all_hold = report.all_hold && row.lower_holds && row.upper_holds;
        report.rows.push_back(row);
    }
    return report;
}

ReductionReport verify_reduction(const HermitianLineBundle& bundle, std::int64_t m, std::int64_t n,
                                 const EnumerateOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be >= 1");
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "n must be >= 2");
    const SectionSpace space = section_space(bundle, m);
    const BigInt D = bundle.divisor(m);
    const Rational cm = bundle.c() * m;
    ReductionReport r;
    r.bundle = bundle;
    r.m = m;
    r.n = n;
    const auto members = certified_members(space, NormBound(cm, 1), D, options);
    std::set<Coeffs> reduced;
    for (const auto& s : members) {
        Coeffs v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) v[i] = ((s[i] % n) + n) % n;
        reduced.insert(std::move(v));
    }
    r.image_count = static_cast<std::int64_t>(reduced.size());
    r.count = static_cast<std::int64_t>(members.size());
    r.count_up = static_cast<std::int64_t>(certified_members(space, NormBound(cm, 2), D, options).size());
    r.count_zn = static_cast<std::int64_t>(certified_members(space, NormBound(cm, 1), D * n, options).size());
    r.count_low = static_cast<std::int64_t>(certified_members(space, NormBound(cm, 2), D * n, options).size());
    r.log_image = std::log(static_cast<double>(r.image_count));
    r.upper_bound = std::log(static_cast<double>(r.count_up)) - std::log(static_cast<double>(r.count_zn));
    r.lower_bound = std::log(static_cast<double>(r.count)) - std::log(static_cast<double>(r.count_low));
    // Both sides compared as integers.
    r.upper_holds = BigInt(r.image_count) * r.count_zn <= BigInt(r.count_up);
    r.lower_holds = BigInt(r.count) <= BigInt(r.image_count) * r.count_low;
    return r;
}

CompatibilityReport verify_compatibility(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                         const EnumerateOptions& options) {
    if (!(flag.model == bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag lives on another model");
    CompatibilityReport r;
    r.bundle = bundle;
    r.m = m;
    r.flag = flag;
    const auto set = enumerate_effective(bundle, m, options);
    r.image_count = static_cast<std::int64_t>(valuation_image_of(set, flag).verified.size());

    const SectionSpace space = section_space(bundle, m);
    const FiberValuation fv(flag, space.n);
    const BigInt D = bundle.divisor(m);
    const int base_content = padic_valuation(D, flag.p);
    BigInt Dk = D;
    for (int k = 0;; ++k, Dk *= flag.p) {
        const auto members = certified_members(space, NormBound(bundle.c() * m, 1), Dk, options);
        if (members.size() <= 1) break;
        std::set<Point> keys;
        for (const auto& s : members) {
            if (std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; })) continue;
            Point v = fv.nu(std::span<const std::int64_t>(s));
            if (v[0] != base_content + k) continue;
            keys.insert(Point(v.begin() + 1, v.end()));
        }
        r.restricted_counts.push_back(static_cast<std::int64_t>(keys.size()));
        r.restricted_total += static_cast<std::int64_t>(keys.size());
    }
    r.holds = r.image_count == r.restricted_total;
    return r;
}

FujitaReport verify_fujita_finite(const HermitianLineBundle& bundle, const Flag& flag,
                                  const std::vector<std::int64_t>& n_list, std::int64_t k_max,
                                  const EnumerateOptions& options, double epsilon_fraction) {
    if (!(flag.model == bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag lives on another model");
    if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 1");
    const int d = bundle.model().d;
    FujitaReport report;
    report.bundle = bundle;
    report.flag = flag;
    std::int64_t best_level = 0;
    for (auto n : n_list) {
        if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
        const auto base = enumerate_effective(bundle, n, options);
        if (base.ambiguous_count > 0) throw Error(ErrorKind::AmbiguousBoundary, "base set has undecided sections");
        Rational prev = -1;
        for (std::int64_t k = 1; k <= k_max; ++k) {
            const auto V = product_set(base, k);
            const auto img = valuation_image_of(V, flag);
            FujitaRow row;
            row.n = n;
            row.k = k;
            row.product_count = static_cast<std::int64_t>(V.members.size());
            row.image_count = static_cast<std::int64_t>(img.verified.size());
            const BigInt denom = ipow(n * k, d);
            row.ratio = Rational(BigInt(row.image_count), denom);
            if (exact_in_scope(bundle, n * k, options)) {
                const auto full = valuation_image_exact(bundle, n * k, flag, options);
                if (!full.unknown.empty()) throw Error(ErrorKind::AmbiguousBoundary, "full image has unknown points");
                row.full_count = static_cast<std::int64_t>(full.verified.size());
                row.full_ratio = Rational(BigInt(*row.full_count), denom);
                row.inclusion_holds = std::includes(full.verified.begin(), full.verified.end(), img.verified.begin(),
                                                    img.verified.end());
                if (n * k > best_level) {
                    best_level = n * k;
                    report.reference_volume = hull_of(full, d).volume;
                }
            }
            if (row.ratio < prev) report.ratio_nondecreasing = false;
            prev = row.ratio;
            report.rows.push_back(std::move(row));
        }
    }
    report.epsilon = epsilon_fraction * to_real(report.reference_volume).convert_to<double>();
    return report;
}

TheoremBReport run_theorem_b(const HermitianLineBundle& b1, const HermitianLineBundle& b2, const Flag& flag,
                             std::int64_t m, const OkounkovOptions& options) {
    if (!(flag.model == b1.model())) throw Error(ErrorKind::ModelMismatch, "flag lives on another model");
    const HermitianLineBundle sum = add_bundles(b1, b2);
    const int d = b1.model().d;
    TheoremBReport r;
    r.bundle1 = b1;
    r.bundle2 = b2;
    r.flag = flag;
    r.m = m;
    const auto i1 = valuation_image(b1, m, flag, options);
    const auto i2 = valuation_image(b2, m, flag, options);
    const auto i12 = valuation_image(sum, m, flag, options);
    const std::set<Point> verified(i12.verified.begin(), i12.verified.end());
    const std::set<Point> unknown(i12.unknown.begin(), i12.unknown.end());
    for (const auto& x : i1.verified)
        for (const auto& y : i2.verified) {
            Point z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
            ++r.pair_count;
            if (verified.count(z)) continue;
            if (unknown.count(z))
                ++r.inclusion_unknown;
            else
                ++r.inclusion_failures;
        }
    r.inclusion_holds = r.inclusion_failures == 0;
    r.hull1 = hull_of(i1, d);
    r.hull2 = hull_of(i2, d);
    r.hull_sum = hull_of(i12, d);
    r.hull_check = brunn_minkowski_check(r.hull1, r.hull2);
    r.closed_form_available = in_ample_catalog(b1) && in_ample_catalog(b2);
    if (r.closed_form_available) {
        const double e = 1.0 / d;
        const double lhs = std::pow(volume_closed_form(sum), e);
        const double rhs = std::pow(volume_closed_form(b1), e) + std::pow(volume_closed_form(b2), e);
        r.closed_form = {"volume_brunn_minkowski", lhs, rhs, lhs - rhs, lhs - rhs >= -1e-9 * std::max(1.0, lhs)};
    }
    return r;
}

namespace {

HermitianLineBundle random_ample(std::mt19937_64& rng, const ArithmeticModel& model, MetricFamily family) {
    std::uniform_int_distribution<std::int64_t> deg(1, 4), num(1, 40), den(1, 8);
    const std::int64_t a = deg(rng);
    Rational c(num(rng), den(rng));
    if (family == MetricFamily::FubiniStudy && num(rng) <= 4) c = 0;
    return make_bundle(model, a, {family, c});
}

void note_slack(SuiteReport& s, const InequalityCheck& c, const std::string& where) {
    ++s.cases;
    const double rel = c.slack / std::max({1.0, std::abs(c.lhs), std::abs(c.rhs)});
    s.worst_slack = s.cases == 1 ? rel : std::min(s.worst_slack, rel);
    if (!c.holds) {
        ++s.failures;
        s.failure_notes.push_back(where + ": " + c.name + " slack " + format_real(c.slack));
    }
}

std::string describe(const HermitianLineBundle& b) {
    return to_string(b.model().kind) + " a=" + std::to_string(b.degree()) + " " + to_string(b.family()) +
           " c=" + to_string(b.c());
}

}  // namespace

SuiteReport inequality_sweep(std::uint64_t seed, int pairs, double tolerance) {
    std::mt19937_64 rng(seed);
    SuiteReport s;
    s.name = "inequalities";
    const auto p1 = make_model(ModelKind::P1Z), p2 = make_model(ModelKind::P2Z);
    for (int i = 0; i < pairs; ++i) {
        const int kind = i % 3;  // P1Z canonical, P1Z Fubini-Study, P2Z canonical
        const auto& model = kind == 2 ? p2 : p1;
        const MetricFamily fam = kind == 1 ? MetricFamily::FubiniStudy : MetricFamily::Canonical;
        const auto b1 = random_ample(rng, model, fam), b2 = random_ample(rng, model, fam);
        const std::string where = describe(b1) + " | " + describe(b2);
        const double e = 1.0 / model.d;
        const double lhs = std::pow(volume_closed_form(add_bundles(b1, b2)), e);
        const double rhs = std::pow(volume_closed_form(b1), e) + std::pow(volume_closed_form(b2), e);
        InequalityCheck bm{"volume_brunn_minkowski", lhs, rhs, lhs - rhs, false};
        bm.holds = bm.slack >= -tolerance * std::max(1.0, lhs);
        note_slack(s, bm, where);
        const auto rep = corollary_checks(b1, b2, tolerance);
        for (const auto& c : rep.checks)
            if (c.name != "hodge_index_sign") note_slack(s, c, where);
    }
    return s;
}

SuiteReport hodge_sweep(std::uint64_t seed, int pairs, double tolerance) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    SuiteReport s;
    s.name = "hodge_index";
    const auto p1 = make_model(ModelKind::P1Z), p2 = make_model(ModelKind::P2Z);
    for (int i = 0; i < pairs; ++i) {
        const int kind = i % 3;
        const auto& model = kind == 2 ? p2 : p1;
        const MetricFamily fam = kind == 1 ? MetricFamily::FubiniStudy : MetricFamily::Canonical;
        const auto A = random_ample(rng, model, fam), B = random_ample(rng, model, fam);
        const auto rep = corollary_checks(A, B, tolerance);
        for (const auto& c : rep.checks)
            if (c.name == "hodge_index_sign") note_slack(s, c, describe(A) + " | " + describe(B));
    }
    return s;
}

SuiteReport quadrature_crosscheck(std::uint64_t seed, int pairs, double tolerance) {
    std::mt19937_64 rng(seed ^ 0x243f6a8885a308d3ULL);
    SuiteReport s;
    s.name = "quadrature";
    const auto p1 = make_model(ModelKind::P1Z), p2 = make_model(ModelKind::P2Z);
    std::uniform_int_distribution<std::int64_t> deg(0, 4), num(-20, 40), den(1, 8);
    for (int i = 0; i < pairs; ++i) {
        const auto& model = i % 4 == 3 ? p2 : p1;
        std::vector<HermitianLineBundle> bundles;
        for (int j = 0; j < model.d; ++j)
            bundles.push_back(make_bundle(model, deg(rng), {MetricFamily::Canonical, Rational(num(rng), den(rng))}));
        IntersectionForm closed{model, IntersectionMethod::ClosedForm, 1e-10};
        IntersectionForm quad{model, IntersectionMethod::Quadrature, 1e-10};
        const double a = intersection_number(closed, bundles).value;
        const double b = intersection_number(quad, bundles).value;
        InequalityCheck c{"closed_vs_quadrature", tolerance, std::abs(a - b), tolerance - std::abs(a - b), false};
        c.holds = std::abs(a - b) <= tolerance;
        std::string where;
        for (const auto& x : bundles) where += (where.empty() ? "" : " . ") + describe(x);
        note_slack(s, c, where);
    }
    return s;
}

}  // namespace arithvol
