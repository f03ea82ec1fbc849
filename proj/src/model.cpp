#include "arithvol/model.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <cctype>

namespace arithvol {

ArithmeticModel make_model(ModelKind kind) {
    switch (kind) {
        case ModelKind::P1Z: return {ModelKind::P1Z, 2, 1};
        case ModelKind::P2Z: return {ModelKind::P2Z, 3, 1};
    }
    throw Error(ErrorKind::InvalidArgument, "unknown model kind");
}

std::vector<VerticalTwist> HermitianLineBundle::twists() const {
    std::vector<VerticalTwist> out;
    out.reserve(twists_.size());
    for (const auto& [p, k] : twists_) out.push_back({p, k});
    return out;
}

std::int64_t HermitianLineBundle::twist_multiplicity(std::int64_t p) const {
    auto it = twists_.find(p);
    return it == twists_.end() ? 0 : it->second;
}

BigInt HermitianLineBundle::divisor(std::int64_t m) const {
    BigInt D = 1;
    for (const auto& [p, k] : twists_) D *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(m * k));
    return D;
}

Real50 HermitianLineBundle::c_total() const {
    Real50 c = to_real(metric_.c);
    for (const auto& [p, k] : twists_) c -= Real50(k) * log_integer(p);
    return c;
}

HermitianLineBundle make_bundle(const ArithmeticModel& model, std::int64_t a, const MetricSpec& metric) {
    if (a < 0) throw Error(ErrorKind::NegativeDegree, "degree must be >= 0");
    if (metric.family == MetricFamily::FubiniStudy && model.kind != ModelKind::P1Z)
        throw Error(ErrorKind::UnsupportedCombination, "Fubini-Study metric is only supported on P1Z");
    HermitianLineBundle b;
    b.model_ = model;
    b.degree_ = a;
    b.metric_ = metric;
    return b;
}

namespace {

void merge_twists(std::map<std::int64_t, std::int64_t>& into, const std::vector<VerticalTwist>& V) {
    for (const auto& t : V) {
        if (!is_prime(t.p)) throw Error(ErrorKind::NotPrime, "vertical twist at non-prime " + std::to_string(t.p));
        into[t.p] += t.k;
    }
    for (auto it = into.begin(); it != into.end();) {
        if (it->second < 0)
            throw Error(ErrorKind::InvalidArgument,
                        "negative net vertical multiplicity at p = " + std::to_string(it->first));
        if (it->second == 0)
            it = into.erase(it);
        else
            ++it;
    }
}

}  // namespace

HermitianLineBundle twist(const HermitianLineBundle& bundle, const Rational& alpha,
                          const std::vector<VerticalTwist>& V) {
    HermitianLineBundle out = bundle;
    out.metric_.c += alpha;
    merge_twists(out.twists_, V);
    return out;
}

HermitianLineBundle add_bundles(const HermitianLineBundle& b1, const HermitianLineBundle& b2) {
    if (!(b1.model_ == b2.model_)) throw Error(ErrorKind::ModelMismatch, "bundles live on different models");
    if (b1.metric_.family != b2.metric_.family)
        throw Error(ErrorKind::ModelMismatch, "bundles carry different metric families");
    HermitianLineBundle out = b1;
    out.degree_ += b2.degree_;
    out.metric_.c += b2.metric_.c;
    merge_twists(out.twists_, b2.twists());
    return out;
}

HermitianLineBundle multiple(const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "multiple must be >= 0");
    HermitianLineBundle out = bundle;
    out.degree_ *= m;
    out.metric_.c *= m;
    for (auto& [p, k] : out.twists_) k *= m;
    if (m == 0) out.twists_.clear();
    return out;
}

std::vector<VerticalTwist> divisor_of_integer(std::int64_t n) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "Z_n needs n >= 1");
    std::vector<VerticalTwist> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        std::int64_t k = 0;
        while (n % q == 0) {
            n /= q;
            ++k;
        }
        if (k > 0) out.push_back({q, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::int64_t section_rank(const ArithmeticModel& model, std::int64_t a, std::int64_t m) {
    const std::int64_t n = a * m;
    if (model.kind == ModelKind::P1Z) return n + 1;
    return (n + 1) * (n + 2) / 2;
}

std::vector<std::pair<int, int>> monomial_exponents(ModelKind kind, int n) {
    std::vector<std::pair<int, int>> out;
    if (kind == ModelKind::P1Z) {
        for (int j = 0; j <= n; ++j) out.emplace_back(j, 0);
    } else {
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) out.emplace_back(i, j);
    }
    return out;
}

std::string to_string(ModelKind kind) { return kind == ModelKind::P1Z ? "P1Z" : "P2Z"; }

std::string to_string(MetricFamily family) {
    return family == MetricFamily::Canonical ? "Canonical" : "FubiniStudy";
}

namespace {
std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return s;
}
}  // namespace

ModelKind parse_model_kind(const std::string& text) {
    const auto s = lower(text);
    if (s == "p1z") return ModelKind::P1Z;
    if (s == "p2z") return ModelKind::P2Z;
    throw Error(ErrorKind::InvalidArgument, "unknown model '" + text + "'");
}

MetricFamily parse_metric_family(const std::string& text) {
    const auto s = lower(text);
    if (s == "canonical") return MetricFamily::Canonical;
    if (s == "fubinistudy" || s == "fs" || s == "fubini-study") return MetricFamily::FubiniStudy;
    throw Error(ErrorKind::InvalidArgument, "unknown metric family '" + text + "'");
}

}  // namespace arithvol
