#include "arithvol/norms.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <queue>

namespace arithvol {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

struct Eval {
    double g = 0.0;
    double d[2] = {0.0, 0.0};
};

// |f(e^{i theta})|^2 for f = sum a_j t^j.
class CircleEval {
public:
    CircleEval(std::span<const double> a) : a_(a.begin(), a.end()) {
        int lo = -1, hi = -1;
        double s = 0.0, s1 = 0.0;
        for (int j = 0; j < static_cast<int>(a_.size()); ++j) {
            if (a_[j] == 0.0) continue;
            if (lo < 0) lo = j;
            hi = j;
            s += std::abs(a_[j]);
            s1 += j * std::abs(a_[j]);
        }
        freq[0] = lo < 0 ? 0.0 : static_cast<double>(hi - lo);
        const double n = static_cast<double>(a_.size()) + 2.0;
        const double padF = 8.0 * n * kEps * s;
        pad_g = 3.0 * s * padF + 4.0 * std::numeric_limits<double>::denorm_min();
        pad_grad = 32.0 * n * kEps * s * std::max(s1, s);
        upper0 = s * s * (1.0 + 4.0 * n * kEps);
    }

    static constexpr int dims = 1;
    double lo[2] = {0.0, 0.0};
    double hi[2] = {kTwoPi, 0.0};
    double freq[2] = {0.0, 0.0};
    double pad_g = 0.0;
    double pad_grad = 0.0;
    double upper0 = 0.0;

    Eval eval(double theta, double) const {
        const std::complex<double> z(std::cos(theta), std::sin(theta));
        std::complex<double> F = 0.0, Fp = 0.0;
        for (int j = static_cast<int>(a_.size()) - 1; j >= 0; --j) {
            F = F * z + a_[j];
            Fp = Fp * z + static_cast<double>(j) * a_[j];
        }
        Fp *= std::complex<double>(0.0, 1.0);
        Eval e;
        e.g = std::norm(F);
        e.d[0] = 2.0 * (std::conj(F) * Fp).real();
        return e;
    }

private:
    std::vector<double> a_;
};

// |f(e^{i t1}, e^{i t2})|^2 for f = sum a_{ij} t1^i t2^j.
class TorusEval {
public:
    TorusEval(std::span<const double> a, int n) : n_(n), a_(a.begin(), a.end()) {
        exps_ = monomial_exponents(ModelKind::P2Z, n);
        int ilo = n + 1, ihi = -1, jlo = n + 1, jhi = -1;
        double s = 0.0, s1 = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == 0.0) continue;
            const auto [i, j] = exps_[k];
            ilo = std::min(ilo, i);
            ihi = std::max(ihi, i);
            jlo = std::min(jlo, j);
            jhi = std::max(jhi, j);
            s += std::abs(a_[k]);
            s1 += (i + j) * std::abs(a_[k]);
        }
        freq[0] = ihi < 0 ? 0.0 : static_cast<double>(ihi - ilo);
        freq[1] = jhi < 0 ? 0.0 : static_cast<double>(jhi - jlo);
        const double m = 2.0 * n + 4.0;
        const double padF = 8.0 * m * kEps * s;
        pad_g = 3.0 * s * padF + 4.0 * std::numeric_limits<double>::denorm_min();
        pad_grad = 32.0 * m * kEps * s * std::max(s1, s);
        upper0 = s * s * (1.0 + 4.0 * m * kEps);
        p1_.resize(n + 1);
        p2_.resize(n + 1);
    }

    static constexpr int dims = 2;
    double lo[2] = {0.0, 0.0};
    double hi[2] = {kTwoPi, kTwoPi};
    double freq[2] = {0.0, 0.0};
    double pad_g = 0.0;
    double pad_grad = 0.0;
    double upper0 = 0.0;

    Eval eval(double t1, double t2) const {
        for (int k = 0; k <= n_; ++k) {
            p1_[k] = std::complex<double>(std::cos(k * t1), std::sin(k * t1));
            p2_[k] = std::complex<double>(std::cos(k * t2), std::sin(k * t2));
        }
        std::complex<double> F = 0.0, F1 = 0.0, F2 = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) {
            if (a_[k] == 0.0) continue;
            const auto [i, j] = exps_[k];
            const auto term = a_[k] * p1_[i] * p2_[j];
            F += term;
            F1 += static_cast<double>(i) * term;
            F2 += static_cast<double>(j) * term;
        }
        const std::complex<double> I(0.0, 1.0);
        Eval e;
        e.g = std::norm(F);
        e.d[0] = 2.0 * (std::conj(F) * (I * F1)).real();
        e.d[1] = 2.0 * (std::conj(F) * (I * F2)).real();
        return e;
    }

private:
    int n_;
    std::vector<double> a_;
    std::vector<std::pair<int, int>> exps_;
    mutable std::vector<std::complex<double>> p1_, p2_;
};

// |F(cos phi, sin phi e^{i theta})|^2 for the binary form F of degree n;
// this is |f(t)|^2 / (1+|t|^2)^n with t = tan(phi) e^{i theta}.
class SphereEval {
public:
    SphereEval(std::span<const double> a, int n, double upper) : n_(n), a_(a.begin(), a.end()) {
        int lo_j = n + 1, hi_j = -1;
        double s = 0.0, s1 = 0.0;
        for (int j = 0; j <= n; ++j) {
            if (a_[j] == 0.0) continue;
            lo_j = std::min(lo_j, j);
            hi_j = std::max(hi_j, j);
            s += std::abs(a_[j]);
            s1 += n * std::abs(a_[j]);
        }
        freq[0] = 2.0 * n;
        freq[1] = hi_j < 0 ? 0.0 : static_cast<double>(hi_j - lo_j);
        const double m = 2.0 * n + 4.0;
        const double padF = 8.0 * m * kEps * s;
        pad_g = 3.0 * s * padF + 4.0 * std::numeric_limits<double>::denorm_min();
        pad_grad = 32.0 * m * kEps * s * std::max(s1, s);
        upper0 = upper * upper * (1.0 + 4.0 * m * kEps);
        cp_.resize(n + 2);
        sp_.resize(n + 2);
    }

    static constexpr int dims = 2;
    double lo[2] = {0.0, 0.0};
    double hi[2] = {std::numbers::pi / 2.0, kTwoPi};
    double freq[2] = {0.0, 0.0};
    double pad_g = 0.0;
    double pad_grad = 0.0;
    double upper0 = 0.0;

    Eval eval(double phi, double theta) const {
        const double c = std::cos(phi), s = std::sin(phi);
        cp_[0] = sp_[0] = 1.0;
        for (int k = 1; k <= n_ + 1; ++k) {
            cp_[k] = cp_[k - 1] * c;
            sp_[k] = sp_[k - 1] * s;
        }
        std::complex<double> F = 0.0, Fphi = 0.0, Ftheta = 0.0;
        for (int j = 0; j <= n_; ++j) {
            if (a_[j] == 0.0) continue;
            const std::complex<double> phase(std::cos(j * theta), std::sin(j * theta));
            const double mono = cp_[n_ - j] * sp_[j];
            double dmono = 0.0;
            if (n_ - j > 0) dmono -= (n_ - j) * cp_[n_ - j - 1] * sp_[j + 1];
            if (j > 0) dmono += j * cp_[n_ - j + 1] * sp_[j - 1];
            F += a_[j] * mono * phase;
            Fphi += a_[j] * dmono * phase;
            Ftheta += std::complex<double>(0.0, j) * a_[j] * mono * phase;
        }
        Eval e;
        e.g = std::norm(F);
        e.d[0] = 2.0 * (std::conj(F) * Fphi).real();
        e.d[1] = 2.0 * (std::conj(F) * Ftheta).real();
        return e;
    }

private:
    int n_;
    std::vector<double> a_;
    mutable std::vector<double> cp_, sp_;
};

struct Box {
    double cert;
    double c[2];
    double h[2];
};

struct BoxLess {
    bool operator()(const Box& a, const Box& b) const { return a.cert < b.cert; }
};

struct BnbOutcome {
    double lower = 0.0;  // valid lower bound on sup g
    double upper = 0.0;  // valid upper bound on sup g
    bool done = false;
    std::int64_t boxes = 0;
};

// Branch and bound for sup g. `done(L, U)` stops the search.
template <class E, class Done>
BnbOutcome maximize(const E& ev, Done done, std::int64_t budget) {
    BnbOutcome out;
    double L = 0.0;
    double U = ev.upper0;
    double curv_bound = ev.upper0;
    if (done(L, U)) {
        out.lower = L;
        out.upper = U;
        out.done = true;
        return out;
    }

    auto certificate = [&](const Eval& e, const double* h) {
        double lin = 0.0, sigma = 0.0;
        for (int i = 0; i < E::dims; ++i) {
            lin += (std::abs(e.d[i]) + ev.pad_grad) * h[i];
            sigma += ev.freq[i] * h[i];
        }
        const double c = e.g + ev.pad_g + lin + 0.25 * sigma * sigma * curv_bound;
        return c * (1.0 + 8.0 * kEps);
    };

    std::priority_queue<Box, std::vector<Box>, BoxLess> queue;
    int grid[2] = {1, 1};
    for (int i = 0; i < E::dims; ++i)
        grid[i] = std::max(E::dims == 1 ? 16 : 6, static_cast<int>(2.0 * (ev.freq[i] + 1.0)));

    std::int64_t count = 0;
    bool stop = false;
    for (int i0 = 0; i0 < grid[0] && !stop; ++i0) {
        for (int i1 = 0; i1 < grid[1] && !stop; ++i1) {
            Box b{};
            const int idx[2] = {i0, i1};
            for (int i = 0; i < 2; ++i) {
                if (i < E::dims) {
                    b.h[i] = 0.5 * (ev.hi[i] - ev.lo[i]) / grid[i];
                    b.c[i] = ev.lo[i] + (2 * idx[i] + 1) * b.h[i];
                } else {
                    b.h[i] = 0.0;
                    b.c[i] = 0.0;
                }
            }
            const Eval e = ev.eval(b.c[0], b.c[1]);
            ++count;
            L = std::max(L, e.g - ev.pad_g);
            b.cert = certificate(e, b.h);
            queue.push(b);
            if (done(L, U)) stop = true;
        }
    }

    while (!stop) {
        if (queue.empty()) {
            U = std::min(U, L);
            stop = done(L, U);
            break;
        }
        const Box top = queue.top();
        U = std::min(U, std::max(top.cert, L));
        curv_bound = U;
        if (done(L, U)) {
            stop = true;
            break;
        }
        if (count >= budget) break;
        queue.pop();
        if (top.cert <= L) continue;

        int axis = 0;
        if (E::dims == 2 && ev.freq[1] * top.h[1] + top.h[1] * 1e-3 > ev.freq[0] * top.h[0] + top.h[0] * 1e-3)
            axis = 1;
        for (int side = -1; side <= 1; side += 2) {
            Box child = top;
            child.h[axis] = 0.5 * top.h[axis];
            child.c[axis] = top.c[axis] + side * child.h[axis];
            const Eval e = ev.eval(child.c[0], child.c[1]);
            ++count;
            L = std::max(L, e.g - ev.pad_g);
            child.cert = certificate(e, child.h);
            if (child.cert > L) queue.push(child);
        }
    }
    out.lower = std::max(L, 0.0);
    out.upper = std::max(U, out.lower);
    out.done = stop;
    out.boxes = count;
    return out;
}

// Real50 sup of the Fubini-Study monomial t^j in degree n:
// sqrt(j^j (n-j)^(n-j) / n^n).
Enclosure fs_monomial_sup(int n, int j) {
    if (n == 0) return {1.0, 1.0};
    auto xlogx = [](int k) { return k == 0 ? Real50(0) : Real50(k) * boost::multiprecision::log(Real50(k)); };
    Real50 v = boost::multiprecision::exp((xlogx(j) + xlogx(n - j) - xlogx(n)) / 2);
    return enclose(v);
}

template <class T>
bool is_zero_vector(std::span<const T> a) {
    return std::all_of(a.begin(), a.end(), [](const T& x) { return x == 0; });
}

template <class T>
int support_size(std::span<const T> a) {
    return static_cast<int>(std::count_if(a.begin(), a.end(), [](const T& x) { return x != 0; }));
}

// True when sup |f| over the circle/torus is provably sum |a|: at most two
// terms (phases can always be aligned), or alignment at a point whose
// coordinates are fourth roots of unity (checked exactly).
template <class T, class Acc>
bool canonical_sup_is_l1(ModelKind kind, int n, std::span<const T> a) {
    if (support_size(a) <= 2) return true;
    Acc l1 = 0;
    for (const auto& x : a) l1 += x < 0 ? Acc(-x) : Acc(x);
    const auto exps = monomial_exponents(kind, n);
    const int choices = kind == ModelKind::P1Z ? 4 : 16;
    for (int c = 0; c < choices; ++c) {
        const int e1 = c % 4, e2 = c / 4;
        Acc re = 0, im = 0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] == 0) continue;
            const auto [i, j] = exps[k];
            const int phase = (kind == ModelKind::P1Z ? e1 * i : e1 * i + e2 * j) % 4;
            const Acc v = Acc(a[k]);
            switch (phase) {
                case 0: re += v; break;
                case 1: im += v; break;
                case 2: re -= v; break;
                default: im -= v; break;
            }
        }
        if (re * re + im * im == l1 * l1) return true;
    }
    return false;
}

}  // namespace

int SectionSpace::rank() const {
    if (kind == ModelKind::P1Z) return n + 1;
    return (n + 1) * (n + 2) / 2;
}

SectionSpace section_space(const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "power m must be >= 0");
    const std::int64_t n = bundle.degree() * m;
    if (n > 100000) throw Error(ErrorKind::ScopeExceeded, "degree a m too large");
    return {bundle.model().kind, bundle.family(), static_cast<int>(n)};
}

NormBound::NormBound(Rational log_part, Rational mult) : log_part_(std::move(log_part)), mult_(std::move(mult)) {
    if (mult_ <= 0) throw Error(ErrorKind::InvalidArgument, "norm bound multiplier must be positive");
}

Real50 NormBound::value() const { return to_real(mult_) * exp_rational(log_part_); }

Enclosure NormBound::enclosure() const { return enclose(value()); }

Enclosure NormBound::squared() const {
    const Real50 v = value();
    return enclose(v * v);
}

BigInt NormBound::floor_times(const BigInt& scale) const {
    if (log_part_ == 0) {
        const Rational q = mult_ * Rational(scale);
        const BigInt num = boost::multiprecision::numerator(q);
        const BigInt den = boost::multiprecision::denominator(q);
        BigInt f = num / den;
        if (num < 0 && f * den != num) f -= 1;
        return f;
    }
    BigInt out;
    if (!floor_certified(value() * Real50(scale), out))
        throw Error(ErrorKind::AmbiguousBoundary, "norm threshold indistinguishable from an integer");
    return out;
}

BigInt NormBound::floor_squared_times(const BigInt& scale) const {
    if (log_part_ == 0) {
        const Rational q = mult_ * mult_ * Rational(scale);
        return boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
    }
    const Real50 v = value();
    BigInt out;
    if (!floor_certified(v * v * Real50(scale), out))
        throw Error(ErrorKind::AmbiguousBoundary, "norm threshold indistinguishable from an integer");
    return out;
}

int NormBound::compare(const BigInt& N, const BigInt& scale, bool squared) const {
    if (log_part_ == 0) {
        const Rational rhs = (squared ? mult_ * mult_ : mult_) * Rational(scale);
        const Rational lhs(N);
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }
    if (N <= 0) return -1;
    const Real50 k = squared ? 2 : 1;
    const Real50 diff = boost::multiprecision::log(Real50(N)) - boost::multiprecision::log(Real50(scale)) -
                        k * (boost::multiprecision::log(to_real(mult_)) + to_real(log_part_));
    if (boost::multiprecision::abs(diff) < Real50("1e-40"))
        throw Error(ErrorKind::AmbiguousBoundary, "integer indistinguishable from the norm threshold");
    return diff < 0 ? -1 : 1;
}

NormBound NormBound::divided_by(const BigInt& q) const {
    if (q <= 0) throw Error(ErrorKind::InvalidArgument, "divisor must be positive");
    return NormBound(log_part_, mult_ / Rational(q));
}

SupResult sup_enclosure(const SectionSpace& space, std::span<const double> coeffs, const SupOptions& options) {
    if (static_cast<int>(coeffs.size()) != space.rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    SupResult res;
    const int support = support_size(coeffs);
    if (support == 0) {
        res.value = {0.0, 0.0};
        res.converged = true;
        return res;
    }
    if (support == 1) {
        std::size_t k = 0;
        while (coeffs[k] == 0.0) ++k;
        const double a = std::abs(coeffs[k]);
        if (space.family == MetricFamily::Canonical) {
            res.value = {a, a};
        } else {
            const Enclosure mu = fs_monomial_sup(space.n, static_cast<int>(k));
            res.value = {down(a * mu.lo), up(a * mu.hi)};
        }
        res.converged = true;
        return res;
    }

    const double tol = options.tolerance;
    auto tol_done = [tol](double L, double U) { return std::sqrt(U) - std::sqrt(std::max(L, 0.0)) <= tol; };
    BnbOutcome o;
    if (space.family == MetricFamily::FubiniStudy) {
        double upper = 0.0;
        for (int j = 0; j <= space.n; ++j)
            if (coeffs[j] != 0.0) upper += std::abs(coeffs[j]) * fs_monomial_sup(space.n, j).hi;
        SphereEval ev(coeffs, space.n, up(upper));
        o = maximize(ev, tol_done, options.budget);
    } else if (space.kind == ModelKind::P1Z) {
        CircleEval ev(coeffs);
        o = maximize(ev, tol_done, options.budget);
    } else {
        TorusEval ev(coeffs, space.n);
        o = maximize(ev, tol_done, options.budget);
    }
    res.value = {down(std::sqrt(o.lower)), up(std::sqrt(o.upper))};
    res.converged = o.done;
    res.boxes = o.boxes;
    return res;
}

Enclosure sup_norm(const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs,
                   const SupOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "sup_norm needs m >= 1");
    const SectionSpace space = section_space(bundle, m);
    if (static_cast<int>(coeffs.size()) != space.rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    std::vector<double> a(coeffs.begin(), coeffs.end());
    const SupResult r = sup_enclosure(space, a, options);
    if (!r.converged) throw Error(ErrorKind::BudgetExhausted, "sup-norm tolerance not reached within budget");
    // ||s|| = |f| e^{-m c}; vertical twists do not change the metric.
    const Rational mc = bundle.c() * m;
    if (mc == 0) return r.value;
    const Enclosure scale = enclose(exp_rational(-mc));
    return {down(r.value.lo * scale.lo), up(r.value.hi * scale.hi)};
}

Rational l2_norm_squared(const SectionSpace& space, std::span<const std::int64_t> coeffs) {
    if (static_cast<int>(coeffs.size()) != space.rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    Rational total = 0;
    if (space.family == MetricFamily::Canonical) {
        for (auto a : coeffs) total += Rational(BigInt(a) * a);
        return total;
    }
    const int n = space.n;
    std::vector<BigInt> fact(n + 2, 1);
    for (int k = 1; k <= n + 1; ++k) fact[k] = fact[k - 1] * k;
    for (int i = 0; i <= n; ++i)
        total += Rational(BigInt(coeffs[i]) * coeffs[i] * fact[i] * fact[n - i], fact[n + 1]);
    return total;
}

Rational l2_norm_squared(const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs) {
    return l2_norm_squared(section_space(bundle, m), coeffs);
}

Real50 min_nonzero_norm_logbound(const SectionSpace& space) {
    if (space.family == MetricFamily::Canonical) return Real50(0);
    const int n = space.n;
    BigInt best_num = -1;
    std::vector<BigInt> fact(n + 2, 1);
    for (int k = 1; k <= n + 1; ++k) fact[k] = fact[k - 1] * k;
    for (int i = 0; i <= n; ++i) {
        const BigInt w = fact[i] * fact[n - i];
        if (best_num < 0 || w < best_num) best_num = w;
    }
    return boost::multiprecision::log(Real50(best_num) / Real50(fact[n + 1])) / 2;
}

double min_nonzero_norm_logbound(const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 0");
    return min_nonzero_norm_logbound(section_space(bundle, m)).convert_to<double>();
}

BigInt cross_polytope_count(std::int64_t r, const BigInt& k) {
    if (k < 0) return 0;
    BigInt total = 0;
    BigInt binom_r = 1;  // C(r, i)
    BigInt binom_k = 1;  // C(k, i)
    BigInt pow2 = 1;
    for (std::int64_t i = 0; i <= r; ++i) {
        if (i > 0) {
            if (BigInt(i) > k) break;
            binom_r = binom_r * (r - i + 1) / i;
            binom_k = binom_k * (k - i + 1) / i;
            pow2 *= 2;
        }
        total += pow2 * binom_r * binom_k;
    }
    return total;
}

NormBodyBounds norm_body_bounds(const SectionSpace& space, const NormBound& R, const BigInt& D) {
    NormBodyBounds out;
    const int r = space.rank();
    out.n = r;
    const NormBound Rd = R.divided_by(D);

    // Inner: {sum |b_j| <= R/D}. Every monomial has sup <= 1 in both
    // families, so this cross-polytope lies inside the sup-norm body.
    BigInt k;
    try {
        k = Rd.floor_times(1);
    } catch (const Error&) {
        // Huge bound: any integer below R/D still gives an inner body.
        k = floor_real(Rd.value() * (1 - Real50("1e-40")));
    }
    const BigInt inner = cross_polytope_count(r, k);
    out.inner_log_count = boost::multiprecision::log(Real50(inner)).convert_to<double>();

    // Outer: {sup <= R} lies in the L2 ellipsoid E with semi-axes
    // R / sqrt(w_i); unit cubes around its lattice points lie in E + B(rho),
    // rho = sqrt(r)/2, which is inside (1 + rho/a_min) E.
    Real50 log_axes = 0;
    Real50 log_amin = 0;
    const Real50 logR = boost::multiprecision::log(Rd.value());
    bool first = true;
    if (space.family == MetricFamily::Canonical) {
        log_axes = logR * r;
        log_amin = logR;
    } else {
        const int n = space.n;
        std::vector<Real50> lf(n + 2, Real50(0));
        for (int q = 1; q <= n + 1; ++q) lf[q] = lf[q - 1] + boost::multiprecision::log(Real50(q));
        for (int i = 0; i <= n; ++i) {
            const Real50 log_w = lf[i] + lf[n - i] - lf[n + 1];
            const Real50 la = logR - log_w / 2;
            log_axes += la;
            if (first || la < log_amin) log_amin = la;
            first = false;
        }
    }
    const Real50 rho = boost::multiprecision::sqrt(Real50(r)) / 2;
    const Real50 infl = Real50(r) * boost::multiprecision::log1p(rho / boost::multiprecision::exp(log_amin));
    const long double half = static_cast<long double>(r) / 2.0L;
    const long double log_omega = half * std::log(std::numbers::pi_v<long double>) - std::lgamma(half + 1.0L);
    const Real50 outer = Real50(static_cast<double>(log_omega)) + log_axes + infl;
    double outer_d = outer.convert_to<double>();
    outer_d += 1e-9 * (std::abs(outer_d) + 1.0);
    out.outer_log_count = std::max(outer_d, out.inner_log_count);
    return out;
}

NormBodyBounds norm_body_bounds(const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "norm_body_bounds needs m >= 1");
    return norm_body_bounds(section_space(bundle, m), NormBound(bundle.c() * m, 1), bundle.divisor(m));
}

SupNormOracle::SupNormOracle(const SectionSpace& space, const NormBound& bound, std::int64_t budget)
    : space_(space), bound_(bound), budget_(budget) {
    const int r = space.rank();
    weights_.assign(r, BigInt(1));
    BigInt scale = 1;
    if (space.family == MetricFamily::FubiniStudy) {
        const int n = space.n;
        std::vector<BigInt> fact(n + 2, 1);
        for (int k = 1; k <= n + 1; ++k) fact[k] = fact[k - 1] * k;
        for (int i = 0; i <= n; ++i) weights_[i] = fact[i] * fact[n - i];
        scale = fact[n + 1];
        monomial_sup_.resize(r);
        for (int j = 0; j <= n; ++j) monomial_sup_[j] = fs_monomial_sup(n, j).hi;
    }
    l2_scale_ = scale;
    try {
        l1_limit_ = bound.floor_times(1);
        l2_limit_ = bound.floor_squared_times(scale);
    } catch (const Error&) {
        // Too large for an exact floor: keep rounded-up limits for pruning
        // and decide through NormBound::compare.
        exact_limits_ = false;
        const Real50 v = bound.value();
        l1_limit_ = floor_real(v) + 1;
        l2_limit_ = floor_real(v * v * Real50(scale)) + 1;
    }
    r_ = bound.enclosure();
    r2_ = bound.squared();
}

bool SupNormOracle::l2_exceeds(const BigInt& l2) const {
    if (exact_limits_) return l2 > l2_limit_;
    try {
        return bound_.compare(l2, l2_scale_, true) > 0;
    } catch (const Error&) {
        return false;
    }
}

int SupNormOracle::l1_side(const BigInt& l1) const {
    if (exact_limits_) return l1 <= l1_limit_ ? -1 : 1;
    try {
        return bound_.compare(l1);
    } catch (const Error&) {
        return 2;
    }
}

Membership SupNormOracle::decide_double(std::span<const double> a, bool monomial) const {
    const double T_lo = r2_.lo, T_hi = r2_.hi;
    auto decision_done = [T_lo, T_hi](double L, double U) { return U <= T_lo || L > T_hi; };
    BnbOutcome o;
    if (space_.family == MetricFamily::FubiniStudy) {
        double upper = 0.0;
        int k_mono = -1;
        for (int j = 0; j <= space_.n; ++j)
            if (a[j] != 0.0) {
                upper += std::abs(a[j]) * monomial_sup_[j];
                k_mono = j;
            }
        upper = up(upper * (1.0 + 8.0 * (space_.n + 2) * kEps));
        if (upper <= r_.lo) return Membership::In;
        if (monomial) {
            const Enclosure mu = fs_monomial_sup(space_.n, k_mono);
            const double v_lo = down(std::abs(a[k_mono]) * mu.lo);
            if (v_lo > r_.hi) return Membership::Out;
            return Membership::Ambiguous;
        }
        SphereEval ev(a, space_.n, upper);
        o = maximize(ev, decision_done, budget_);
    } else if (space_.kind == ModelKind::P1Z) {
        CircleEval ev(a);
        o = maximize(ev, decision_done, budget_);
    } else {
        TorusEval ev(a, space_.n);
        o = maximize(ev, decision_done, budget_);
    }
    if (o.upper <= T_lo) return Membership::In;
    if (o.lower > T_hi) return Membership::Out;
    return Membership::Ambiguous;
}

Membership SupNormOracle::decide(std::span<const std::int64_t> a) const {
    if (static_cast<int>(a.size()) != space_.rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    if (is_zero_vector(a)) return Membership::In;
    __int128 l1 = 0;
    BigInt l2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        l1 += a[i] < 0 ? -static_cast<__int128>(a[i]) : static_cast<__int128>(a[i]);
        l2 += weights_[i] * (BigInt(a[i]) * a[i]);
    }
    if (l2_exceeds(l2)) return Membership::Out;
    if (space_.family == MetricFamily::Canonical) {
        const int c = l1_side(BigInt(static_cast<long long>(l1)));
        if (c <= 0) return Membership::In;
        if (c == 1 && canonical_sup_is_l1<std::int64_t, __int128>(space_.kind, space_.n, a)) return Membership::Out;
    }
    std::vector<double> d(a.begin(), a.end());
    return decide_double(d, support_size(a) == 1);
}

Membership SupNormOracle::decide(std::span<const BigInt> a) const {
    if (static_cast<int>(a.size()) != space_.rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    if (is_zero_vector(a)) return Membership::In;
    BigInt l1 = 0, l2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        l1 += boost::multiprecision::abs(a[i]);
        l2 += weights_[i] * a[i] * a[i];
    }
    if (l2_exceeds(l2)) return Membership::Out;
    if (space_.family == MetricFamily::Canonical) {
        const int c = l1_side(l1);
        if (c <= 0) return Membership::In;
        if (c == 1 && canonical_sup_is_l1<BigInt, BigInt>(space_.kind, space_.n, a)) return Membership::Out;
    }
    std::vector<double> d;
    d.reserve(a.size());
    for (const auto& x : a) d.push_back(x.convert_to<double>());
    return decide_double(d, support_size(a) == 1);
}

}  // namespace arithvol
