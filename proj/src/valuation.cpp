#include "arithvol/valuation.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace arithvol {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t p) {
    x %= p;
    return x < 0 ? x + p : x;
}

std::int64_t mod(const BigInt& x, std::int64_t p) {
    BigInt r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::int64_t>();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, new_t = 1, r = p, new_r = mod(a, p);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) throw Error(ErrorKind::InvalidArgument, "element not invertible mod p");
    return mod(t, p);
}

// Dense forms over F_p in 2 (P1Z) or 3 (P2Z) variables, indexed like
// monomial_exponents: entry (i, j) is Z0^(deg-i-j) Z1^i Z2^j.
int form_index(ModelKind kind, int deg, int i, int j) {
    if (kind == ModelKind::P1Z) return i;
    return i * (deg + 1) - i * (i - 1) / 2 + j;
}

std::vector<std::int64_t> form_multiply(ModelKind kind, std::int64_t p, int d1, const std::vector<std::int64_t>& f,
                                        int d2, const std::vector<std::int64_t>& g) {
    const auto e1 = monomial_exponents(kind, d1);
    const auto e2 = monomial_exponents(kind, d2);
    const int d = d1 + d2;
    std::vector<std::int64_t> h(monomial_exponents(kind, d).size(), 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] == 0) continue;
        for (std::size_t y = 0; y < g.size(); ++y) {
            if (g[y] == 0) continue;
            auto& slot = h[form_index(kind, d, e1[x].first + e2[y].first, e1[x].second + e2[y].second)];
            slot = (slot + f[x] * g[y]) % p;
        }
    }
    return h;
}

using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

// Images of all degree-n monomials in the Z variables under Z_i = sum_j M[i][j] W_j.
std::vector<std::vector<std::int64_t>> substitute(ModelKind kind, std::int64_t p, int n, const Mat3& M) {
    const int vars = kind == ModelKind::P1Z ? 2 : 3;
    std::vector<std::vector<std::vector<std::int64_t>>> pw(vars);
    for (int i = 0; i < vars; ++i) {
        std::vector<std::int64_t> lin(vars, 0);
        // Degree-1 indices: W0 -> 0; P1Z: W1 -> 1; P2Z: W1 -> 2, W2 -> 1.
        lin[0] = mod(M[i][0], p);
        if (kind == ModelKind::P1Z) {
            lin[1] = mod(M[i][1], p);
        } else {
            lin[form_index(kind, 1, 1, 0)] = mod(M[i][1], p);
            lin[form_index(kind, 1, 0, 1)] = mod(M[i][2], p);
        }
        pw[i].push_back({1});
        for (int e = 1; e <= n; ++e) pw[i].push_back(form_multiply(kind, p, e - 1, pw[i].back(), 1, lin));
    }
    const auto exps = monomial_exponents(kind, n);
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(exps.size());
    for (const auto& [a, b] : exps) {
        const int e0 = n - a - b;
        auto prod = form_multiply(kind, p, e0, pw[0][e0], a, pw[1][a]);
        if (kind == ModelKind::P2Z) prod = form_multiply(kind, p, e0 + a, prod, b, pw[2][b]);
        out.push_back(std::move(prod));
    }
    return out;
}

Mat3 adapted_matrix(const Flag& flag) {
    const std::int64_t p = flag.p;
    Mat3 A{};
    if (flag.model.kind == ModelKind::P1Z) {
        if (flag.at_infinity) {
            A[0] = {0, 1, 0};
            A[1] = {1, 0, 0};
        } else {
            A[0] = {1, 0, 0};
            A[1] = {flag.alpha, 1, 0};
        }
        return A;
    }
    const auto& l = flag.line;
    const auto& P = flag.point;
    int s = 0;
    while (l[s] == 0) ++s;
    const std::int64_t ls_inv = inv_mod(l[s], p);
    auto cross_zero = [p](const std::array<std::int64_t, 3>& u, const std::array<std::int64_t, 3>& v) {
        return mod(u[1] * v[2] - u[2] * v[1], p) == 0 && mod(u[2] * v[0] - u[0] * v[2], p) == 0 &&
               mod(u[0] * v[1] - u[1] * v[0], p) == 0;
    };
    std::array<std::int64_t, 3> Q{};
    for (int j = 0; j < 3; ++j) {
        if (j == s) continue;
        std::array<std::int64_t, 3> v{};
        v[j] = 1;
        v[s] = mod(-l[j] * ls_inv, p);
        if (!cross_zero(v, P)) {
            Q = v;
            break;
        }
    }
    std::array<std::int64_t, 3> R{};
    R[s] = 1;
    for (int i = 0; i < 3; ++i) A[i] = {P[i], Q[i], R[i]};
    return A;
}

Mat3 inverse_matrix(const Mat3& A, int size, std::int64_t p) {
    Mat3 inv{};
    if (size == 2) {
        const std::int64_t det = mod(A[0][0] * A[1][1] - A[0][1] * A[1][0], p);
        const std::int64_t di = inv_mod(det, p);
        inv[0] = {mod(A[1][1] * di, p), mod(-A[0][1] * di, p), 0};
        inv[1] = {mod(-A[1][0] * di, p), mod(A[0][0] * di, p), 0};
        return inv;
    }
    auto cof = [&](int r, int c) {
        const int r1 = (r + 1) % 3, r2 = (r + 2) % 3, c1 = (c + 1) % 3, c2 = (c + 2) % 3;
        return mod(A[r1][c1] * A[r2][c2] - A[r1][c2] * A[r2][c1], p);
    };
    std::int64_t det = 0;
    for (int c = 0; c < 3; ++c) det = mod(det + A[0][c] * cof(0, c), p);
    const std::int64_t di = inv_mod(det, p);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) inv[r][c] = mod(cof(c, r) * di, p);
    return inv;
}

// Row echelon form over F_p (reduced, pivots 1). Returns the nonzero rows.
std::vector<std::vector<std::int64_t>> rref(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const std::int64_t iv = inv_mod(rows[r][c], p);
        for (auto& x : rows[r]) x = x * iv % p;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][c] == 0) continue;
            const std::int64_t f = rows[o][c];
            for (std::size_t k = 0; k < cols; ++k) rows[o][k] = mod(rows[o][k] - f * rows[r][k], p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

bool key_geq(const Point& a, const Point& b) { return !std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

}  // namespace

Flag make_flag_p1(std::int64_t p, std::int64_t alpha) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    if (alpha < 0 || alpha >= p) throw Error(ErrorKind::NotRational, "alpha must be reduced mod p");
    Flag f;
    f.model = make_model(ModelKind::P1Z);
    f.p = p;
    f.alpha = alpha;
    return f;
}

Flag make_flag_p1_infinity(std::int64_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    Flag f;
    f.model = make_model(ModelKind::P1Z);
    f.p = p;
    f.at_infinity = true;
    return f;
}

Flag make_flag_p2(std::int64_t p, const std::array<std::int64_t, 3>& line, const std::array<std::int64_t, 3>& point) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    auto reduced = [p](const std::array<std::int64_t, 3>& v) {
        return std::all_of(v.begin(), v.end(), [p](std::int64_t x) { return x >= 0 && x < p; }) &&
               std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    };
    if (!reduced(line) || !reduced(point))
        throw Error(ErrorKind::NotRational, "flag data must be nonzero vectors reduced mod p");
    if (mod(line[0] * point[0] + line[1] * point[1] + line[2] * point[2], p) != 0)
        throw Error(ErrorKind::NotRational, "flag point does not lie on the line");
    Flag f;
    f.model = make_model(ModelKind::P2Z);
    f.p = p;
    f.line = line;
    f.point = point;
    return f;
}

Flag standard_flag_p2(std::int64_t p) { return make_flag_p2(p, {0, 0, 1}, {1, 0, 0}); }

std::string to_string(const Flag& flag) {
    std::string s = "p=" + std::to_string(flag.p);
    if (flag.model.kind == ModelKind::P1Z) return s + (flag.at_infinity ? " alpha=inf" : " alpha=" + std::to_string(flag.alpha));
    auto vec = [](const std::array<std::int64_t, 3>& v) {
        return "[" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + "]";
    };
    return s + " line=" + vec(flag.line) + " point=" + vec(flag.point);
}

FiberValuation::FiberValuation(const Flag& flag, int n) : flag_(flag), n_(n) {
    const ModelKind kind = flag.model.kind;
    const Mat3 A = adapted_matrix(flag);
    const Mat3 Ainv = inverse_matrix(A, kind == ModelKind::P1Z ? 2 : 3, flag.p);
    // X = A Y: X-monomials expand in Y; Y = Ainv X: adapted monomials expand in X.
    forward_ = substitute(kind, flag.p, n, A);
    inverse_ = substitute(kind, flag.p, n, Ainv);
    for (const auto& [a, b] : monomial_exponents(kind, n)) {
        if (kind == ModelKind::P1Z)
            keys_.push_back({a});
        else
            keys_.push_back({b, a});
    }
}

Point FiberValuation::nu_reduced(const std::vector<std::int64_t>& reduced) const {
    const std::int64_t p = flag_.p;
    std::vector<std::int64_t> y(keys_.size(), 0);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (reduced[k] == 0) continue;
        const auto& col = forward_[k];
        for (std::size_t t = 0; t < col.size(); ++t)
            if (col[t] != 0) y[t] = (y[t] + reduced[k] * col[t]) % p;
    }
    const Point* best = nullptr;
    for (std::size_t t = 0; t < y.size(); ++t)
        if (y[t] != 0 && (best == nullptr || std::lexicographical_compare(keys_[t].begin(), keys_[t].end(),
                                                                           best->begin(), best->end())))
            best = &keys_[t];
    if (best == nullptr) throw Error(ErrorKind::ZeroSection, "reduced section vanishes");
    return *best;
}

Point FiberValuation::nu(std::span<const std::int64_t> coeffs) const {
    if (static_cast<int>(coeffs.size()) != rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    const std::int64_t p = flag_.p;
    int content = -1;
    for (auto a : coeffs)
        if (a != 0) {
            const int v = padic_valuation(a, p);
            if (content < 0 || v < content) content = v;
        }
    if (content < 0) throw Error(ErrorKind::ZeroSection, "valuation of the zero section");
    std::int64_t pc = 1;
    for (int i = 0; i < content; ++i) pc *= p;
    std::vector<std::int64_t> reduced(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) reduced[k] = mod(coeffs[k] / pc, p);
    Point out{content};
    const Point rest = nu_reduced(reduced);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Point FiberValuation::nu(std::span<const BigInt> coeffs) const {
    if (static_cast<int>(coeffs.size()) != rank())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    const std::int64_t p = flag_.p;
    int content = -1;
    for (const auto& a : coeffs)
        if (a != 0) {
            const int v = padic_valuation(a, p);
            if (content < 0 || v < content) content = v;
        }
    if (content < 0) throw Error(ErrorKind::ZeroSection, "valuation of the zero section");
    const BigInt pc = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(content));
    std::vector<std::int64_t> reduced(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) reduced[k] = mod(coeffs[k] / pc, p);
    Point out{content};
    const Point rest = nu_reduced(reduced);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

std::vector<std::int64_t> FiberValuation::adapted_monomial(int k) const { return inverse_.at(k); }

std::vector<std::vector<std::int64_t>> FiberValuation::filtration_basis(const Point& key) const {
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t k = 0; k < keys_.size(); ++k)
        if (key_geq(keys_[k], key)) rows.push_back(inverse_[k]);
    return rref(std::move(rows), flag_.p);
}

Point nu(const Flag& flag, const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs) {
    if (!(flag.model == bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag and bundle models differ");
    const SectionSpace space = section_space(bundle, m);
    return FiberValuation(flag, space.n).nu(coeffs);
}

NuBounds nu_bounds(const Flag& flag, const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "nu_bounds needs m >= 1");
    if (!(flag.model == bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag and bundle models differ");
    const SectionSpace space = section_space(bundle, m);
    NuBounds b;
    b.x_min = m * bundle.twist_multiplicity(flag.p);
    // s = p^x D' g with g integral and nonzero, D' the twist divisor away
    // from p, so x log p + log D' + lambda <= m c.
    Real50 rhs = to_real(bundle.c()) * m - min_nonzero_norm_logbound(space);
    for (const auto& t : bundle.twists())
        if (t.p != flag.p) rhs -= Real50(m * t.k) * log_integer(t.p);
    const Real50 q = rhs / log_integer(flag.p) + Real50("1e-30");
    std::int64_t x_max = q < 0 ? -1 : floor_real(q).convert_to<std::int64_t>();
    b.upper.push_back(x_max);
    b.upper.push_back(space.n);
    if (space.kind == ModelKind::P2Z) b.upper.push_back(space.n);
    b.total = space.n;
    return b;
}

ValuationImage valuation_image_of(const EffectiveSectionSet& set, const Flag& flag) {
    if (!(flag.model == set.bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag and bundle models differ");
    if (set.ambiguous_count > 0)
        throw Error(ErrorKind::AmbiguousBoundary, "effective set has uncertified boundary sections");
    const int n = static_cast<int>(set.bundle.degree() * set.m);
    const FiberValuation fv(flag, n);
    std::set<Point> pts;
    for (const auto& s : set.members) {
        if (std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; })) continue;
        pts.insert(fv.nu(s));
    }
    ValuationImage img;
    img.flag = flag;
    img.bundle = set.bundle;
    img.m = set.m;
    img.verified.assign(pts.begin(), pts.end());
    img.bounds = nu_bounds(flag, set.bundle, set.m);
    return img;
}

ValuationImage valuation_image_exact(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                     const EnumerateOptions& options) {
    return valuation_image_of(enumerate_effective(bundle, m, options), flag);
}

// ---------------------------------------------------------------- LLL

namespace {

struct ExactGso {
    std::vector<BigInt> d;                // d[0] = 1, d[i+1] = Gram det of rows 0..i
    std::vector<std::vector<BigInt>> lam;  // lam[k][j] = d[j+1] mu_kj
};

BigInt weighted_dot(const std::vector<BigInt>& x, const std::vector<BigInt>& y, const std::vector<BigInt>& w) {
    BigInt s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0 || y[i] == 0) continue;
        if (w.empty())
            s += x[i] * y[i];
        else
            s += w[i] * x[i] * y[i];
    }
    return s;
}

void axpy(std::vector<BigInt>& y, const BigInt& q, const std::vector<BigInt>& x) {
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i] != 0) y[i] -= q * x[i];
}

BigInt round_div(const BigInt& a, const BigInt& b) {
    // nearest integer to a / b, b > 0
    BigInt twice = 2 * a + b;
    BigInt q = twice / (2 * b);
    if (twice < 0 && q * 2 * b != twice) q -= 1;
    return q;
}

// Floating LLL pre-pass. Cheap for nearly reduced inputs; any outcome is a
// valid basis change, and the exact pass below is authoritative.
void float_lll(IntMatrix& b, IntMatrix& H, const std::vector<BigInt>& w) {
    const int n = static_cast<int>(b.size());
    const std::size_t dim = b[0].size();
    std::vector<long double> wf(dim, 1.0L);
    for (std::size_t i = 0; i < w.size(); ++i) wf[i] = w[i].convert_to<long double>();
    std::vector<std::vector<long double>> bf(n, std::vector<long double>(dim));
    auto refresh = [&](int k) {
        for (std::size_t i = 0; i < dim; ++i) bf[k][i] = b[k][i].convert_to<long double>();
    };
    for (int k = 0; k < n; ++k) refresh(k);
    std::vector<std::vector<long double>> bstar(n, std::vector<long double>(dim));
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0.0L));
    std::vector<long double> Bn(n, 0.0L);
    auto dot = [&](const std::vector<long double>& x, const std::vector<long double>& y) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < dim; ++i) s += wf[i] * x[i] * y[i];
        return s;
    };
    auto gso_row = [&](int k) {
        bstar[k] = bf[k];
        for (int j = 0; j < k; ++j) {
            mu[k][j] = Bn[j] > 0 ? dot(bf[k], bstar[j]) / Bn[j] : 0.0L;
            for (std::size_t i = 0; i < dim; ++i) bstar[k][i] -= mu[k][j] * bstar[j][i];
        }
        Bn[k] = dot(bstar[k], bstar[k]);
    };
    gso_row(0);
    int k = 1;
    const long long max_iter = 50LL * n * n + 1000;
    long long iter = 0;
    while (k < n && iter++ < max_iter) {
        gso_row(k);
        for (int j = k - 1; j >= 0; --j) {
            const long double q = std::round(mu[k][j]);
            if (q == 0.0L || !std::isfinite(q)) continue;
            const BigInt qi(static_cast<long long>(q));
            axpy(b[k], qi, b[j]);
            axpy(H[k], qi, H[j]);
            for (int i = 0; i < j; ++i) mu[k][i] -= q * mu[j][i];
            mu[k][j] -= q;
        }
        refresh(k);
        gso_row(k);
        if (Bn[k] < (0.99L - mu[k][k - 1] * mu[k][k - 1]) * Bn[k - 1]) {
            std::swap(b[k], b[k - 1]);
            std::swap(H[k], H[k - 1]);
            std::swap(bf[k], bf[k - 1]);
            gso_row(k - 1);
            k = std::max(k - 1, 1);
        } else {
            ++k;
        }
    }
}

void exact_lll(IntMatrix& b, IntMatrix& H, const std::vector<BigInt>& w, ExactGso& g) {
    const int n = static_cast<int>(b.size());
    g.d.assign(n + 1, BigInt(0));
    g.lam.assign(n, std::vector<BigInt>(n, BigInt(0)));
    g.d[0] = 1;
    g.d[1] = weighted_dot(b[0], b[0], w);
    if (g.d[1] == 0) throw Error(ErrorKind::RankDeficient, "zero basis vector");
    auto red = [&](int k, int l) {
        if (2 * boost::multiprecision::abs(g.lam[k][l]) <= g.d[l + 1]) return;
        const BigInt q = round_div(g.lam[k][l], g.d[l + 1]);
        axpy(b[k], q, b[l]);
        axpy(H[k], q, H[l]);
        g.lam[k][l] -= q * g.d[l + 1];
        for (int i = 0; i < l; ++i) g.lam[k][i] -= q * g.lam[l][i];
    };
    int k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 0; j <= k; ++j) {
                BigInt u = weighted_dot(b[k], b[j], w);
                for (int i = 0; i < j; ++i) u = (g.d[i + 1] * u - g.lam[k][i] * g.lam[j][i]) / g.d[i];
                if (j < k) {
                    g.lam[k][j] = u;
                } else {
                    if (u == 0) throw Error(ErrorKind::RankDeficient, "basis vectors are linearly dependent");
                    g.d[k + 1] = u;
                }
            }
        }
        red(k, k - 1);
        const BigInt& lam = g.lam[k][k - 1];
        if (100 * g.d[k + 1] * g.d[k - 1] < 99 * g.d[k] * g.d[k] - 100 * lam * lam) {
            std::swap(b[k], b[k - 1]);
            std::swap(H[k], H[k - 1]);
            for (int j = 0; j < k - 1; ++j) std::swap(g.lam[k][j], g.lam[k - 1][j]);
            const BigInt L = g.lam[k][k - 1];
            const BigInt B = (g.d[k - 1] * g.d[k + 1] + L * L) / g.d[k];
            for (int i = k + 1; i <= kmax; ++i) {
                const BigInt t = g.lam[i][k];
                g.lam[i][k] = (g.d[k + 1] * g.lam[i][k - 1] - L * t) / g.d[k];
                g.lam[i][k - 1] = (B * t + L * g.lam[i][k]) / g.d[k + 1];
            }
            g.d[k] = B;
            k = std::max(1, k - 1);
        } else {
            for (int l = k - 2; l >= 0; --l) red(k, l);
            ++k;
        }
    }
}

IntMatrix identity(int n) {
    IntMatrix I(n, std::vector<BigInt>(n, BigInt(0)));
    for (int i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix multiply(const IntMatrix& A, const IntMatrix& B) {
    IntMatrix C(A.size(), std::vector<BigInt>(B[0].size(), BigInt(0)));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t k = 0; k < B.size(); ++k) {
            if (A[i][k] == 0) continue;
            for (std::size_t j = 0; j < B[0].size(); ++j) C[i][j] += A[i][k] * B[k][j];
        }
    return C;
}

struct ReducedLattice {
    IntMatrix basis;
    IntMatrix transform;
    ExactGso gso;
};

ReducedLattice reduce(const IntMatrix& input, const std::vector<BigInt>& w) {
    if (input.empty()) throw Error(ErrorKind::RankDeficient, "empty basis");
    const std::size_t dim = input[0].size();
    for (const auto& row : input)
        if (row.size() != dim) throw Error(ErrorKind::InvalidArgument, "ragged basis matrix");
    if (input.size() > dim) throw Error(ErrorKind::RankDeficient, "more vectors than dimensions");
    ReducedLattice r;
    r.basis = input;
    r.transform = identity(static_cast<int>(input.size()));
    if (input.size() > 12) float_lll(r.basis, r.transform, w);
    exact_lll(r.basis, r.transform, w, r.gso);
    return r;
}

}  // namespace

BigInt determinant(const IntMatrix& square) {
    const int n = static_cast<int>(square.size());
    if (n == 0) return 1;
    IntMatrix M = square;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[k][k] == 0) {
            int piv = k + 1;
            while (piv < n && M[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return sign * M[n - 1][n - 1];
}

BigInt gram_determinant(const IntMatrix& basis) {
    const std::size_t n = basis.size();
    IntMatrix G(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G[i][j] = weighted_dot(basis[i], basis[j], {});
    return determinant(G);
}

LllResult lll_reduce_full(const IntMatrix& basis, const std::vector<BigInt>& weights) {
    ReducedLattice r = reduce(basis, weights);
    // The transform must reproduce the output and be unimodular.
    if (multiply(r.transform, basis) != r.basis)
        throw Error(ErrorKind::InvalidArgument, "internal error: LLL transform mismatch");
    if (r.transform.size() <= 64) {
        const BigInt det = determinant(r.transform);
        if (det != 1 && det != -1) throw Error(ErrorKind::InvalidArgument, "internal error: LLL transform not unimodular");
    }
    return {std::move(r.basis), std::move(r.transform)};
}

IntMatrix lll_reduce(const IntMatrix& basis) { return lll_reduce_full(basis).basis; }

// ------------------------------------------------------- short vectors

namespace {

std::vector<BigInt> l2_weight_vector(const SectionSpace& space, BigInt& radius_scale) {
    radius_scale = 1;
    if (space.family == MetricFamily::Canonical) return {};
    const int n = space.n;
    std::vector<BigInt> fact(n + 2, 1);
    for (int k = 1; k <= n + 1; ++k) fact[k] = fact[k - 1] * k;
    std::vector<BigInt> w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = fact[i] * fact[n - i];
    radius_scale = fact[n + 1];
    return w;
}

class Enumerator {
public:
    Enumerator(const ReducedLattice& lat, long double A, std::int64_t budget, const SupNormOracle& oracle,
               const BigInt& scale, const VectorPredicate& accept)
        : lat_(lat), A_(A), budget_(budget), oracle_(oracle), scale_(scale), accept_(accept) {
        n_ = static_cast<int>(lat.basis.size());
        Bn_.resize(n_);
        mu_.assign(n_, std::vector<long double>(n_, 0.0L));
        for (int i = 0; i < n_; ++i) {
            Bn_[i] = (Real50(lat.gso.d[i + 1]) / Real50(lat.gso.d[i])).convert_to<long double>();
            for (int j = 0; j < i; ++j)
                mu_[i][j] = (Real50(lat.gso.lam[i][j]) / Real50(lat.gso.d[j + 1])).convert_to<long double>();
        }
        x_.assign(n_, 0);
    }

    SearchResult run() {
        try {
            descend(n_ - 1, 0.0L, false);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::BudgetExhausted) throw;
            exhausted_ = true;
        }
        result_.nodes = nodes_;
        if (result_.status == SearchStatus::Found) return result_;
        result_.status = (exhausted_ || ambiguous_accepted_) ? SearchStatus::Unknown : SearchStatus::None;
        return result_;
    }

private:
    void descend(int i, long double partial, bool nonzero) {
        long double c = 0.0L;
        for (int j = i + 1; j < n_; ++j) c -= static_cast<long double>(x_[j]) * mu_[j][i];
        const long double room = A_ - partial;
        if (room < 0.0L) return;
        const long double rad = std::sqrt(room / Bn_[i]);
        std::int64_t lo = static_cast<std::int64_t>(std::ceil(c - rad));
        const std::int64_t hi = static_cast<std::int64_t>(std::floor(c + rad));
        if (!nonzero) lo = std::max<std::int64_t>(lo, 0);
        for (std::int64_t v = lo; v <= hi; ++v) {
            if (++nodes_ > budget_) throw Error(ErrorKind::BudgetExhausted, "enumeration budget");
            x_[i] = v;
            const long double diff = static_cast<long double>(v) - c;
            const long double next = partial + diff * diff * Bn_[i];
            if (i == 0) {
                if (nonzero || v != 0) leaf();
            } else {
                descend(i - 1, next, nonzero || v != 0);
            }
            if (result_.status == SearchStatus::Found) break;
        }
        x_[i] = 0;
    }

    void leaf() {
        const std::size_t dim = lat_.basis[0].size();
        std::vector<BigInt> v(dim, BigInt(0));
        for (int i = 0; i < n_; ++i)
            if (x_[i] != 0) axpy(v, BigInt(-x_[i]), lat_.basis[i]);
        bool accepted = true;
        std::vector<BigInt> f;
        if (accept_) {
            f.resize(dim);
            for (std::size_t k = 0; k < dim; ++k) f[k] = scale_ * v[k];
            accepted = accept_(f);
        }
        if (!accepted && result_.any_member) return;
        const Membership mbr = oracle_.decide(std::span<const BigInt>(v));
        if (mbr == Membership::In) result_.any_member = true;
        if (mbr == Membership::Ambiguous) {
            result_.any_ambiguous = true;
            if (accepted) ambiguous_accepted_ = true;
        }
        if (accepted && mbr == Membership::In) {
            result_.status = SearchStatus::Found;
            if (f.empty()) {
                f.resize(dim);
                for (std::size_t k = 0; k < dim; ++k) f[k] = scale_ * v[k];
            }
            result_.vector = std::move(f);
        }
    }

    const ReducedLattice& lat_;
    long double A_;
    std::int64_t budget_;
    const SupNormOracle& oracle_;
    BigInt scale_;
    const VectorPredicate& accept_;
    int n_ = 0;
    std::vector<long double> Bn_;
    std::vector<std::vector<long double>> mu_;
    std::vector<std::int64_t> x_;
    std::int64_t nodes_ = 0;
    bool exhausted_ = false;
    bool ambiguous_accepted_ = false;
    SearchResult result_;
};

SearchResult search_reduced(const ReducedLattice& lat, const SublatticeProblem& problem, std::int64_t budget,
                            const VectorPredicate& accept) {
    SearchResult res;
    BigInt radius_scale;
    l2_weight_vector(problem.space, radius_scale);
    const NormBound Rs = problem.bound.divided_by(problem.scale);
    const Real50 Rv = Rs.value();
    const Real50 A = Rv * Rv * Real50(radius_scale);
    if (A > Real50("1e30")) return res;  // beyond the enumeration's floating range
    // Relative padding keeps the floating search a superset of the ball.
    const long double Af = A.convert_to<long double>() * (1.0L + 1e-9L) + 1e-12L;
    const SupNormOracle oracle(problem.space, Rs, problem.sup_budget);
    Enumerator e(lat, Af, budget, oracle, problem.scale, accept);
    return e.run();
}

}  // namespace

SearchResult short_vector_search(const SublatticeProblem& problem, std::int64_t budget, const VectorPredicate& accept) {
    if (budget <= 0) return {};
    if (static_cast<int>(problem.basis.at(0).size()) != problem.space.rank())
        throw Error(ErrorKind::InvalidArgument, "basis dimension does not match the section space");
    BigInt radius_scale;
    const auto w = l2_weight_vector(problem.space, radius_scale);
    const ReducedLattice lat = reduce(problem.basis, w);
    return search_reduced(lat, problem, budget, accept);
}

ValuationImage valuation_image_lattice(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                       const LatticeOptions& options) {
    if (!(flag.model == bundle.model())) throw Error(ErrorKind::ModelMismatch, "flag and bundle models differ");
    const SectionSpace space = section_space(bundle, m);
    const NuBounds bounds = nu_bounds(flag, bundle, m);
    const FiberValuation fv(flag, space.n);
    const std::int64_t p = flag.p;
    const NormBound R(bundle.c() * m, 1);

    BigInt D_away = 1;
    for (const auto& t : bundle.twists())
        if (t.p != p) D_away *= boost::multiprecision::pow(BigInt(t.p), static_cast<unsigned>(m * t.k));

    // Non-content keys in lexicographic order.
    std::vector<std::pair<Point, int>> keys;
    for (int k = 0; k < fv.rank(); ++k) keys.emplace_back(fv.keys()[k], k);
    std::sort(keys.begin(), keys.end());

    BigInt radius_scale;
    const auto w = l2_weight_vector(space, radius_scale);

    ValuationImage img;
    img.flag = flag;
    img.bundle = bundle;
    img.m = m;
    img.bounds = bounds;
    const int r = space.rank();

    bool exhausted_all = false;
    for (std::int64_t x = bounds.x_min; x <= bounds.upper[0] && !exhausted_all; ++x) {
        const BigInt scale = D_away * boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(x));
        const NormBound Rx = R.divided_by(scale);
        const SupNormOracle oracle(space, Rx, options.sup_budget);
        for (const auto& [key, kidx] : keys) {
            Point q{x};
            q.insert(q.end(), key.begin(), key.end());

            // Witness: the adapted monomial itself, lifted with balanced residues.
            std::vector<BigInt> wv(r);
            for (int i = 0; i < r; ++i) {
                std::int64_t e = fv.adapted_monomial(kidx)[i];
                if (2 * e > p) e -= p;
                wv[i] = e;
            }
            if (oracle.decide(std::span<const BigInt>(wv)) == Membership::In) {
                std::vector<BigInt> f(r);
                for (int i = 0; i < r; ++i) f[i] = scale * wv[i];
                if (fv.nu(std::span<const BigInt>(f)) == q) {
                    img.verified.push_back(q);
                    continue;
                }
            }

            // Lattice of sections with nu >= q (lexicographically), divided by scale.
            const auto rows = fv.filtration_basis(key);
            IntMatrix basis;
            std::vector<bool> pivot(r, false);
            for (const auto& row : rows) {
                std::vector<BigInt> b(row.begin(), row.end());
                for (int i = 0; i < r; ++i)
                    if (row[i] != 0) {
                        pivot[i] = true;
                        break;
                    }
                basis.push_back(std::move(b));
            }
            for (int i = 0; i < r; ++i)
                if (!pivot[i]) {
                    std::vector<BigInt> b(r, BigInt(0));
                    b[i] = p;
                    basis.push_back(std::move(b));
                }
            SublatticeProblem problem{basis, space, R, scale, options.sup_budget};
            const ReducedLattice lat = reduce(basis, w);
            const Point target = q;
            const VectorPredicate accept = [&fv, &target](const std::vector<BigInt>& f) {
                return fv.nu(std::span<const BigInt>(f)) == target;
            };
            const SearchResult res = search_reduced(lat, problem, options.budget, accept);
            if (res.status == SearchStatus::Found) {
                img.verified.push_back(q);
            } else if (res.status == SearchStatus::Unknown) {
                img.unknown.push_back(q);
            } else if (!res.any_member && !res.any_ambiguous) {
                // No nonzero vector of norm <= R with nu >= q at all: every
                // later candidate lives in a sublattice of this one.
                exhausted_all = true;
                break;
            }
        }
    }
    std::sort(img.verified.begin(), img.verified.end());
    std::sort(img.unknown.begin(), img.unknown.end());
    return img;
}

}  // namespace arithvol
