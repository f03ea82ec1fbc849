#include "arithvol/sections.hpp"
#include "arithvol/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace arithvol {

int default_threads() {
    if (const char* env = std::getenv("ARITHVOL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

std::int64_t basis_rank(const HermitianLineBundle& bundle, std::int64_t m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "basis_rank needs m >= 1");
    return section_rank(bundle.model(), bundle.degree(), m);
}

namespace {

class BodySearch {
public:
    BodySearch(const SupNormOracle& oracle, std::int64_t budget) : oracle_(oracle), budget_(budget) {
        const auto& w = oracle.l2_weights();
        const int r = static_cast<int>(w.size());
        weights_.resize(r);
        for (int i = 0; i < r; ++i) weights_[i] = w[i].convert_to<double>();
        order_.resize(r);
        std::iota(order_.begin(), order_.end(), 0);
        // Heaviest weight first: those coefficients have the smallest range.
        std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) { return weights_[x] > weights_[y]; });
        limit_ = oracle.l2_limit().convert_to<double>() * (1.0 + 1e-9) + 1.0;
    }

    std::int64_t top_range() const { return range(0, 0.0); }

    // Explores the subtree with the first ordered coefficient fixed to v >= 0.
    void run_branch(std::int64_t v, BodyEnumeration& out) {
        Coeffs b(order_.size(), 0);
        b[order_[0]] = v;
        visit();
        descend(1, static_cast<double>(v) * v * weights_[order_[0]], v != 0, b, out);
    }

    std::int64_t nodes() const { return nodes_.load(); }

private:
    std::int64_t range(int pos, double partial) const {
        const double rem = limit_ - partial;
        if (rem < 0.0) return -1;
        return static_cast<std::int64_t>(std::floor(std::sqrt(rem / weights_[order_[pos]])));
    }

    void visit() {
        if (nodes_.fetch_add(1) + 1 > budget_)
            throw Error(ErrorKind::BudgetExhausted, "enumeration node budget exhausted");
    }

    void descend(int pos, double partial, bool nonzero, Coeffs& b, BodyEnumeration& out) {
        if (pos == static_cast<int>(order_.size())) {
            leaf(b, nonzero, out);
            return;
        }
        const std::int64_t R = range(pos, partial);
        const int idx = order_[pos];
        const std::int64_t lo = nonzero ? -R : 0;
        for (std::int64_t v = lo; v <= R; ++v) {
            visit();
            b[idx] = v;
            descend(pos + 1, partial + static_cast<double>(v) * v * weights_[idx], nonzero || v != 0, b, out);
        }
        b[idx] = 0;
    }

    void leaf(const Coeffs& b, bool nonzero, BodyEnumeration& out) {
        if (!nonzero) {
            out.members.push_back(b);
            return;
        }
        switch (oracle_.decide(std::span<const std::int64_t>(b))) {
            case Membership::In: {
                out.members.push_back(b);
                Coeffs neg(b.size());
                std::transform(b.begin(), b.end(), neg.begin(), [](std::int64_t x) { return -x; });
                out.members.push_back(std::move(neg));
                break;
            }
            case Membership::Ambiguous: out.ambiguous_count += 2; break;
            case Membership::Out: break;
        }
    }

    const SupNormOracle& oracle_;
    std::int64_t budget_;
    std::vector<double> weights_;
    std::vector<int> order_;
    double limit_ = 0.0;
    std::atomic<std::int64_t> nodes_{0};
};

}  // namespace

BodyEnumeration enumerate_body(const SectionSpace& space, const NormBound& R, const BigInt& D,
                               const EnumerateOptions& options) {
    if (space.rank() > options.max_rank)
        throw Error(ErrorKind::ScopeExceeded, "rank " + std::to_string(space.rank()) + " exceeds exact scope");
    if (options.budget <= 0) throw Error(ErrorKind::BudgetExhausted, "enumeration budget is zero");
    const NormBound Rd = R.divided_by(D);
    if (Rd.value() > Real50(options.box_limit))
        throw Error(ErrorKind::ScopeExceeded, "norm bound exceeds the exact-scope box limit");
    const std::int64_t Dint = to_int64(D);

    const SupNormOracle oracle(space, Rd, options.sup_budget);
    BodySearch search(oracle, options.budget);
    const std::int64_t top = search.top_range();
    const int threads = std::max(1, options.threads > 0 ? options.threads : default_threads());

    BodyEnumeration result;
    if (top >= 0) {
        std::vector<BodyEnumeration> parts(top + 1);
        std::atomic<std::int64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            for (;;) {
                const std::int64_t v = next.fetch_add(1);
                if (v > top) return;
                try {
                    search.run_branch(v, parts[v]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next.store(top + 1);
                    return;
                }
            }
        };
        const int n_workers = static_cast<int>(std::min<std::int64_t>(threads, top + 1));
        if (n_workers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        if (failure) std::rethrow_exception(failure);
        for (auto& part : parts) {
            result.ambiguous_count += part.ambiguous_count;
            for (auto& mbr : part.members) result.members.push_back(std::move(mbr));
        }
    } else {
        result.members.push_back(Coeffs(space.rank(), 0));
    }
    if (Dint != 1)
        for (auto& mbr : result.members)
            for (auto& x : mbr) x *= Dint;
    std::sort(result.members.begin(), result.members.end());
    result.nodes = search.nodes();
    return result;
}

EffectiveSectionSet enumerate_effective(const HermitianLineBundle& bundle, std::int64_t m,
                                        const EnumerateOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "enumerate_effective needs m >= 1");
    const SectionSpace space = section_space(bundle, m);
    auto body = enumerate_body(space, NormBound(bundle.c() * m, 1), bundle.divisor(m), options);
    EffectiveSectionSet out;
    out.bundle = bundle;
    out.m = m;
    out.rank = space.rank();
    out.members = std::move(body.members);
    out.ambiguous_count = body.ambiguous_count;
    out.nodes = body.nodes;
    return out;
}

double hzero_exact(const HermitianLineBundle& bundle, std::int64_t m, const EnumerateOptions& options) {
    const auto set = enumerate_effective(bundle, m, options);
    if (set.ambiguous_count > 0)
        throw Error(ErrorKind::AmbiguousBoundary,
                    std::to_string(set.ambiguous_count) + " sections could not be certified");
    return std::log(static_cast<double>(set.members.size()));
}

std::pair<double, double> hzero_band(const HermitianLineBundle& bundle, std::int64_t m,
                                     const EnumerateOptions& options) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "hzero_band needs m >= 1");
    const auto nb = norm_body_bounds(bundle, m);
    try {
        const double h = hzero_exact(bundle, m, options);
        return {h, h};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ScopeExceeded && e.kind() != ErrorKind::BudgetExhausted &&
            e.kind() != ErrorKind::AmbiguousBoundary)
            throw;
    }
    return {nb.inner_log_count, nb.outer_log_count};
}

Coeffs multiply_sections(ModelKind kind, int n1, const Coeffs& f, int n2, const Coeffs& g) {
    const int n = n1 + n2;
    if (kind == ModelKind::P1Z) {
        if (static_cast<int>(f.size()) != n1 + 1 || static_cast<int>(g.size()) != n2 + 1)
            throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
        Coeffs h(n + 1, 0);
        for (int i = 0; i <= n1; ++i) {
            if (f[i] == 0) continue;
            for (int j = 0; j <= n2; ++j) h[i + j] += f[i] * g[j];
        }
        return h;
    }
    const auto e1 = monomial_exponents(kind, n1);
    const auto e2 = monomial_exponents(kind, n2);
    if (f.size() != e1.size() || g.size() != e2.size())
        throw Error(ErrorKind::InvalidArgument, "coefficient vector has wrong rank");
    // Lexicographic index of (i, j) with i + j <= n.
    auto index = [n](int i, int j) { return i * (n + 1) - i * (i - 1) / 2 + j; };
    Coeffs h(static_cast<std::size_t>((n + 1) * (n + 2) / 2), 0);
    for (std::size_t x = 0; x < f.size(); ++x) {
        if (f[x] == 0) continue;
        for (std::size_t y = 0; y < g.size(); ++y) {
            if (g[y] == 0) continue;
            h[index(e1[x].first + e2[y].first, e1[x].second + e2[y].second)] += f[x] * g[y];
        }
    }
    return h;
}

EffectiveSectionSet product_set(const EffectiveSectionSet& base, std::int64_t k) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "product_set needs k >= 1");
    const ModelKind kind = base.bundle.model().kind;
    const int n = static_cast<int>(base.bundle.degree() * base.m);
    std::set<Coeffs> current(base.members.begin(), base.members.end());
    for (std::int64_t j = 1; j < k; ++j) {
        std::set<Coeffs> next;
        for (const auto& s : current)
            for (const auto& t : base.members)
                next.insert(multiply_sections(kind, static_cast<int>(n * j), s, n, t));
        current = std::move(next);
    }
    EffectiveSectionSet out;
    out.bundle = base.bundle;
    out.m = base.m * k;
    out.rank = static_cast<int>(section_rank(base.bundle.model(), base.bundle.degree(), out.m));
    out.members.assign(current.begin(), current.end());
    out.ambiguous_count = base.ambiguous_count;
    return out;
}

EffectiveSectionSet product_set(const HermitianLineBundle& bundle, std::int64_t n, std::int64_t k,
                                const EnumerateOptions& options) {
    return product_set(enumerate_effective(bundle, n, options), k);
}

}  // namespace arithvol
