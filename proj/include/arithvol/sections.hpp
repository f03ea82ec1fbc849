#pragma once

// Exact enumeration of effective sections and product sets.

#include "arithvol/model.hpp"
#include "arithvol/norms.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace arithvol {

using Coeffs = std::vector<std::int64_t>;

struct EnumerateOptions {
    std::int64_t budget = 2'000'000'000;  ///< DFS node visits; 0 fails immediately
    int threads = 0;                      ///< 0: default_threads()
    int max_rank = 32;
    double box_limit = 64.0;              ///< bound on e^{m c_total}
    double member_limit = 4e6;            ///< bound on the L2-ball lattice point estimate
    std::int64_t sup_budget = 200'000;    ///< boxes per boundary decision
};

/// Worker count from ARITHVOL_THREADS, else 1.
int default_threads();

struct EffectiveSectionSet {
    HermitianLineBundle bundle;
    std::int64_t m = 0;
    int rank = 0;
    std::vector<Coeffs> members;  ///< lexicographically sorted, contains 0
    std::int64_t ambiguous_count = 0;
    std::int64_t nodes = 0;
};

std::int64_t basis_rank(const HermitianLineBundle& bundle, std::int64_t m);

/// All b in D Z^r (given as coefficient vectors a = D b) with sup |a| <= R.
/// Members come back sorted; ambiguous boundary cases are counted, not kept.
struct BodyEnumeration {
    std::vector<Coeffs> members;
    std::int64_t ambiguous_count = 0;
    std::int64_t nodes = 0;
};
BodyEnumeration enumerate_body(const SectionSpace& space, const NormBound& R, const BigInt& D,
                               const EnumerateOptions& options = {});

EffectiveSectionSet enumerate_effective(const HermitianLineBundle& bundle, std::int64_t m,
                                        const EnumerateOptions& options = {});

double hzero_exact(const HermitianLineBundle& bundle, std::int64_t m, const EnumerateOptions& options = {});

/// (lo, hi) log-count band; collapses to the exact value when enumeration
/// is in scope and unambiguous.
std::pair<double, double> hzero_band(const HermitianLineBundle& bundle, std::int64_t m,
                                     const EnumerateOptions& options = {});

/// Product of two sections: coefficient convolution from levels n1, n2
/// to level n1 + n2 (n counts the total degree a m).
Coeffs multiply_sections(ModelKind kind, int n1, const Coeffs& f, int n2, const Coeffs& g);

/// V_{k,n}: all k-fold products of members of H^0(n L), as a set at level n k.
EffectiveSectionSet product_set(const HermitianLineBundle& bundle, std::int64_t n, std::int64_t k,
                                const EnumerateOptions& options = {});

/// Same, starting from an already enumerated level-n set.
EffectiveSectionSet product_set(const EffectiveSectionSet& base, std::int64_t k);

}  // namespace arithvol
