#pragma once

// Flags, the valuation map and valuation images.
//
// Fibre coordinates: X0, X1 (P1Z) or X0, X1, X2 (P2Z) with t = X1/X0,
// t1 = X1/X0, t2 = X2/X0. For a flag we pick adapted coordinates Y = A^-1 X
// over F_p in which the point is [1:0:...] and, on P2Z, the line is
// {Y2 = 0}. The non-content part of nu is then the lexicographically least
// exponent key among the adapted monomials of the reduced section:
// the Y1 power on P1Z, (Y2 power, Y1 power) on P2Z.

#include "arithvol/model.hpp"
#include "arithvol/norms.hpp"
#include "arithvol/sections.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace arithvol {

using Point = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<BigInt>>;  ///< row vectors

struct Flag {
    ArithmeticModel model;
    std::int64_t p = 2;
    bool at_infinity = false;            ///< P1Z only
    std::int64_t alpha = 0;              ///< P1Z point [1 : alpha]
    std::array<std::int64_t, 3> line{};  ///< P2Z: l0 X0 + l1 X1 + l2 X2 = 0
    std::array<std::int64_t, 3> point{};  ///< P2Z: [P0 : P1 : P2] on the line

    friend bool operator==(const Flag&, const Flag&) = default;
};

Flag make_flag_p1(std::int64_t p, std::int64_t alpha);
Flag make_flag_p1_infinity(std::int64_t p);
Flag make_flag_p2(std::int64_t p, const std::array<std::int64_t, 3>& line, const std::array<std::int64_t, 3>& point);
/// The standard P2Z flag {X2 = 0} ∋ [1:0:0].
Flag standard_flag_p2(std::int64_t p);

std::string to_string(const Flag& flag);

/// Precomputed mod-p change of coordinates for one flag and one degree n.
class FiberValuation {
public:
    FiberValuation(const Flag& flag, int n);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] int rank() const { return static_cast<int>(keys_.size()); }
    [[nodiscard]] const Flag& flag() const { return flag_; }

    /// Full valuation (content order first). Throws ZeroSection.
    [[nodiscard]] Point nu(std::span<const std::int64_t> coeffs) const;
    [[nodiscard]] Point nu(std::span<const BigInt> coeffs) const;

    /// Non-content part of nu for a nonzero reduced vector over F_p.
    [[nodiscard]] Point nu_reduced(const std::vector<std::int64_t>& reduced) const;

    /// Exponent keys of adapted monomials in index order.
    [[nodiscard]] const std::vector<Point>& keys() const { return keys_; }

    /// Reduced coefficient vector (in the X basis, entries in [0, p)) of the
    /// adapted monomial with index k.
    [[nodiscard]] std::vector<std::int64_t> adapted_monomial(int k) const;

    /// Row basis (entries in [0, p)) of the F_p-subspace of reduced sections
    /// whose non-content valuation is >= key lexicographically.
    [[nodiscard]] std::vector<std::vector<std::int64_t>> filtration_basis(const Point& key) const;

private:
    Flag flag_;
    int n_;
    std::vector<Point> keys_;
    std::vector<std::vector<std::int64_t>> forward_;  // forward_[k] = adapted coordinates of X-monomial k
    std::vector<std::vector<std::int64_t>> inverse_;  // inverse_[k] = X coordinates of adapted monomial k
};

/// nu of a section of m L (degree n = a m). Throws ZeroSection.
Point nu(const Flag& flag, const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs);

struct NuBounds {
    std::int64_t x_min = 0;          ///< forced content from a twist at p
    std::vector<std::int64_t> upper;  ///< per-axis upper bounds
    std::int64_t total = 0;          ///< P2Z: nu2 + nu3 <= total (= a m)
};

NuBounds nu_bounds(const Flag& flag, const HermitianLineBundle& bundle, std::int64_t m);

struct ValuationImage {
    Flag flag;
    HermitianLineBundle bundle;
    std::int64_t m = 0;
    std::vector<Point> verified;  ///< sorted
    std::vector<Point> unknown;   ///< sorted
    NuBounds bounds;
};

ValuationImage valuation_image_exact(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                     const EnumerateOptions& options = {});

/// Image of an already enumerated effective set.
ValuationImage valuation_image_of(const EffectiveSectionSet& set, const Flag& flag);

// Lattice tools.

struct LllResult {
    IntMatrix basis;      ///< reduced rows
    IntMatrix transform;  ///< unimodular U with basis = U * input
};

/// LLL with delta = 99/100 for the inner product sum_i w_i x_i y_i
/// (empty weights: standard). Exact integral Gram-Schmidt after a floating
/// pre-pass. Throws RankDeficient.
LllResult lll_reduce_full(const IntMatrix& basis, const std::vector<BigInt>& weights = {});
IntMatrix lll_reduce(const IntMatrix& basis);

/// det(B B^T), exact.
BigInt gram_determinant(const IntMatrix& basis);
/// Determinant of a square integer matrix (fraction-free elimination).
BigInt determinant(const IntMatrix& square);

struct SublatticeProblem {
    IntMatrix basis;             ///< rows; full rank
    SectionSpace space;          ///< norm used for the final check
    NormBound bound;             ///< sup |f| <= bound for f = scale * v
    BigInt scale = 1;            ///< lattice vectors are multiplied by this before the norm test
    std::int64_t sup_budget = 200'000;
};

enum class SearchStatus { Found, None, Unknown };

struct SearchResult {
    SearchStatus status = SearchStatus::Unknown;
    std::vector<BigInt> vector;  ///< scale * v when found
    std::int64_t nodes = 0;
    /// Some nonzero lattice vector (accepted or not) passed the norm test,
    /// or could not be decided. When both are false after a None, the
    /// lattice has no nonzero vector of norm <= bound at all.
    bool any_member = false;
    bool any_ambiguous = false;
};

/// Finds a nonzero lattice vector v with sup |scale v| <= bound that also
/// passes `accept` (called on scale * v). None certifies that no such vector
/// exists. Enumeration runs in the L2 ball of radius bound / scale, which
/// contains the sup-norm body.
using VectorPredicate = std::function<bool(const std::vector<BigInt>&)>;
SearchResult short_vector_search(const SublatticeProblem& problem, std::int64_t budget,
                                 const VectorPredicate& accept = {});

struct LatticeOptions {
    std::int64_t budget = 2'000'000;  ///< enumeration nodes per candidate
    std::int64_t sup_budget = 200'000;
};

ValuationImage valuation_image_lattice(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                                       const LatticeOptions& options = {});

}  // namespace arithvol
