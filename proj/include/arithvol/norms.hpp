#pragma once

// Certified sup-norms and L2-norms of integral sections.
//
// For the canonical metric the supremum over X(C) equals the maximum of
// |f| on the unit circle (P1Z) or unit torus (P2Z). For Fubini-Study on
// P1Z the supremum is taken over the sphere, parametrised by
// (cos phi, sin phi e^{i theta}). In each case |f|^2 is a real
// trigonometric sum with bounded frequencies, which gives a second-order
// Bernstein certificate on every sub-box of the parameter domain.

#include "arithvol/model.hpp"
#include "arithvol/numeric.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace arithvol {

/// The space H^0(X, O(n)) with its metric family; n = a m.
struct SectionSpace {
    ModelKind kind = ModelKind::P1Z;
    MetricFamily family = MetricFamily::Canonical;
    int n = 0;

    [[nodiscard]] int rank() const;
};

SectionSpace section_space(const HermitianLineBundle& bundle, std::int64_t m);

/// Norm threshold R = mult * exp(log_part). A section s lies in the
/// effective set when its unscaled sup |f| is at most R.
class NormBound {
public:
    NormBound() = default;
    NormBound(Rational log_part, Rational mult);

    [[nodiscard]] const Rational& log_part() const { return log_part_; }
    [[nodiscard]] const Rational& mult() const { return mult_; }
    [[nodiscard]] Real50 value() const;
    [[nodiscard]] Enclosure enclosure() const;
    [[nodiscard]] Enclosure squared() const;
    /// floor(R * scale) and floor(R^2 * scale); exact.
    [[nodiscard]] BigInt floor_times(const BigInt& scale) const;
    [[nodiscard]] BigInt floor_squared_times(const BigInt& scale) const;
    /// Sign of N - R^k * scale for k = 1 (squared = false) or 2. Exact for
    /// rational R; otherwise decided on logarithms, throwing
    /// AmbiguousBoundary when the two sides agree to 1e-40.
    [[nodiscard]] int compare(const BigInt& N, const BigInt& scale = 1, bool squared = false) const;
    /// R / q for a positive integer q.
    [[nodiscard]] NormBound divided_by(const BigInt& q) const;

    friend bool operator==(const NormBound&, const NormBound&) = default;

private:
    Rational log_part_{0};
    Rational mult_{1};
};

struct SupOptions {
    double tolerance = 1e-9;
    std::int64_t budget = 1'000'000;  ///< sub-boxes evaluated
};

struct SupResult {
    Enclosure value;  ///< sup of |f| (no metric scaling)
    bool converged = false;
    std::int64_t boxes = 0;
};

/// Enclosure of sup |f| over the compact parameter domain. Never throws
/// on budget exhaustion; `converged` reports whether the tolerance was met.
SupResult sup_enclosure(const SectionSpace& space, std::span<const double> coeffs, const SupOptions& options = {});

/// Certified sup-norm of the section with the bundle's metric at power m.
/// Throws BudgetExhausted when the tolerance is not reached.
Enclosure sup_norm(const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs,
                   const SupOptions& options = {});

/// Squared L2 norm, exact. Canonical: sum a_j^2. Fubini-Study (probability
/// measure): sum a_i^2 i!(n-i)!/(n+1)!.
Rational l2_norm_squared(const HermitianLineBundle& bundle, std::int64_t m, std::span<const std::int64_t> coeffs);
Rational l2_norm_squared(const SectionSpace& space, std::span<const std::int64_t> coeffs);

/// lambda with log||s||_sup >= lambda - m c for every nonzero integral s.
double min_nonzero_norm_logbound(const HermitianLineBundle& bundle, std::int64_t m);
Real50 min_nonzero_norm_logbound(const SectionSpace& space);

struct NormBodyBounds {
    std::int64_t n = 0;  ///< lattice rank
    double inner_log_count = 0.0;
    double outer_log_count = 0.0;
};

NormBodyBounds norm_body_bounds(const HermitianLineBundle& bundle, std::int64_t m);
/// Same for the lattice D Z^r inside the body {sup <= R}.
NormBodyBounds norm_body_bounds(const SectionSpace& space, const NormBound& R, const BigInt& D);

/// Number of integer points with L1 norm <= k in dimension r.
BigInt cross_polytope_count(std::int64_t r, const BigInt& k);

enum class Membership { In, Out, Ambiguous };

/// Decides sup |f| <= R for integral sections of one space. Reusable
/// across many sections; holds the exact thresholds.
class SupNormOracle {
public:
    SupNormOracle(const SectionSpace& space, const NormBound& bound, std::int64_t budget = 1'000'000);

    [[nodiscard]] Membership decide(std::span<const std::int64_t> coeffs) const;
    [[nodiscard]] Membership decide(std::span<const BigInt> coeffs) const;

    [[nodiscard]] const SectionSpace& space() const { return space_; }
    [[nodiscard]] const NormBound& bound() const { return bound_; }
    /// Integer threshold for the partial L2 test: sum_i weight_i a_i^2 <= l2_limit().
    [[nodiscard]] const BigInt& l2_limit() const { return l2_limit_; }
    /// Integer L2 weights (1 for canonical, i!(n-i)! for Fubini-Study).
    [[nodiscard]] const std::vector<BigInt>& l2_weights() const { return weights_; }

private:
    [[nodiscard]] Membership decide_double(std::span<const double> coeffs, bool monomial) const;
    [[nodiscard]] bool l2_exceeds(const BigInt& l2) const;
    // -1/0: sum |a| <= R, 1: above, 2: undecided.
    [[nodiscard]] int l1_side(const BigInt& l1) const;

    SectionSpace space_;
    NormBound bound_;
    std::int64_t budget_;
    BigInt l1_limit_;  // floor(R), canonical fast path
    BigInt l2_limit_;
    BigInt l2_scale_;
    bool exact_limits_ = true;  // false: limits are approximate, use NormBound::compare
    std::vector<BigInt> weights_;
    std::vector<double> monomial_sup_;  // Fubini-Study sup of each monomial
    Enclosure r_;
    Enclosure r2_;
};

}  // namespace arithvol
