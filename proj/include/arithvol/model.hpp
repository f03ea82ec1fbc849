#pragma once

// Supported arithmetic varieties and hermitian line bundles on them.
//
// A bundle is O(a) on P^1_Z or P^2_Z with one of two metric families,
// twisted by a constant Ō(c) and by vertical divisors. A vertical twist
// (p, k) stands for L(-k Y_p): sections of the m-th power must be
// divisible by p^(m k), with the metric unchanged.

#include "arithvol/numeric.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arithvol {

enum class ModelKind { P1Z, P2Z };

struct ArithmeticModel {
    ModelKind kind = ModelKind::P1Z;
    int d = 2;   ///< absolute dimension
    int e0 = 1;  ///< geometric components of the generic fibre; always 1 over Q

    friend bool operator==(const ArithmeticModel&, const ArithmeticModel&) = default;
};

ArithmeticModel make_model(ModelKind kind);

enum class MetricFamily { Canonical, FubiniStudy };

struct MetricSpec {
    MetricFamily family = MetricFamily::Canonical;
    Rational c;  ///< log-scale twist Ō(c), in nats

    friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

struct VerticalTwist {
    std::int64_t p = 2;
    std::int64_t k = 0;

    friend bool operator==(const VerticalTwist&, const VerticalTwist&) = default;
};

class HermitianLineBundle {
public:
    HermitianLineBundle() = default;

    [[nodiscard]] const ArithmeticModel& model() const { return model_; }
    [[nodiscard]] std::int64_t degree() const { return degree_; }
    [[nodiscard]] const MetricSpec& metric() const { return metric_; }
    [[nodiscard]] MetricFamily family() const { return metric_.family; }
    [[nodiscard]] const Rational& c() const { return metric_.c; }
    /// Sorted by prime, multiplicities strictly positive.
    [[nodiscard]] std::vector<VerticalTwist> twists() const;
    [[nodiscard]] std::int64_t twist_multiplicity(std::int64_t p) const;

    /// Product over twists of p^(m k).
    [[nodiscard]] BigInt divisor(std::int64_t m) const;

    /// c - sum k log p; the numerical class of the bundle as a constant
    /// twist of a(canonical O(1)).
    [[nodiscard]] Real50 c_total() const;

    friend bool operator==(const HermitianLineBundle&, const HermitianLineBundle&) = default;

private:
    friend HermitianLineBundle make_bundle(const ArithmeticModel&, std::int64_t, const MetricSpec&);
    friend HermitianLineBundle twist(const HermitianLineBundle&, const Rational&,
                                     const std::vector<VerticalTwist>&);
    friend HermitianLineBundle add_bundles(const HermitianLineBundle&, const HermitianLineBundle&);
    friend HermitianLineBundle multiple(const HermitianLineBundle&, std::int64_t);

    ArithmeticModel model_;
    std::int64_t degree_ = 0;
    MetricSpec metric_;
    std::map<std::int64_t, std::int64_t> twists_;
};

HermitianLineBundle make_bundle(const ArithmeticModel& model, std::int64_t a, const MetricSpec& metric);

/// L̄(alpha + V). Entries of V may be negative as long as every net
/// multiplicity stays nonnegative.
HermitianLineBundle twist(const HermitianLineBundle& bundle, const Rational& alpha,
                          const std::vector<VerticalTwist>& V);

HermitianLineBundle add_bundles(const HermitianLineBundle& b1, const HermitianLineBundle& b2);

/// m L̄ as a single bundle.
HermitianLineBundle multiple(const HermitianLineBundle& bundle, std::int64_t m);

/// Vertical twists equivalent to Z_n = div(n): the prime factorisation of n.
std::vector<VerticalTwist> divisor_of_integer(std::int64_t n);

/// Rank of H^0(X, m L) over Z.
std::int64_t section_rank(const ArithmeticModel& model, std::int64_t a, std::int64_t m);

/// Monomial index scheme. P1Z: index j <-> t^j, j = 0..n. P2Z: index
/// enumerates (i, j) with i + j <= n lexicographically, <-> t1^i t2^j.
std::vector<std::pair<int, int>> monomial_exponents(ModelKind kind, int n);

std::string to_string(ModelKind kind);
std::string to_string(MetricFamily family);
ModelKind parse_model_kind(const std::string& text);
MetricFamily parse_metric_family(const std::string& text);

}  // namespace arithvol
