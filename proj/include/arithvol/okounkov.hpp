#pragma once

// Exact rational polytopes in dimension 2 and 3, and Okounkov body runs.

#include "arithvol/valuation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace arithvol {

using QPoint = std::vector<Rational>;

struct RationalPolytope {
    int dim = 2;         ///< ambient dimension, 2 or 3
    int affine_dim = -1;  ///< -1 for the empty polytope
    /// 2D: counterclockwise from the lexicographic minimum. 3D: sorted
    /// lexicographically.
    std::vector<QPoint> vertices;
    /// 3D full-dimensional only: facets as vertex indices, counterclockwise
    /// seen from outside, each starting at its smallest index; sorted.
    std::vector<std::vector<int>> faces;
    Rational volume = 0;
};

/// Verified points divided coordinatewise by m.
std::vector<QPoint> scale_points(const ValuationImage& image);

RationalPolytope convex_hull(const std::vector<QPoint>& points);
RationalPolytope minkowski_sum(const RationalPolytope& P, const RationalPolytope& Q);
bool contains(const RationalPolytope& P, const QPoint& x);

struct BrunnMinkowskiReport {
    int dim = 2;
    Rational vol_p = 0;
    Rational vol_q = 0;
    Rational vol_sum = 0;
    bool holds = false;     ///< decided exactly
    bool equality = false;  ///< decided exactly
    Enclosure slack;        ///< vol(P+Q)^(1/d) - vol(P)^(1/d) - vol(Q)^(1/d)
};

BrunnMinkowskiReport brunn_minkowski_check(const RationalPolytope& P, const RationalPolytope& Q);

/// Exact test of vol(A)^(1/d) >= vol(B)^(1/d) + vol(C)^(1/d) for d = 2, 3
/// and nonnegative rationals; `equal` reports equality.
bool brunn_minkowski_holds(int d, const Rational& A, const Rational& B, const Rational& C, bool* equal = nullptr);

enum class ImageMode { Auto, Exact, Lattice };

struct OkounkovOptions {
    ImageMode mode = ImageMode::Auto;
    EnumerateOptions enumerate;
    LatticeOptions lattice;
};

struct OkounkovApprox {
    RationalPolytope polytope;
    std::vector<std::int64_t> m_schedule;
    std::int64_t verified_point_count = 0;  ///< distinct scaled points
    std::int64_t unknown_point_count = 0;
    Rational volume_lower = 0;
    Rational volume_upper = 0;
    std::vector<QPoint> points;  ///< sorted union of scaled verified points
    std::vector<ValuationImage> images;
};

/// True when exact enumeration is in scope for (bundle, m).
bool exact_in_scope(const HermitianLineBundle& bundle, std::int64_t m, const EnumerateOptions& options = {});

ValuationImage valuation_image(const HermitianLineBundle& bundle, std::int64_t m, const Flag& flag,
                               const OkounkovOptions& options = {});

OkounkovApprox okounkov_run(const HermitianLineBundle& bundle, const Flag& flag,
                            const std::vector<std::int64_t>& m_schedule, const OkounkovOptions& options = {});

struct SvgBox {
    double x0, y0, x1, y1;
};

/// SVG 1.1 drawing of a 2D polytope with axes; optional dashed bound box and
/// target rectangle.
std::string hull_svg(const RationalPolytope& P, const std::optional<SvgBox>& bound_box = std::nullopt,
                     const std::optional<SvgBox>& target = std::nullopt);

}  // namespace arithvol
