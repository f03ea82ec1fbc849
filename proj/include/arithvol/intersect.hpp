#pragma once

// Arithmetic intersection numbers on the model catalog.
//
// Every bundle is numerically a O(1)_family + O(c_total). On P1Z with the
// section X1^a2 of the second bundle (divisor a2 [1:0], a point of height 0
// for both families):
//   L1 . L2 = a2 c1 + a1 c2 - a1 a2 I(f2, f1),
//   I(f2, f1) = integral of log ||X1||_f2 against c1(O(1)_f1).
// On P2Z (Canonical only) O(1)_can^3 = 0 and the form is trilinear in the
// constant twists.

#include "arithvol/model.hpp"

#include <string>
#include <vector>

namespace arithvol {

enum class IntersectionMethod { ClosedForm, Quadrature };

struct IntersectionForm {
    ArithmeticModel model;
    IntersectionMethod method = IntersectionMethod::ClosedForm;
    double tolerance = 1e-10;  ///< quadrature only; must be > 0
};

struct IntersectionValue {
    double value = 0.0;
    double error = 0.0;
    IntersectionMethod method = IntersectionMethod::ClosedForm;
};

/// Intersection of d bundles on the form's model. Throws ModelMismatch,
/// InvalidArgument (wrong count, bad tolerance), QuadratureNotConverged.
IntersectionValue intersection_number(const IntersectionForm& form, const std::vector<HermitianLineBundle>& bundles);

/// Closed-form convenience wrapper.
double intersect(const std::vector<HermitianLineBundle>& bundles);

/// Canonical with c_total > 0 or FubiniStudy with c_total >= 0.
bool in_ample_catalog(const HermitianLineBundle& bundle);

/// L^d for a bundle of the ample catalog; throws NotAmpleInCatalog.
double volume_closed_form(const HermitianLineBundle& bundle);

/// Geometric volume of L_Q: a on P1Z, a^2 on P2Z.
double geometric_volume(const HermitianLineBundle& bundle);

/// 2 e0 (vol(L_Q) / vol(A_Q)) (L . A^(d-1)) / (d-1)!.
double comparison_constant(const HermitianLineBundle& bundle, const HermitianLineBundle& reference_ample);

struct InequalityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  ///< lhs - rhs; >= -tolerance when the check holds
    bool holds = false;
};

struct CorollaryReport {
    int d = 2;
    double l1_top = 0.0;     ///< L1^d
    double l2_top = 0.0;     ///< L2^d
    double mixed = 0.0;      ///< L1^(d-1) . L2
    double mixed2 = 0.0;     ///< L1^(d-2) . L2^2
    double lambda = 0.0;     ///< (L1^(d-1) . L2) / L1^d
    double hodge_value = 0.0;  ///< L1^(d-2) . (L2 - lambda L1)^2
    std::vector<InequalityCheck> checks;
    bool all_hold = false;
};

/// Mixed-volume inequalities, the volume bound and the Hodge-index sign
/// check with A = b1, B = b2. Both bundles must be in the ample catalog.
CorollaryReport corollary_checks(const HermitianLineBundle& b1, const HermitianLineBundle& b2,
                                 double tolerance = 1e-9);

std::string to_string(IntersectionMethod method);
IntersectionMethod parse_intersection_method(const std::string& text);

}  // namespace arithvol
