#pragma once

#include "mfcat/dolbeault/ops.hpp"

namespace mfcat::dolb {

/// Curved quasi-holomorphic bundle over the polydisk: nabla-bar = dbar + A
/// with (dbar + A)^2 = W * Id. The (1,0) part is the flat coordinate
/// differential.
struct Bundle {
    DolCtxPtr ctx;
    std::vector<int> grading;   // Z2 labels of the frame
    DolForm A;                  // odd connection term
    DolForm W;                  // scalar curving

    size_t rank() const { return grading.size(); }
};

/// Validates the square condition; throws when (dbar+A)^2 != W*Id.
Bundle make_bundle(const DolCtxPtr& ctx, std::vector<int> grading, DolForm A, DolForm W);

/// Residual of the square condition, for reporting.
DolForm bundle_square_residual(const Bundle& b);

/// Covariant antiholomorphic differential dbar + [A, .].
DolForm covariant_dbar(const Bundle& b, const DolForm& x);

/// Curvature F = [nabla-bar, nabla] with the flat (1,0) differential;
/// f_sign from the registry orients it.
DolForm curvature_F(const ConventionRegistry& reg, const Bundle& b);

/// Residual of the curved Bianchi identity nabla-bar F + (del W) * Id.
DolForm bianchi_residual(const ConventionRegistry& reg, const Bundle& b);

/// dx-component extraction: X = sum_I dx^I X_I  ->  X_I.
DolForm dx_component(const DolForm& x, size_t i);

/// Tensor bundle E1 (x) E2 with the graded product differential.
Bundle tensor_bundle(const Bundle& a, const Bundle& b);

/// Lift an End(E1)-valued form to End(E1 (x) E2), and symmetrically.
DolForm lift_left(const DolForm& x, const Bundle& right);
DolForm lift_right(const Bundle& left, const DolForm& x);

} // namespace mfcat::dolb
