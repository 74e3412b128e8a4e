#pragma once

#include "mfcat/dolbeault/dolform.hpp"

#include <optional>
#include <string>

namespace mfcat::dolb {

/// Sign and normalization switches the underlying formulas leave implicit. A calibration
/// pass fixes them against exactly-determined identities and the registry is
/// then frozen for all higher checks.
struct ConventionRegistry {
    int schouten_s1 = 1;    // +-1 on the theta-x part of the odd bracket
    int schouten_s2 = 1;    // +-1 on the x-theta part
    int schouten_e1 = 0;    // whether the theta-x part carries (-1)^{|a|}
    int schouten_e2 = 0;    // whether the x-theta part carries (-1)^{|a|}
    int poisson_sign = 1;   // +-1 global sign of the even bracket
    int f_sign = 1;         // curvature orientation F = f_sign * [dbar+A, del]
    // global normalization of the printed third-correction closed form
    // relative to the fiber-realized bracket; frozen by calibration
    int xi_norm_num = 1;
    int xi_norm_den = 1;
    // normalization of the printed second-order monoidal deformation term
    int zeta2_norm_num = 1;
    int zeta2_norm_den = 1;
    bool covariant_mc = true;   // Maurer-Cartan differential is bundle-covariant
    bool frozen = false;

    Scalar xi_norm() const { return Scalar::of_fraction(xi_norm_num, xi_norm_den); }
    Scalar zeta2_norm() const { return Scalar::of_fraction(zeta2_norm_num, zeta2_norm_den); }

    std::string str() const;
    std::string to_json() const;
    static std::optional<ConventionRegistry> from_json_file(const std::string& path);
    void save_json_file(const std::string& path) const;
};

/// Calibrate the bracket switches on the standard index-notation identities and
/// graded bracket laws; throws if no unique assignment survives.
ConventionRegistry calibrate_registry(unsigned seed = 1);

/// Even Poisson bracket on SYM-fiber forms via the canonical fiber
/// realization: {f,g} = sum_I d_x f d_y g - d_y f d_x g (up to the registry
/// sign).
DolForm poisson_bracket(const ConventionRegistry& reg, const DolForm& a, const DolForm& b);

/// Odd Schouten bracket on WEDGE-fiber forms via the odd fiber realization.
DolForm schouten_bracket(const ConventionRegistry& reg, const DolForm& a, const DolForm& b);

enum class BracketKind { SCHOUTEN, POISSON };
DolForm bracket(const ConventionRegistry& reg, BracketKind kind, const DolForm& a,
                const DolForm& b);

/// A covector field argument (such as dW): one scalar component per
/// coordinate direction.
using Covector = std::vector<DolForm>;

/// components (dW)_I = partial_I W, tagged as underived dW atoms
Covector gradient_covector(const DolForm& w);

/// full evaluation kappa(v): substitute y_I := v_I
DolForm evaluate_on(const DolForm& sym_form, const Covector& v);

/// single-slot contraction sum_I (d/dy_I form) v_I
DolForm contract_sym_once(const DolForm& sym_form, const Covector& v);
/// same for a theta-realized polyvector of fiber degree 1
DolForm contract_wedge_once(const DolForm& wedge_form, const Covector& v);

/// full contraction of a fiber part against a list of covectors; arity must
/// match the fiber degree (uniform over the form)
DolForm contract(const DolForm& form, const std::vector<Covector>& args);

/// first and second divided differences of a SYM-fiber form, evaluated on
/// covector arguments; results have fiber degree 1 resp. 2
DolForm divided_difference1(const DolForm& kappa, const Covector& v1, const Covector& v2);
DolForm divided_difference2(const DolForm& kappa, const Covector& v1, const Covector& v2,
                            const Covector& v3);

} // namespace mfcat::dolb
