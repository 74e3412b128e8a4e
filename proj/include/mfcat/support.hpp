#pragma once

#include "mfcat/groebner.hpp"

#include <string>
#include <vector>

namespace mfcat {

/// Subvariety of a cotangent-style ambient space: base coordinates paired
/// with fiber (momentum) coordinates, plus its defining ideal.
struct VarietyIdeal {
    RingPtr ambient;                       // base vars then fiber vars
    std::vector<std::string> base_vars;    // x_i
    std::vector<std::string> fiber_vars;   // p_i, paired with x_i by position
    IdealGB ideal;
};

/// GB of the Jacobian ideal (dW/dx_1, ...).
IdealGB critical_ideal(const Poly& W);

/// Scalar dimension of C[x]/(dW); -1 when infinite.
long milnor_number(const Poly& W);

/// Graph of dW inside the cotangent space: ideal (p_i - dW/dx_i). Fiber
/// names default to "p_<x>".
VarietyIdeal graph_ideal(const Poly& W, const std::vector<std::string>& fiber_names = {});

/// Push a source variety on X1 through a correspondence variety on X1 x X2
/// by eliminating the X1 coordinates. With flip_first, the first cotangent
/// orientation is reversed (p1 -> -p1 conjugation of the pairing).
VarietyIdeal correspondence_image(const VarietyIdeal& corr, const VarietyIdeal& src,
                                  bool flip_first);

/// UNDECIDED is reported whenever the critical locus is not certified
/// isolated; full clean-ness testing is out of scope.
enum class CleanStatus { ISOLATED, UNDECIDED };
CleanStatus clean_critical_status(const Poly& W);

} // namespace mfcat
