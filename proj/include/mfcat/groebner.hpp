#pragma once

#include "mfcat/poly.hpp"

#include <string>
#include <vector>

namespace mfcat {

/// An ideal presented by generators together with its reduced Groebner basis
/// under the stated order. Immutable once built.
class IdealGB {
public:
    /// Default monomial order (degrevlex).
    static IdealGB make(std::vector<Poly> gens, RingPtr ring);
    /// Elimination order with the given variable names first.
    static IdealGB make_elim(std::vector<Poly> gens, RingPtr ring,
                             const std::vector<std::string>& drop_first);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Poly>& generators() const { return gens_; }
    const std::vector<Poly>& basis() const { return gb_; }
    const MonomialOrder& order() const { return ord_; }

    Poly normal_form(const Poly& p) const;
    bool contains(const Poly& p) const { return normal_form(p).is_zero(); }
    bool is_zero_ideal() const { return gb_.empty(); }

    /// nonnegative count of standard monomials, or -1 for infinite
    long quotient_dimension() const;

    std::string str() const;

private:
    IdealGB(RingPtr ring, MonomialOrder ord, std::vector<Poly> gens, std::vector<Poly> gb)
        : ring_(std::move(ring)), ord_(std::move(ord)), gens_(std::move(gens)), gb_(std::move(gb)) {}

    RingPtr ring_;
    MonomialOrder ord_;
    std::vector<Poly> gens_;
    std::vector<Poly> gb_;
};

/// Remainder of p on division by the (not necessarily Groebner) list `by`.
Poly poly_reduce(const Poly& p, const std::vector<Poly>& by, const MonomialOrder& ord);

/// Reduced Groebner basis of the given generators (Buchberger, sugar strategy,
/// auto-reduced, leading coefficients 1, sorted by leading monomial).
std::vector<Poly> groebner_basis(std::vector<Poly> gens, const MonomialOrder& ord);

/// Generators of I ∩ C[vars minus drop], as an ideal over the smaller ring.
IdealGB eliminate(const IdealGB& ideal, const std::vector<std::string>& drop);

/// Count standard monomials of a monomial ideal given by GB leading terms;
/// -1 when the staircase is infinite. Exposed for the module variant.
long count_standard_monomials(const std::vector<Monomial>& lead_terms, size_t nvars);

} // namespace mfcat
