#pragma once

#include "mfcat/groebner.hpp"

#include <optional>
#include <vector>

namespace mfcat {

/// Element of a free module R^m: one polynomial per component.
using ModVec = std::vector<Poly>;

ModVec modvec_zero(const RingPtr& ring, size_t m);
bool modvec_is_zero(const ModVec& v);
ModVec modvec_add(const ModVec& a, const ModVec& b);
ModVec modvec_sub(const ModVec& a, const ModVec& b);
ModVec modvec_mul_term(const ModVec& v, const Monomial& m, const Scalar& c);
ModVec modvec_mul(const ModVec& v, const Poly& p);

/// Finitely presented Z2-graded module: cokernel of the relation columns
/// inside R^rank. `grading[i]` is the Z2 label of the i-th free generator.
struct FPModule {
    RingPtr ring;
    size_t rank = 0;
    std::vector<ModVec> relations;   // each of length rank
    std::vector<int> grading;        // size rank, values 0/1

    static FPModule quotient_by_ideal(const RingPtr& ring, const std::vector<Poly>& gens);
};

/// Count of standard monomials of the module GB of the relations; -1 = infinite.
long scalar_dimension(const FPModule& mod);

/// Position-over-term module Groebner machinery. Component 0 has the highest
/// priority; ties break by degrevlex on the monomial.
class ModuleGB {
public:
    ModuleGB(std::vector<ModVec> gens, RingPtr ring, size_t ncomp);

    const std::vector<ModVec>& basis() const { return basis_; }
    ModVec normal_form(const ModVec& v) const;
    size_t ncomp() const { return ncomp_; }

    /// leading (component, term) under the POT order; vector must be nonzero
    static std::pair<size_t, Poly::Term> lead(const ModVec& v, const MonomialOrder& ord);

private:
    RingPtr ring_;
    size_t ncomp_;
    MonomialOrder ord_ = MonomialOrder::degrevlex();
    std::vector<ModVec> basis_;
};

/// Syzygy module of a list of columns in R^m: generators of
/// { s in R^n : sum_k s_k * columns_k = 0 }.
std::vector<ModVec> syzygies_of_columns(const std::vector<ModVec>& columns,
                                        const RingPtr& ring, size_t m);

/// Express `target` in the column span: target = sum coeffs_k columns_k.
/// Returns nullopt when target is not in the span.
std::optional<std::vector<Poly>> lift_through_columns(const std::vector<ModVec>& columns,
                                                      const ModVec& target,
                                                      const RingPtr& ring, size_t m);

/// Syzygy module of a polynomial list, reported as an
/// FPModule of rank = gens.size() whose relation columns are the syzygies.
FPModule syzygy_matrix(const std::vector<Poly>& gens, const RingPtr& ring);

} // namespace mfcat
