#pragma once

#include "mfcat/matrix.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mfcat {

/// A Z2-graded matrix factorization: free modules M0 (rank r0), M1 (rank r1)
/// with d0 : M0 -> M1 and d1 : M1 -> M0 satisfying
///     d1*d0 = W*Id_{r0},   d0*d1 = W*Id_{r1}.
/// Objects built from rank-(1,1) Koszul factors carry their row list, which
/// variable exclusion relies on.
class MatFact {
public:
    using KoszulRow = std::pair<Poly, Poly>;   // (p, q)

    MatFact(RingPtr ring, Poly W, PolyMatrix d0, PolyMatrix d1,
            std::optional<std::vector<KoszulRow>> rows = std::nullopt);

    const RingPtr& ring() const { return ring_; }
    const Poly& curving() const { return W_; }
    const PolyMatrix& d0() const { return d0_; }
    const PolyMatrix& d1() const { return d1_; }
    size_t rank0() const { return d0_.cols(); }
    size_t rank1() const { return d0_.rows(); }
    const std::optional<std::vector<KoszulRow>>& koszul_rows() const { return rows_; }

    /// Move the factorization into a larger ring (variables matched by name).
    MatFact extended_to(const RingPtr& target) const;
    MatFact renamed(const std::function<std::string(const std::string&)>& rename,
                    const RingPtr& target) const;

    bool same_matrices(const MatFact& o) const { return d0_ == o.d0_ && d1_ == o.d1_; }

    std::string str() const;

private:
    RingPtr ring_;
    Poly W_;
    PolyMatrix d0_, d1_;
    std::optional<std::vector<KoszulRow>> rows_;
};

/// Rank-(1,0) unit object with zero curving.
MatFact unit_mf(const RingPtr& ring);

/// K(p; q): iterated tensor of rank-(1,1) factors, curving p.q (Eq-style
/// Koszul matrix factorization). Lists must have equal length.
MatFact koszul_factorization(const std::vector<Poly>& p, const std::vector<Poly>& q,
                             const RingPtr& ring);

/// Find q with p.q = W; throws with a normal-form witness when W is not in (p).
std::vector<Poly> koszul_divide(const Poly& W, const std::vector<Poly>& p);

/// Graded tensor product over the shared ring; curvings add.
MatFact tensor_mf(const MatFact& a, const MatFact& b);

/// Dual factorization, curving -W.
MatFact dual_mf(const MatFact& m);

/// Swap the even/odd roles; same curving.
MatFact grading_flip(const MatFact& m);

/// Tensor with K(y1 - i*y2; y1 + i*y2) on two fresh variables; curving gains
/// y1^2 + y2^2. Throws on name collision.
MatFact knorrer(const MatFact& m, const std::string& y1, const std::string& y2);

/// Identity kernel 1_{x;W} = K_{W(x') - W(x)}(x' - x). The primed names are
/// produced by `prime` (default appends ').
MatFact identity_mf(const std::vector<std::string>& xs, const Poly& W,
                    const std::string& prime_suffix = "'");

/// Strip one Koszul row linear in `v` (entry c*v + r, c scalar, r free of v)
/// and substitute v = -r/c throughout; rank halves relative to that factor.
/// Requires the curving to be free of v.
MatFact exclude_variable(const MatFact& m, const std::string& v);

/// Apply exclude_variable for each variable in order, skipping variables with
/// no eligible row; returns the reduced factorization and the names excluded.
MatFact exclude_variables_greedy(const MatFact& m, const std::vector<std::string>& vars,
                                 std::vector<std::string>* excluded = nullptr);

} // namespace mfcat
