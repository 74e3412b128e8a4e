#include "mfcat/dolbeault/bundle.hpp"

#include <stdexcept>

namespace mfcat::dolb {

DolForm bundle_square_residual(const Bundle& b) {
    DolForm sq = b.A.dbar() + b.A * b.A;
    DolForm wid = b.W * DolForm::identity(b.ctx, b.grading);
    return sq - wid;
}

Bundle make_bundle(const DolCtxPtr& ctx, std::vector<int> grading, DolForm A, DolForm W) {
    Bundle b{ctx, std::move(grading), std::move(A), std::move(W)};
    if (!bundle_square_residual(b).is_zero())
        throw std::invalid_argument("make_bundle: (dbar+A)^2 != W*Id");
    return b;
}

DolForm covariant_dbar(const Bundle& b, const DolForm& x) {
    return x.dbar() + DolForm::supercommutator(b.A, x);
}

DolForm curvature_F(const ConventionRegistry& reg, const Bundle& b) {
    // flat (1,0) differential: F = [dbar + A, del] acts as del(A)
    DolForm f = b.A.del();
    // mark the provenance: one curvature atom, replacing the raw counters
    DolForm out(b.ctx, f.msize(), f.grading());
    for (auto& [k, m] : f.terms()) {
        FormKey nk = k;
        nk.tags = TagVec{};
        nk.tags.ff = 1;
        out.add_term(nk, m);
    }
    return reg.f_sign < 0 ? -out : out;
}

DolForm bianchi_residual(const ConventionRegistry& reg, const Bundle& b) {
    DolForm f = curvature_F(reg, b);
    return covariant_dbar(b, f) + b.W.del() * DolForm::identity(b.ctx, b.grading);
}

DolForm dx_component(const DolForm& x, size_t i) {
    uint32_t bit = 1u << i;
    DolForm out(x.ctx(), x.msize(), x.grading());
    for (auto& [k, m] : x.terms()) {
        if (!(k.hol & bit)) continue;
        int s = popcount(k.abar) + popcount(k.hol & (bit - 1));
        std::vector<Poly> nm = m;
        if (s & 1)
            for (auto& p : nm) p = -p;
        FormKey nk = k;
        nk.hol &= ~bit;
        out.add_term(nk, std::move(nm));
    }
    return out;
}

Bundle tensor_bundle(const Bundle& a, const Bundle& b) {
    DolForm A = DolForm::kron(a.A, DolForm::identity(b.ctx, b.grading)) +
                DolForm::kron(DolForm::identity(a.ctx, a.grading), b.A);
    DolForm W = a.W + b.W;
    std::vector<int> grading(a.rank() * b.rank());
    for (size_t i = 0; i < a.rank(); ++i)
        for (size_t j = 0; j < b.rank(); ++j)
            grading[i * b.rank() + j] = (a.grading[i] + b.grading[j]) & 1;
    return make_bundle(a.ctx, std::move(grading), std::move(A), std::move(W));
}

DolForm lift_left(const DolForm& x, const Bundle& right) {
    return DolForm::kron(x, DolForm::identity(right.ctx, right.grading));
}

DolForm lift_right(const Bundle& left, const DolForm& x) {
    return DolForm::kron(DolForm::identity(left.ctx, left.grading), x);
}

} // namespace mfcat::dolb
