#include "mfcat/modgb.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mfcat {

ModVec modvec_zero(const RingPtr& ring, size_t m) {
    return ModVec(m, Poly::zero(ring));
}

bool modvec_is_zero(const ModVec& v) {
    for (auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

ModVec modvec_add(const ModVec& a, const ModVec& b) {
    ModVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

ModVec modvec_sub(const ModVec& a, const ModVec& b) {
    ModVec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

ModVec modvec_mul_term(const ModVec& v, const Monomial& m, const Scalar& c) {
    ModVec r;
    r.reserve(v.size());
    for (auto& p : v) r.push_back(p.mul_term(m, c));
    return r;
}

ModVec modvec_mul(const ModVec& v, const Poly& p) {
    ModVec r;
    r.reserve(v.size());
    for (auto& q : v) r.push_back(q * p);
    return r;
}

std::pair<size_t, Poly::Term> ModuleGB::lead(const ModVec& v, const MonomialOrder& ord) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return {i, v[i].leading_term(ord)};
    throw std::domain_error("ModuleGB::lead of zero vector");
}

namespace {

ModVec mod_reduce(const ModVec& v, const std::vector<ModVec>& basis, const MonomialOrder& ord,
                  const RingPtr& ring) {
    struct Lead { size_t comp; Monomial m; Scalar c; };
    std::vector<Lead> leads;
    leads.reserve(basis.size());
    for (auto& g : basis) {
        auto [comp, lt] = ModuleGB::lead(g, ord);
        leads.push_back({comp, lt.mono, lt.coeff});
    }
    ModVec rem = modvec_zero(ring, v.size());
    ModVec work = v;
    while (!modvec_is_zero(work)) {
        auto [comp, lt] = ModuleGB::lead(work, ord);
        bool reduced = false;
        for (size_t k = 0; k < basis.size(); ++k) {
            if (leads[k].comp == comp && leads[k].m.divides(lt.mono)) {
                work = modvec_sub(work, modvec_mul_term(basis[k], lt.mono / leads[k].m,
                                                        lt.coeff / leads[k].c));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Poly t = Poly::term(ring, lt.mono, lt.coeff);
            rem[comp] += t;
            work[comp] -= t;
        }
    }
    return rem;
}

int64_t mod_sugar(const ModVec& v) {
    int64_t d = 0;
    for (auto& p : v) d = std::max(d, p.total_degree());
    return d;
}

std::vector<ModVec> module_buchberger(std::vector<ModVec> gens, const MonomialOrder& ord,
                                      const RingPtr& ring, size_t /*ncomp*/) {
    std::vector<ModVec> basis;
    std::vector<int64_t> sugar;
    for (auto& g : gens) {
        if (modvec_is_zero(g)) continue;
        basis.push_back(g);
        sugar.push_back(mod_sugar(g));
    }

    struct Pair { size_t i, j; Monomial lcm; int64_t sugar; };
    std::vector<Pair> pairs;
    auto push_pairs_for = [&](size_t k) {
        auto [ck, lk] = ModuleGB::lead(basis[k], ord);
        for (size_t i = 0; i < k; ++i) {
            auto [ci, li] = ModuleGB::lead(basis[i], ord);
            if (ci != ck) continue;   // S-pairs need equal leading components
            Monomial l = Monomial::lcm(li.mono, lk.mono);
            int64_t s = std::max(sugar[i] + (l / li.mono).degree(),
                                 sugar[k] + (l / lk.mono).degree());
            pairs.push_back({i, k, std::move(l), s});
        }
    };
    for (size_t k = 0; k < basis.size(); ++k) push_pairs_for(k);

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t t = 1; t < pairs.size(); ++t)
            if (pairs[t].sugar < pairs[best].sugar ||
                (pairs[t].sugar == pairs[best].sugar && ord.less(pairs[t].lcm, pairs[best].lcm)))
                best = t;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);

        auto [ci, li] = ModuleGB::lead(basis[pr.i], ord);
        auto [cj, lj] = ModuleGB::lead(basis[pr.j], ord);
        ModVec s = modvec_sub(
            modvec_mul_term(basis[pr.i], pr.lcm / li.mono, Scalar(1) / li.coeff),
            modvec_mul_term(basis[pr.j], pr.lcm / lj.mono, Scalar(1) / lj.coeff));
        ModVec r = mod_reduce(s, basis, ord, ring);
        if (!modvec_is_zero(r)) {
            basis.push_back(r);
            sugar.push_back(pr.sugar);
            push_pairs_for(basis.size() - 1);
        }
    }

    // minimalize + tail-reduce + monic
    std::vector<ModVec> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        auto [ci, li] = ModuleGB::lead(basis[i], ord);
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            auto [cj, lj] = ModuleGB::lead(basis[j], ord);
            if (cj == ci && lj.mono.divides(li.mono) && (lj.mono != li.mono || j < i))
                redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }
    std::vector<ModVec> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<ModVec> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        ModVec r = others.empty() ? minimal[i] : mod_reduce(minimal[i], others, ord, ring);
        if (modvec_is_zero(r)) continue;
        auto [c, lt] = ModuleGB::lead(r, ord);
        reduced.push_back(modvec_mul_term(r, Monomial(ring->size()), Scalar(1) / lt.coeff));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const ModVec& a, const ModVec& b) {
        auto [ca, la] = ModuleGB::lead(a, ord);
        auto [cb, lb] = ModuleGB::lead(b, ord);
        if (ca != cb) return ca < cb;
        return ord.less(la.mono, lb.mono);
    });
    return reduced;
}

} // namespace

ModuleGB::ModuleGB(std::vector<ModVec> gens, RingPtr ring, size_t ncomp)
    : ring_(std::move(ring)), ncomp_(ncomp) {
    for (auto& g : gens)
        if (g.size() != ncomp_) throw std::invalid_argument("ModuleGB: component size mismatch");
    basis_ = module_buchberger(std::move(gens), ord_, ring_, ncomp_);
}

ModVec ModuleGB::normal_form(const ModVec& v) const {
    if (v.size() != ncomp_) throw std::invalid_argument("ModuleGB::normal_form: size mismatch");
    if (basis_.empty()) return v;
    return mod_reduce(v, basis_, ord_, ring_);
}

// Extended-column computation: vectors [column | tag] in R^(m+n); GB elements
// with zero column block are syzygies, and reduction of [target | 0] gives lifts.
namespace {

std::vector<ModVec> extend_columns(const std::vector<ModVec>& columns, const RingPtr& ring,
                                   size_t m) {
    size_t n = columns.size();
    std::vector<ModVec> ext;
    ext.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        ModVec e = modvec_zero(ring, m + n);
        for (size_t i = 0; i < m; ++i) e[i] = columns[k][i];
        e[m + k] = Poly::constant(ring, Scalar(1));
        ext.push_back(std::move(e));
    }
    return ext;
}

} // namespace

std::vector<ModVec> syzygies_of_columns(const std::vector<ModVec>& columns, const RingPtr& ring,
                                        size_t m) {
    size_t n = columns.size();
    if (n == 0) return {};
    ModuleGB gb(extend_columns(columns, ring, m), ring, m + n);
    std::vector<ModVec> syz;
    for (auto& g : gb.basis()) {
        bool zero_block = true;
        for (size_t i = 0; i < m; ++i)
            if (!g[i].is_zero()) { zero_block = false; break; }
        if (!zero_block) continue;
        ModVec s(g.begin() + m, g.end());
        syz.push_back(std::move(s));
    }
    return syz;
}

std::optional<std::vector<Poly>> lift_through_columns(const std::vector<ModVec>& columns,
                                                      const ModVec& target, const RingPtr& ring,
                                                      size_t m) {
    size_t n = columns.size();
    ModuleGB gb(extend_columns(columns, ring, m), ring, m + n);
    ModVec t = modvec_zero(ring, m + n);
    for (size_t i = 0; i < m; ++i) t[i] = target[i];
    ModVec r = gb.normal_form(t);
    for (size_t i = 0; i < m; ++i)
        if (!r[i].is_zero()) return std::nullopt;
    std::vector<Poly> coeffs;
    coeffs.reserve(n);
    for (size_t k = 0; k < n; ++k) coeffs.push_back(-r[m + k]);
    return coeffs;
}

FPModule FPModule::quotient_by_ideal(const RingPtr& ring, const std::vector<Poly>& gens) {
    FPModule mod;
    mod.ring = ring;
    mod.rank = 1;
    mod.grading = {0};
    for (auto& g : gens)
        if (!g.is_zero()) mod.relations.push_back({g});
    return mod;
}

long scalar_dimension(const FPModule& mod) {
    if (mod.rank == 0) return 0;
    if (mod.relations.empty())
        return mod.ring->size() == 0 ? static_cast<long>(mod.rank) : -1;
    ModuleGB gb(mod.relations, mod.ring, mod.rank);
    long total = 0;
    MonomialOrder ord = MonomialOrder::degrevlex();
    for (size_t c = 0; c < mod.rank; ++c) {
        std::vector<Monomial> lts;
        for (auto& g : gb.basis()) {
            auto [comp, lt] = ModuleGB::lead(g, ord);
            if (comp == c) lts.push_back(lt.mono);
        }
        long d = count_standard_monomials(lts, mod.ring->size());
        if (d < 0) return -1;
        total += d;
    }
    return total;
}

FPModule syzygy_matrix(const std::vector<Poly>& gens, const RingPtr& ring) {
    std::vector<ModVec> cols;
    cols.reserve(gens.size());
    for (auto& g : gens) cols.push_back({g});
    FPModule mod;
    mod.ring = ring;
    mod.rank = gens.size();
    mod.grading.assign(gens.size(), 0);
    mod.relations = syzygies_of_columns(cols, ring, 1);
    return mod;
}

} // namespace mfcat
