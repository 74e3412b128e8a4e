#include "mfcat/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mfcat {

Poly poly_reduce(const Poly& p, const std::vector<Poly>& by, const MonomialOrder& ord) {
    if (by.empty()) return p;
    struct Lead { Monomial m; Scalar c; };
    std::vector<Lead> leads;
    leads.reserve(by.size());
    for (auto& g : by) {
        auto& lt = g.leading_term(ord);
        leads.push_back({lt.mono, lt.coeff});
    }
    Poly rem = Poly::zero(p.ring());
    Poly work = p;
    while (!work.is_zero()) {
        auto& lt = work.leading_term(ord);
        bool reduced = false;
        for (size_t i = 0; i < by.size(); ++i) {
            if (leads[i].m.divides(lt.mono)) {
                Scalar c = lt.coeff / leads[i].c;
                work -= by[i].mul_term(lt.mono / leads[i].m, c);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            // move the leading term to the remainder
            rem += Poly::term(p.ring(), lt.mono, lt.coeff);
            work -= Poly::term(p.ring(), lt.mono, lt.coeff);
        }
    }
    return rem;
}

namespace {

int64_t sugar_of(const Poly& p) { return p.total_degree(); }

struct Pair {
    size_t i, j;
    Monomial lcm;
    int64_t sugar;
};

} // namespace

std::vector<Poly> groebner_basis(std::vector<Poly> gens, const MonomialOrder& ord) {
    // pair-selection strategy override, debug only
    static const char* strat = std::getenv("MFCAT_GB_STRATEGY");
    const bool use_sugar = !(strat && std::string(strat) == "normal");

    std::vector<Poly> basis;
    std::vector<int64_t> sugar;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        basis.push_back(g);
        sugar.push_back(sugar_of(g));
    }

    std::vector<Pair> pairs;
    auto push_pairs_for = [&](size_t k) {
        for (size_t i = 0; i < k; ++i) {
            const Monomial& a = basis[i].leading_term(ord).mono;
            const Monomial& b = basis[k].leading_term(ord).mono;
            if (a.coprime(b)) continue;   // Buchberger's first criterion
            Monomial l = Monomial::lcm(a, b);
            int64_t s = std::max(sugar[i] + (l / a).degree(), sugar[k] + (l / b).degree());
            pairs.push_back({i, k, std::move(l), s});
        }
    };
    for (size_t k = 0; k < basis.size(); ++k) push_pairs_for(k);

    auto pick = [&]() {
        size_t best = 0;
        for (size_t t = 1; t < pairs.size(); ++t) {
            if (use_sugar) {
                if (pairs[t].sugar < pairs[best].sugar ||
                    (pairs[t].sugar == pairs[best].sugar && ord.less(pairs[t].lcm, pairs[best].lcm)))
                    best = t;
            } else {
                if (ord.less(pairs[t].lcm, pairs[best].lcm)) best = t;
            }
        }
        Pair p = pairs[best];
        pairs.erase(pairs.begin() + best);
        return p;
    };

    while (!pairs.empty()) {
        Pair pr = pick();
        // chain criterion: skip if some other basis LT divides the lcm and both
        // side pairs were handled (conservative form: only if it strictly divides)
        bool skip = false;
        for (size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == pr.i || k == pr.j) continue;
            const Monomial& ltk = basis[k].leading_term(ord).mono;
            if (!ltk.divides(pr.lcm)) continue;
            if (Monomial::lcm(basis[pr.i].leading_term(ord).mono, ltk) != pr.lcm &&
                Monomial::lcm(basis[pr.j].leading_term(ord).mono, ltk) != pr.lcm)
                skip = true;
        }
        if (skip) continue;

        const auto& fi = basis[pr.i];
        const auto& fj = basis[pr.j];
        const auto& li = fi.leading_term(ord);
        const auto& lj = fj.leading_term(ord);
        Poly s = fi.mul_term(pr.lcm / li.mono, Scalar(1) / li.coeff) -
                 fj.mul_term(pr.lcm / lj.mono, Scalar(1) / lj.coeff);
        Poly r = poly_reduce(s, basis, ord);
        if (!r.is_zero()) {
            basis.push_back(r);
            sugar.push_back(pr.sugar);
            push_pairs_for(basis.size() - 1);
        }
    }

    // minimalize: drop elements whose LT is divisible by another LT
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        const Monomial& lt = basis[i].leading_term(ord).mono;
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& lj = basis[j].leading_term(ord).mono;
            if (lj.divides(lt) && (lj != lt || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(basis[i]);
    }

    // tail-reduce each against the others, make monic
    std::vector<Poly> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Poly r = poly_reduce(minimal[i], others, ord);
        if (r.is_zero()) continue;
        r = r * (Scalar(1) / r.leading_term(ord).coeff);
        reduced.push_back(std::move(r));
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return ord.less(a.leading_term(ord).mono, b.leading_term(ord).mono);
    });
    return reduced;
}

IdealGB IdealGB::make(std::vector<Poly> gens, RingPtr ring) {
    for (auto& g : gens)
        if (!(*g.ring() == *ring)) throw std::invalid_argument("IdealGB: generator ring mismatch");
    MonomialOrder ord = MonomialOrder::degrevlex();
    auto gb = groebner_basis(gens, ord);
    return IdealGB(std::move(ring), std::move(ord), std::move(gens), std::move(gb));
}

IdealGB IdealGB::make_elim(std::vector<Poly> gens, RingPtr ring,
                           const std::vector<std::string>& drop_first) {
    std::vector<size_t> first;
    for (auto& n : drop_first) {
        auto idx = ring->index_of(n);
        if (!idx) throw std::invalid_argument("make_elim: unknown variable " + n);
        first.push_back(*idx);
    }
    MonomialOrder ord = MonomialOrder::block_elim(std::move(first));
    auto gb = groebner_basis(gens, ord);
    return IdealGB(std::move(ring), std::move(ord), std::move(gens), std::move(gb));
}

Poly IdealGB::normal_form(const Poly& p) const {
    if (!(*p.ring() == *ring_)) throw std::invalid_argument("normal_form: ring mismatch");
    return poly_reduce(p, gb_, ord_);
}

long count_standard_monomials(const std::vector<Monomial>& lead_terms, size_t nvars) {
    if (nvars == 0) return lead_terms.empty() ? 1 : 0;
    for (auto& m : lead_terms)
        if (m.is_one()) return 0;
    // finite iff every variable has a pure power among the leading terms
    std::vector<int64_t> bound(nvars, -1);
    for (auto& m : lead_terms) {
        size_t support = 0, which = 0;
        for (size_t i = 0; i < nvars; ++i)
            if (m[i] > 0) { ++support; which = i; }
        if (support == 1) {
            if (bound[which] < 0 || m[which] < bound[which]) bound[which] = m[which];
        }
    }
    for (size_t i = 0; i < nvars; ++i)
        if (bound[i] < 0) return -1;

    // enumerate the box under the pure-power bounds, skip divisible monomials
    long count = 0;
    std::vector<int32_t> e(nvars, 0);
    for (;;) {
        bool in_ideal = false;
        for (auto& m : lead_terms) {
            bool div = true;
            for (size_t i = 0; i < nvars; ++i)
                if (m[i] > e[i]) { div = false; break; }
            if (div) { in_ideal = true; break; }
        }
        if (!in_ideal) ++count;
        size_t i = 0;
        while (i < nvars) {
            if (++e[i] < bound[i]) break;
            e[i] = 0;
            ++i;
        }
        if (i == nvars) break;
    }
    return count;
}

long IdealGB::quotient_dimension() const {
    std::vector<Monomial> lts;
    for (auto& g : gb_) lts.push_back(g.leading_term(ord_).mono);
    return count_standard_monomials(lts, ring_->size());
}

IdealGB eliminate(const IdealGB& ideal, const std::vector<std::string>& drop) {
    for (auto& d : drop)
        if (!ideal.ring()->has(d)) throw std::invalid_argument("eliminate: unknown variable " + d);
    IdealGB block = IdealGB::make_elim(ideal.generators(), ideal.ring(), drop);
    RingPtr small = ring_without(ideal.ring(), drop);
    std::vector<Poly> kept;
    for (auto& g : block.basis()) {
        bool uses_dropped = false;
        for (auto& d : drop) {
            auto idx = ideal.ring()->index_of(d);
            if (g.depends_on(*idx)) { uses_dropped = true; break; }
        }
        if (!uses_dropped) kept.push_back(g.mapped_to(small));
    }
    return IdealGB::make(std::move(kept), small);
}

std::string IdealGB::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < gb_.size(); ++i) {
        if (i) os << ", ";
        os << gb_[i].str();
    }
    if (gb_.empty()) os << "0";
    os << ")";
    return os.str();
}

} // namespace mfcat
