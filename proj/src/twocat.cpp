#include "mfcat/twocat.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfcat {

namespace {

void require_disjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                      const char* what) {
    for (auto& x : a)
        for (auto& y : b)
            if (x == y) throw std::invalid_argument(std::string(what) + ": variable lists overlap at " + x);
}

RingPtr ring_of_names_like(const RingPtr& proto, const std::vector<std::string>& names) {
    std::vector<Variable> vs;
    for (auto& n : names) {
        auto idx = proto->index_of(n);
        vs.push_back(idx ? proto->var(*idx) : Variable{n, 0});
    }
    return Ring::make(vs);
}

} // namespace

LGObject make_lg_object(std::vector<std::string> base, std::vector<std::string> extras, Poly W) {
    require_disjoint(base, extras, "LGObject");
    for (size_t i = 0; i < W.ring()->size(); ++i) {
        if (!W.depends_on(i)) continue;
        const std::string& n = W.ring()->var(i).name;
        bool known = std::count(base.begin(), base.end(), n) ||
                     std::count(extras.begin(), extras.end(), n);
        if (!known) throw std::invalid_argument("LGObject: W depends on undeclared " + n);
    }
    return LGObject{std::move(base), std::move(extras), std::move(W)};
}

std::pair<RingPtr, Poly> lg_hom_ring(const LGObject& o1, const LGObject& o2) {
    if (o1.base != o2.base) throw std::invalid_argument("lg_hom_ring: base mismatch");
    require_disjoint(o1.extras, o2.extras, "lg_hom_ring");
    std::vector<std::string> names = o1.base;
    names.insert(names.end(), o1.extras.begin(), o1.extras.end());
    names.insert(names.end(), o2.extras.begin(), o2.extras.end());
    RingPtr ring = ring_union(ring_of_names_like(o1.ring(), names), o2.ring());
    ring = ring_union(ring, o1.ring());
    Poly curving = o2.W.mapped_to(ring) - o1.W.mapped_to(ring);
    return {ring, curving};
}

LGObject correspondence_apply(const Correspondence& c, const LGObject& o) {
    if (c.source_base != o.base)
        throw std::invalid_argument("correspondence_apply: base mismatch");
    std::vector<std::string> extras = c.source_base;
    extras.insert(extras.end(), o.extras.begin(), o.extras.end());
    extras.insert(extras.end(), c.extras.begin(), c.extras.end());
    std::vector<std::string> names = c.target_base;
    names.insert(names.end(), extras.begin(), extras.end());
    RingPtr ring = ring_union(ring_of_names_like(o.ring(), names), o.ring());
    ring = ring_union(ring, c.W12.ring());
    Poly W = o.W.mapped_to(ring) + c.W12.mapped_to(ring);
    return make_lg_object(c.target_base, std::move(extras), std::move(W));
}

Correspondence compose_correspondences(const Correspondence& c23, const Correspondence& c12) {
    if (c12.target_base != c23.source_base)
        throw std::invalid_argument("compose_correspondences: base mismatch");
    std::vector<std::string> extras = c12.extras;
    extras.insert(extras.end(), c23.extras.begin(), c23.extras.end());
    extras.insert(extras.end(), c12.target_base.begin(), c12.target_base.end());
    RingPtr ring = ring_union(c12.W12.ring(), c23.W12.ring());
    return Correspondence{c12.source_base, c23.target_base, std::move(extras),
                          c12.W12.mapped_to(ring) + c23.W12.mapped_to(ring)};
}

Correspondence legendre_correspondence(const std::vector<std::string>& xs,
                                       const std::vector<std::string>& ys, int sign) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("legendre: base length mismatch");
    require_disjoint(xs, ys, "legendre");
    std::vector<std::string> names = xs;
    names.insert(names.end(), ys.begin(), ys.end());
    RingPtr ring = Ring::of_names(names);
    Poly W = Poly::zero(ring);
    for (size_t i = 0; i < xs.size(); ++i)
        W += Poly::var(ring, xs[i]) * Poly::var(ring, ys[i]);
    if (sign < 0) W = -W;
    return Correspondence{xs, ys, {}, std::move(W)};
}

LGObject legendre(const LGObject& o, int sign, const std::vector<std::string>& target_base) {
    return correspondence_apply(legendre_correspondence(o.base, target_base, sign), o);
}

Correspondence identity_correspondence(const std::vector<std::string>& xs,
                                       const std::string& prime_suffix,
                                       const std::string& a_prefix) {
    std::vector<std::string> primed, as, names;
    for (auto& x : xs) primed.push_back(x + prime_suffix);
    for (auto& x : xs) as.push_back(a_prefix + x);
    names = xs;
    names.insert(names.end(), primed.begin(), primed.end());
    names.insert(names.end(), as.begin(), as.end());
    RingPtr ring = Ring::of_names(names);
    Poly W = Poly::zero(ring);
    for (size_t i = 0; i < xs.size(); ++i)
        W += Poly::var(ring, as[i]) * (Poly::var(ring, primed[i]) - Poly::var(ring, xs[i]));
    return Correspondence{xs, primed, as, std::move(W)};
}

LGObject translate2(const LGObject& o, const std::string& fresh) {
    if (o.ring()->has(fresh)) throw std::invalid_argument("translate2: name collision " + fresh);
    RingPtr ring = ring_union(o.ring(), Ring::of_names({fresh}));
    std::vector<std::string> extras = o.extras;
    extras.push_back(fresh);
    Poly a = Poly::var(ring, fresh);
    return make_lg_object(o.base, std::move(extras), o.W.mapped_to(ring) + a * a);
}

MatFact compose_1morphisms(const MatFact& m12, const MatFact& m23,
                           const std::vector<std::string>& middle) {
    RingPtr ring = ring_union(m12.ring(), m23.ring());
    MatFact t = tensor_mf(m12.extended_to(ring), m23.extended_to(ring));
    for (auto& v : middle) {
        auto idx = ring->index_of(v);
        if (idx && t.curving().depends_on(*idx))
            throw std::invalid_argument("compose_1morphisms: curvings do not cancel over " + v);
    }
    return exclude_variables_greedy(t, middle);
}

MatFact hom_generator(const RingPtr& ring, const Poly& dW) {
    Poly residual = dW;
    std::vector<Poly> ps, qs;
    for (size_t i = 0; i < ring->size() && !residual.is_zero(); ++i) {
        Poly at_zero = residual.substitute(i, Poly::zero(ring), ring);
        Poly diff = residual - at_zero;   // divisible by the variable
        if (diff.is_zero()) continue;
        Poly q = Poly::zero(ring);
        for (auto& t : diff.terms()) {
            Monomial m = t.mono;
            m[i] -= 1;
            q += Poly::term(ring, m, t.coeff);
        }
        ps.push_back(Poly::var(ring, i));
        qs.push_back(q);
        residual = at_zero;
    }
    if (!residual.is_zero())
        throw std::invalid_argument("hom_generator: curving has a constant term");
    if (ps.empty()) return unit_mf(ring);
    return koszul_factorization(ps, qs, ring);
}

MatFact hom_generator(const LGObject& o1, const LGObject& o2) {
    auto [ring, dW] = lg_hom_ring(o1, o2);
    return hom_generator(ring, dW);
}

MorphismFunctorResult morphism_image(const MatFact& probe, const Correspondence& corr,
                                     const LGObject& o1, const LGObject& o2,
                                     const std::string& prime1, const std::string& prime2) {
    if (o1.base != corr.source_base || o2.base != corr.source_base)
        throw std::invalid_argument("morphism_image: object/correspondence base mismatch");

    const std::vector<std::string>& xs = corr.source_base;
    auto suffixed = [](const std::vector<std::string>& ns, const std::string& s) {
        std::vector<std::string> out;
        for (auto& n : ns) out.push_back(n + s);
        return out;
    };
    std::vector<std::string> x1 = suffixed(xs, prime1), x2 = suffixed(xs, prime2);
    std::vector<std::string> u1 = suffixed(o1.extras, prime1);
    std::vector<std::string> w2 = suffixed(o2.extras, prime2);
    std::vector<std::string> z1 = suffixed(corr.extras, prime1);
    std::vector<std::string> z2 = suffixed(corr.extras, prime2);

    // total ring: probe vars, source coordinates, target base, primed copies;
    // the unprimed correspondence extras never appear in the kernel
    std::vector<std::string> names = xs;
    auto push_all = [&](const std::vector<std::string>& ns) {
        names.insert(names.end(), ns.begin(), ns.end());
    };
    push_all(o1.extras);
    push_all(o2.extras);
    push_all(corr.target_base);
    push_all(x1);
    push_all(u1);
    push_all(z1);
    push_all(x2);
    push_all(w2);
    push_all(z2);
    std::vector<Variable> ring_vars;
    for (auto& n : names) {
        if (std::count_if(ring_vars.begin(), ring_vars.end(),
                          [&](const Variable& v) { return v.name == n; }))
            continue;
        ring_vars.push_back({n, 0});
    }
    RingPtr ring = ring_union(probe.ring(), Ring::make(std::move(ring_vars)));

    auto renamer = [&](const std::vector<std::string>& from, const std::vector<std::string>& to) {
        return [from, to](const std::string& s) {
            for (size_t i = 0; i < from.size(); ++i)
                if (s == from[i]) return to[i];
            return s;
        };
    };

    // p-rows: x''-x, w''-w, x'-x, u'-u, z''-z'
    std::vector<Poly> p;
    auto diff_rows = [&](const std::vector<std::string>& a, const std::vector<std::string>& b) {
        for (size_t i = 0; i < a.size(); ++i)
            p.push_back(Poly::var(ring, a[i]) - Poly::var(ring, b[i]));
    };
    diff_rows(x2, xs);
    diff_rows(w2, o2.extras);
    diff_rows(x1, xs);
    diff_rows(u1, o1.extras);
    diff_rows(z2, z1);

    // W12tot = (W2'' - W2) - (W1' - W1) + (corrW'' - corrW')
    std::vector<std::string> from2 = xs, to2 = x2;
    from2.insert(from2.end(), o2.extras.begin(), o2.extras.end());
    to2.insert(to2.end(), w2.begin(), w2.end());
    std::vector<std::string> from1 = xs, to1 = x1;
    from1.insert(from1.end(), o1.extras.begin(), o1.extras.end());
    to1.insert(to1.end(), u1.begin(), u1.end());
    std::vector<std::string> fromc2 = xs, toc2 = x2;
    fromc2.insert(fromc2.end(), corr.extras.begin(), corr.extras.end());
    toc2.insert(toc2.end(), z2.begin(), z2.end());
    std::vector<std::string> fromc1 = xs, toc1 = x1;
    fromc1.insert(fromc1.end(), corr.extras.begin(), corr.extras.end());
    toc1.insert(toc1.end(), z1.begin(), z1.end());

    Poly W2pp = o2.W.renamed(renamer(from2, to2), ring);
    Poly W2 = o2.W.mapped_to(ring);
    Poly W1p = o1.W.renamed(renamer(from1, to1), ring);
    Poly W1 = o1.W.mapped_to(ring);
    Poly C2 = corr.W12.renamed(renamer(fromc2, toc2), ring);
    Poly C1 = corr.W12.renamed(renamer(fromc1, toc1), ring);
    Poly W12tot = (W2pp - W2) - (W1p - W1) + (C2 - C1);

    std::vector<Poly> q = koszul_divide(W12tot, p);
    MatFact kernel = koszul_factorization(p, q, ring);
    MatFact image = tensor_mf(probe.extended_to(ring), kernel);

    // exclude the source-side coordinates
    std::vector<std::string> middle = xs;
    middle.insert(middle.end(), o1.extras.begin(), o1.extras.end());
    middle.insert(middle.end(), o2.extras.begin(), o2.extras.end());
    MatFact reduced = exclude_variables_greedy(image, middle);

    // functor images of the endpoints: (x', u', z'; W1' + corrW') etc.
    std::vector<std::string> ex1 = x1;
    ex1.insert(ex1.end(), u1.begin(), u1.end());
    ex1.insert(ex1.end(), z1.begin(), z1.end());
    std::vector<std::string> ex2 = x2;
    ex2.insert(ex2.end(), w2.begin(), w2.end());
    ex2.insert(ex2.end(), z2.begin(), z2.end());
    LGObject img1 = make_lg_object(corr.target_base, ex1, (W1p + C1));
    LGObject img2 = make_lg_object(corr.target_base, ex2, (W2pp + C2));
    return MorphismFunctorResult{std::move(reduced), std::move(img1), std::move(img2)};
}

} // namespace mfcat
