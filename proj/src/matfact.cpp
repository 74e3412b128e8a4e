#include "mfcat/matfact.hpp"

#include "mfcat/groebner.hpp"
#include "mfcat/modgb.hpp"

#include <sstream>
#include <stdexcept>

namespace mfcat {

MatFact::MatFact(RingPtr ring, Poly W, PolyMatrix d0, PolyMatrix d1,
                 std::optional<std::vector<KoszulRow>> rows)
    : ring_(std::move(ring)), W_(std::move(W)), d0_(std::move(d0)), d1_(std::move(d1)),
      rows_(std::move(rows)) {
    if (d0_.rows() != d1_.cols() || d0_.cols() != d1_.rows())
        throw std::invalid_argument("MatFact: inconsistent shapes");
    PolyMatrix sq0 = d1_ * d0_;   // r0 x r0
    PolyMatrix sq1 = d0_ * d1_;   // r1 x r1
    if (!sq0.equals_scaled_identity(W_) || !sq1.equals_scaled_identity(W_))
        throw std::invalid_argument("MatFact: D^2 != W*Id");
}

MatFact unit_mf(const RingPtr& ring) {
    return MatFact(ring, Poly::zero(ring), PolyMatrix(0, 1, ring), PolyMatrix(1, 0, ring),
                   std::vector<MatFact::KoszulRow>{});
}

MatFact tensor_mf(const MatFact& a, const MatFact& b) {
    if (!(*a.ring() == *b.ring()))
        throw std::invalid_argument("tensor_mf: ring mismatch (extend rings first)");
    const RingPtr& ring = a.ring();
    size_t a0 = a.rank0(), a1 = a.rank1(), b0 = b.rank0(), b1 = b.rank1();
    // even basis: [M0 x N0 | M1 x N1], odd basis: [M1 x N0 | M0 x N1]
    size_t e0 = a0 * b0, e1 = a1 * b1;
    size_t o0 = a1 * b0, o1 = a0 * b1;
    PolyMatrix d0(o0 + o1, e0 + e1, ring);
    PolyMatrix d1(e0 + e1, o0 + o1, ring);

    // block = A (x) I_n at (roff, coff)
    auto kron_left = [&](PolyMatrix& dst, size_t roff, size_t coff, const PolyMatrix& A,
                         size_t n, bool negate) {
        for (size_t i = 0; i < A.rows(); ++i)
            for (size_t j = 0; j < A.cols(); ++j) {
                if (A.at(i, j).is_zero()) continue;
                for (size_t k = 0; k < n; ++k)
                    dst.at(roff + i * n + k, coff + j * n + k) =
                        negate ? -A.at(i, j) : A.at(i, j);
            }
    };
    // block = I_n (x) B at (roff, coff)
    auto kron_right = [&](PolyMatrix& dst, size_t roff, size_t coff, size_t n,
                          const PolyMatrix& B, bool negate) {
        for (size_t k = 0; k < n; ++k)
            for (size_t i = 0; i < B.rows(); ++i)
                for (size_t j = 0; j < B.cols(); ++j) {
                    if (B.at(i, j).is_zero()) continue;
                    dst.at(roff + k * B.rows() + i, coff + k * B.cols() + j) =
                        negate ? -B.at(i, j) : B.at(i, j);
                }
    };

    kron_left(d0, 0, 0, a.d0(), b0, false);     // d0_M (x) I_{b0}
    kron_right(d0, 0, e0, a1, b.d1(), true);    // -I_{a1} (x) d1_N
    kron_right(d0, o0, 0, a0, b.d0(), false);   // I_{a0} (x) d0_N
    kron_left(d0, o0, e0, a.d1(), b1, false);   // d1_M (x) I_{b1}

    kron_left(d1, 0, 0, a.d1(), b0, false);     // d1_M (x) I_{b0}
    kron_right(d1, 0, o0, a0, b.d1(), false);   // I_{a0} (x) d1_N
    kron_right(d1, e0, 0, a1, b.d0(), true);    // -I_{a1} (x) d0_N
    kron_left(d1, e0, o0, a.d0(), b1, false);   // d0_M (x) I_{b1}

    std::optional<std::vector<MatFact::KoszulRow>> rows;
    if (a.koszul_rows() && b.koszul_rows()) {
        rows = *a.koszul_rows();
        rows->insert(rows->end(), b.koszul_rows()->begin(), b.koszul_rows()->end());
    }
    return MatFact(ring, a.curving() + b.curving(), std::move(d0), std::move(d1),
                   std::move(rows));
}

MatFact koszul_factorization(const std::vector<Poly>& p, const std::vector<Poly>& q,
                             const RingPtr& ring) {
    if (p.size() != q.size())
        throw std::invalid_argument("koszul_factorization: length mismatch");
    MatFact acc = unit_mf(ring);
    for (size_t i = 0; i < p.size(); ++i) {
        PolyMatrix d0(1, 1, ring), d1(1, 1, ring);
        d0.at(0, 0) = p[i].mapped_to(ring);
        d1.at(0, 0) = q[i].mapped_to(ring);
        MatFact factor(ring, d0.at(0, 0) * d1.at(0, 0), d0, d1,
                       std::vector<MatFact::KoszulRow>{{d0.at(0, 0), d1.at(0, 0)}});
        acc = tensor_mf(acc, factor);
    }
    return acc;
}

std::vector<Poly> koszul_divide(const Poly& W, const std::vector<Poly>& p) {
    if (p.empty()) {
        if (W.is_zero()) return {};
        throw std::invalid_argument("koszul_divide: W not in the zero ideal");
    }
    const RingPtr& ring = W.ring();
    std::vector<ModVec> cols;
    for (auto& pi : p) cols.push_back({pi.mapped_to(ring)});
    auto lift = lift_through_columns(cols, {W}, ring, 1);
    if (!lift) {
        auto I = IdealGB::make(p, ring);
        throw std::invalid_argument("koszul_divide: W not in (p); normal form witness: " +
                                    I.normal_form(W).str());
    }
    return *lift;
}

MatFact dual_mf(const MatFact& m) {
    std::optional<std::vector<MatFact::KoszulRow>> rows;
    if (m.koszul_rows() && m.koszul_rows()->size() <= 1) {
        rows = std::vector<MatFact::KoszulRow>{};
        for (auto& [p, q] : *m.koszul_rows()) rows->push_back({-q, p});
    }
    return MatFact(m.ring(), -m.curving(), -m.d1().transposed(), m.d0().transposed(),
                   std::move(rows));
}

MatFact grading_flip(const MatFact& m) {
    std::optional<std::vector<MatFact::KoszulRow>> rows;
    if (m.koszul_rows() && m.koszul_rows()->size() <= 1) {
        rows = std::vector<MatFact::KoszulRow>{};
        for (auto& [p, q] : *m.koszul_rows()) rows->push_back({q, p});
    }
    return MatFact(m.ring(), m.curving(), m.d1(), m.d0(), std::move(rows));
}

MatFact MatFact::extended_to(const RingPtr& target) const {
    return renamed([](const std::string& s) { return s; }, target);
}

MatFact MatFact::renamed(const std::function<std::string(const std::string&)>& rename,
                         const RingPtr& target) const {
    PolyMatrix nd0(d0_.rows(), d0_.cols(), target), nd1(d1_.rows(), d1_.cols(), target);
    for (size_t i = 0; i < d0_.rows(); ++i)
        for (size_t j = 0; j < d0_.cols(); ++j) nd0.at(i, j) = d0_.at(i, j).renamed(rename, target);
    for (size_t i = 0; i < d1_.rows(); ++i)
        for (size_t j = 0; j < d1_.cols(); ++j) nd1.at(i, j) = d1_.at(i, j).renamed(rename, target);
    std::optional<std::vector<KoszulRow>> rows;
    if (rows_) {
        rows = std::vector<KoszulRow>{};
        for (auto& [p, q] : *rows_)
            rows->push_back({p.renamed(rename, target), q.renamed(rename, target)});
    }
    return MatFact(target, W_.renamed(rename, target), std::move(nd0), std::move(nd1),
                   std::move(rows));
}

MatFact knorrer(const MatFact& m, const std::string& y1, const std::string& y2) {
    if (m.ring()->has(y1) || m.ring()->has(y2))
        throw std::invalid_argument("knorrer: name collision");
    RingPtr ext = ring_union(m.ring(), Ring::of_names({y1, y2}));
    Poly a = Poly::var(ext, y1), b = Poly::var(ext, y2);
    Poly i = Poly::constant(ext, Scalar::i());
    MatFact pair = koszul_factorization({a - i * b}, {a + i * b}, ext);
    return tensor_mf(m.extended_to(ext), pair);
}

MatFact identity_mf(const std::vector<std::string>& xs, const Poly& W,
                    const std::string& prime_suffix) {
    const RingPtr& base = W.ring();
    std::vector<Variable> vars = base->vars();
    for (auto& x : xs) {
        if (!base->has(x)) throw std::invalid_argument("identity_mf: unknown variable " + x);
        std::string primed = x + prime_suffix;
        if (base->has(primed)) throw std::invalid_argument("identity_mf: name collision " + primed);
        auto v = *base->index_of(x);
        vars.push_back({primed, base->var(v).cohdeg});
    }
    RingPtr ext = Ring::make(vars);
    auto prime = [&](const std::string& s) {
        for (auto& x : xs)
            if (s == x) return s + prime_suffix;
        return s;
    };
    Poly Wp = W.renamed(prime, ext);
    Poly Wx = W.mapped_to(ext);
    std::vector<Poly> p;
    for (auto& x : xs) p.push_back(Poly::var(ext, x + prime_suffix) - Poly::var(ext, x));
    std::vector<Poly> q = koszul_divide(Wp - Wx, p);
    return koszul_factorization(p, q, ext);
}

namespace {

// decompose entry as c*v + r with c scalar and r free of v; nullopt otherwise
std::optional<std::pair<Scalar, Poly>> linear_in(const Poly& e, size_t vidx) {
    if (e.degree_in(vidx) != 1) return std::nullopt;
    Poly c = e.derivative(vidx);
    if (!c.is_constant() || c.is_zero()) return std::nullopt;
    Scalar cs = c.constant_value();
    Monomial vm(e.ring()->size());
    vm[vidx] = 1;
    Poly r = e - Poly::term(e.ring(), vm, cs);
    if (r.depends_on(vidx)) return std::nullopt;
    return std::make_pair(cs, r);
}

} // namespace

MatFact exclude_variable(const MatFact& m, const std::string& v) {
    auto vidx = m.ring()->index_of(v);
    if (!vidx) throw std::invalid_argument("exclude_variable: unknown variable " + v);
    if (m.curving().depends_on(*vidx))
        throw std::invalid_argument(
            "exclude_variable: no eligible entry; the curving itself depends on " + v);
    if (!m.koszul_rows())
        throw std::invalid_argument(
            "exclude_variable: no eligible entry (factorization has no Koszul row data)");

    const auto& rows = *m.koszul_rows();
    for (size_t k = 0; k < rows.size(); ++k) {
        auto lin = linear_in(rows[k].first, *vidx);
        if (!lin) continue;
        auto [c, r] = *lin;
        RingPtr small = ring_without(m.ring(), {v});
        Poly value = (r * (Scalar(-1) / c)).mapped_to(small);
        std::vector<Poly> np, nq;
        for (size_t j = 0; j < rows.size(); ++j) {
            if (j == k) continue;
            np.push_back(rows[j].first.substitute(*vidx, value, small));
            nq.push_back(rows[j].second.substitute(*vidx, value, small));
        }
        return koszul_factorization(np, nq, small);
    }
    throw std::invalid_argument("exclude_variable: no eligible entry linear in " + v);
}

MatFact exclude_variables_greedy(const MatFact& m, const std::vector<std::string>& vars,
                                 std::vector<std::string>* excluded) {
    MatFact cur = m;
    for (auto& v : vars) {
        try {
            cur = exclude_variable(cur, v);
            if (excluded) excluded->push_back(v);
        } catch (const std::invalid_argument&) {
            // variable not excludable; leave it in place
        }
    }
    return cur;
}

std::string MatFact::str() const {
    std::ostringstream os;
    os << "ring";
    for (auto& v : ring_->vars()) {
        os << " " << v.name;
        if (v.cohdeg) os << ":" << v.cohdeg;
    }
    os << "\nW = " << W_.str() << "\n";
    auto dump = [&](const char* name, const PolyMatrix& d) {
        os << name << " (" << d.rows() << "x" << d.cols() << "):\n";
        for (size_t i = 0; i < d.rows(); ++i) {
            os << "  [";
            for (size_t j = 0; j < d.cols(); ++j) {
                if (j) os << ", ";
                os << d.at(i, j).str();
            }
            os << "]\n";
        }
    };
    dump("d0", d0_);
    dump("d1", d1_);
    return os.str();
}

} // namespace mfcat
