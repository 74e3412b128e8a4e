#include "mfcat/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mfcat {

namespace {
const MonomialOrder& canon_order() {
    static const MonomialOrder o = MonomialOrder::degrevlex();
    return o;
}
} // namespace

Poly Poly::constant(RingPtr ring, Scalar c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_.push_back({Monomial(ring->size()), std::move(c)});
    return p;
}

Poly Poly::var(RingPtr ring, size_t idx, int32_t power) {
    if (idx >= ring->size()) throw std::out_of_range("Poly::var: bad index");
    Monomial m(ring->size());
    m[idx] = power;
    Poly p(ring);
    if (power != 0 || true) p.terms_.push_back({std::move(m), Scalar(1)});
    return p;
}

Poly Poly::var(RingPtr ring, const std::string& name, int32_t power) {
    auto idx = ring->index_of(name);
    if (!idx) throw std::invalid_argument("Poly::var: unknown variable " + name);
    return var(ring, *idx, power);
}

Poly Poly::term(RingPtr ring, Monomial m, Scalar c) {
    Poly p(ring);
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
}

Scalar Poly::constant_value() const {
    if (terms_.empty()) return Scalar(0);
    if (terms_.size() != 1 || !terms_[0].mono.is_one())
        throw std::domain_error("Poly::constant_value: not constant");
    return terms_[0].coeff;
}

int64_t Poly::total_degree() const {
    int64_t d = -1;
    for (auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

int64_t Poly::degree_in(size_t var_idx) const {
    int64_t d = 0;
    for (auto& t : terms_) d = std::max<int64_t>(d, t.mono[var_idx]);
    return d;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
        return canon_order().greater(a.mono, b.mono);
    });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    terms_.clear();
    for (auto& t : out)
        if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> ts) {
    Poly p(std::move(ring));
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
}

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

// merge of two descending term lists
Poly& Poly::operator+=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    const auto& ord = canon_order();
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.cmp(terms_[i].mono, o.terms_[j].mono);
        if (c > 0) {
            out.push_back(std::move(terms_[i++]));
        } else if (c < 0) {
            out.push_back(o.terms_[j++]);
        } else {
            Scalar s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) out.push_back({terms_[i].mono, std::move(s)});
            ++i; ++j;
        }
    }
    while (i < terms_.size()) out.push_back(std::move(terms_[i++]));
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.terms_.empty() || b.terms_.empty()) return Poly::zero(ring);
    std::vector<Poly::Term> ts;
    ts.reserve(a.terms_.size() * b.terms_.size());
    for (auto& ta : a.terms_)
        for (auto& tb : b.terms_)
            ts.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
    return Poly::from_terms(ring, std::move(ts));
}

Poly Poly::operator*(const Scalar& c) const {
    if (c.is_zero()) return Poly::zero(ring_);
    Poly r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::mul_term(const Monomial& m, const Scalar& c) const {
    if (c.is_zero()) return Poly::zero(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    // multiplying by a fixed monomial preserves degrevlex order
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Scalar Poly::coeff_of(const Monomial& m) const {
    for (auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return Scalar(0);
}

Poly Poly::derivative(size_t var_idx) const {
    std::vector<Term> ts;
    for (auto& t : terms_) {
        int32_t e = t.mono[var_idx];
        if (e == 0) continue;
        Monomial m = t.mono;
        m[var_idx] = e - 1;
        ts.push_back({std::move(m), t.coeff * Scalar(e)});
    }
    return from_terms(ring_, std::move(ts));
}

Poly Poly::derivative(const std::string& name) const {
    auto idx = ring_->index_of(name);
    if (!idx) throw std::invalid_argument("derivative: unknown variable " + name);
    return derivative(*idx);
}

Poly Poly::substitute(size_t var_idx, const Poly& value, const RingPtr& target) const {
    Poly result = Poly::zero(target);
    Poly val = value.ring() == target ? value : value.mapped_to(target);
    for (auto& t : terms_) {
        // move monomial minus the substituted variable into the target ring
        Monomial m(target->size());
        for (size_t i = 0; i < ring_->size(); ++i) {
            if (i == var_idx) continue;
            int32_t e = t.mono[i];
            if (e == 0) continue;
            auto j = target->index_of(ring_->var(i).name);
            if (!j) throw std::invalid_argument("substitute: target ring lacks " + ring_->var(i).name);
            m[*j] = e;
        }
        Poly piece = Poly::term(target, std::move(m), t.coeff);
        int32_t e = t.mono[var_idx];
        for (int32_t k = 0; k < e; ++k) piece = piece * val;
        result += piece;
    }
    return result;
}

Poly Poly::mapped_to(const RingPtr& target) const {
    return renamed([](const std::string& s) { return s; }, target);
}

Poly Poly::renamed(const std::function<std::string(const std::string&)>& rename,
                   const RingPtr& target) const {
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    std::vector<int> idx_map(ring_->size(), -1);
    for (size_t i = 0; i < ring_->size(); ++i) {
        auto j = target->index_of(rename(ring_->var(i).name));
        if (j) idx_map[i] = static_cast<int>(*j);
    }
    for (auto& t : terms_) {
        Monomial m(target->size());
        for (size_t i = 0; i < ring_->size(); ++i) {
            int32_t e = t.mono[i];
            if (e == 0) continue;
            if (idx_map[i] < 0)
                throw std::invalid_argument("mapped_to: target ring lacks " +
                                            rename(ring_->var(i).name));
            m[idx_map[i]] = e;
        }
        ts.push_back({std::move(m), t.coeff});
    }
    return from_terms(target, std::move(ts));
}

const Poly::Term& Poly::leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::domain_error("leading_term of zero polynomial");
    if (ord.kind() == MonomialOrder::DEGREVLEX) return terms_.front();
    size_t best = 0;
    for (size_t i = 1; i < terms_.size(); ++i)
        if (ord.greater(terms_[i].mono, terms_[best].mono)) best = i;
    return terms_[best];
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        Scalar c = t.coeff;
        std::string sign;
        // pull a leading minus out of pure-real and pure-imaginary coefficients
        bool negated = false;
        if (c.is_real() && c.re() < 0) { negated = true; c = -c; }
        else if (c.re() == 0 && c.im() < 0) { negated = true; c = -c; }
        if (first) {
            if (negated) os << "-";
        } else {
            os << (negated ? " - " : " + ");
        }
        first = false;

        std::string cs = c.str();
        bool composite = !c.is_real() && c.re() != 0;   // needs parens when multiplied
        bool has_vars = !t.mono.is_one();
        if (!has_vars) {
            os << (composite ? "(" + cs + ")" : cs);
        } else {
            if (!c.is_one()) {
                os << (composite ? "(" + cs + ")" : cs) << "*";
            }
            bool firstv = true;
            for (size_t i = 0; i < ring_->size(); ++i) {
                int32_t e = t.mono[i];
                if (e == 0) continue;
                if (!firstv) os << "*";
                firstv = false;
                os << ring_->var(i).name;
                if (e != 1) os << "^" << e;
            }
        }
    }
    return os.str();
}

} // namespace mfcat
