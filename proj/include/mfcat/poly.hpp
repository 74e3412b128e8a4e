#pragma once

#include "mfcat/monomial.hpp"
#include "mfcat/ring.hpp"
#include "mfcat/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mfcat {

/// Sparse multivariate polynomial over Gaussian rationals.
/// Terms are kept sorted descending under degrevlex (the canonical storage
/// order); no zero coefficients are stored.
class Poly {
public:
    struct Term {
        Monomial mono;
        Scalar coeff;
    };

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    static Poly constant(RingPtr ring, Scalar c);
    static Poly var(RingPtr ring, size_t idx, int32_t power = 1);
    static Poly var(RingPtr ring, const std::string& name, int32_t power = 1);
    static Poly term(RingPtr ring, Monomial m, Scalar c);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    Scalar constant_value() const;   // requires is_constant()
    size_t nterms() const { return terms_.size(); }
    int64_t total_degree() const;    // -1 for zero
    int64_t degree_in(size_t var_idx) const;
    bool depends_on(size_t var_idx) const { return degree_in(var_idx) > 0; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Scalar& c) const;
    Poly mul_term(const Monomial& m, const Scalar& c) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Scalar coeff_of(const Monomial& m) const;

    Poly derivative(size_t var_idx) const;
    Poly derivative(const std::string& name) const;

    /// Substitute variable -> polynomial (value may live in another ring;
    /// the result lives in `target` which must contain all surviving names).
    Poly substitute(size_t var_idx, const Poly& value, const RingPtr& target) const;

    /// Map into a ring that contains all variables this poly depends on,
    /// matching variables by name (rename via the map argument first).
    Poly mapped_to(const RingPtr& target) const;
    Poly renamed(const std::function<std::string(const std::string&)>& rename,
                 const RingPtr& target) const;

    /// Leading term under an arbitrary order (scan; storage stays canonical).
    const Term& leading_term(const MonomialOrder& ord) const;

    std::string str() const;

    /// Internal: build from unsorted term list (merges, drops zeros, sorts).
    static Poly from_terms(RingPtr ring, std::vector<Term> ts);

private:
    void normalize();

    RingPtr ring_;
    std::vector<Term> terms_;
};

inline Poly operator*(const Scalar& c, const Poly& p) { return p * c; }

} // namespace mfcat
