#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mfcat {

/// Exponent vector, fixed length = number of ring variables.
/// Exponents are machine integers; overflow past kMaxExp is a checked error.
class Monomial {
public:
    static constexpr int32_t kMaxExp = 1 << 24;

    Monomial() = default;
    explicit Monomial(size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int32_t> e) : e_(std::move(e)) {}

    size_t nvars() const { return e_.size(); }
    int32_t operator[](size_t i) const { return e_[i]; }
    int32_t& operator[](size_t i) { return e_[i]; }
    const std::vector<int32_t>& exps() const { return e_; }

    int64_t degree() const { return std::accumulate(e_.begin(), e_.end(), int64_t{0}); }

    bool is_one() const {
        for (auto x : e_) if (x) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] += o.e_[i];
            if (r.e_[i] > kMaxExp) throw std::overflow_error("Monomial: exponent overflow");
        }
        return r;
    }

    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    /// this / o, requires o.divides(*this)
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] -= o.e_[i];
            if (r.e_[i] < 0) throw std::domain_error("Monomial: non-divisible quotient");
        }
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (size_t i = 0; i < r.e_.size(); ++i)
            if (b.e_[i] > r.e_[i]) r.e_[i] = b.e_[i];
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<int32_t> e_;
};

/// Monomial orders. Degrevlex is the default; the block order puts a chosen
/// variable subset first (for elimination ideals).
class MonomialOrder {
public:
    enum Kind { DEGREVLEX, BLOCK_ELIM };

    static MonomialOrder degrevlex() { return MonomialOrder(DEGREVLEX, {}); }
    /// drop-first block order: `first` lists the indices eliminated.
    static MonomialOrder block_elim(std::vector<size_t> first) {
        return MonomialOrder(BLOCK_ELIM, std::move(first));
    }

    Kind kind() const { return kind_; }
    const std::vector<size_t>& first_block() const { return first_; }

    /// 3-way comparison: >0 if a > b in the order.
    int cmp(const Monomial& a, const Monomial& b) const {
        if (kind_ == DEGREVLEX) return cmp_drl_subset(a, b, nullptr);
        int c = cmp_drl_subset(a, b, &first_);
        if (c != 0) return c;
        // tail block: all remaining indices
        std::vector<char> in_first(a.nvars(), 0);
        for (auto i : first_) in_first[i] = 1;
        std::vector<size_t> rest;
        rest.reserve(a.nvars() - first_.size());
        for (size_t i = 0; i < a.nvars(); ++i)
            if (!in_first[i]) rest.push_back(i);
        return cmp_drl_subset(a, b, &rest);
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

private:
    MonomialOrder(Kind k, std::vector<size_t> f) : kind_(k), first_(std::move(f)) {}

    // degrevlex restricted to a subset of positions (nullptr = all)
    static int cmp_drl_subset(const Monomial& a, const Monomial& b, const std::vector<size_t>* subset) {
        int64_t da = 0, db = 0;
        if (subset) {
            for (auto i : *subset) { da += a[i]; db += b[i]; }
        } else {
            da = a.degree();
            db = b.degree();
        }
        if (da != db) return da < db ? -1 : 1;
        // revlex tie-break: last position with differing exponent; smaller wins
        if (subset) {
            for (size_t k = subset->size(); k-- > 0;) {
                size_t i = (*subset)[k];
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            }
        } else {
            for (size_t i = a.nvars(); i-- > 0;) {
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            }
        }
        return 0;
    }

    Kind kind_;
    std::vector<size_t> first_;
};

} // namespace mfcat
