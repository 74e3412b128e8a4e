#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfcat {

/// A named commuting variable with an integer cohomological degree tag.
/// The tag is bookkeeping (fiber coordinates of weight 2, etc.); it does not
/// change commutativity.
struct Variable {
    std::string name;
    int cohdeg = 0;

    bool operator==(const Variable& o) const { return name == o.name && cohdeg == o.cohdeg; }
};

/// An ordered list of distinct variables. Polynomials refer to variables by
/// index into their ring.
class Ring {
public:
    Ring() = default;
    explicit Ring(std::vector<Variable> vars) : vars_(std::move(vars)) {
        for (size_t i = 0; i < vars_.size(); ++i)
            for (size_t j = i + 1; j < vars_.size(); ++j)
                if (vars_[i].name == vars_[j].name)
                    throw std::invalid_argument("Ring: duplicate variable " + vars_[i].name);
    }

    static std::shared_ptr<const Ring> make(std::vector<Variable> vars) {
        return std::make_shared<const Ring>(std::move(vars));
    }
    static std::shared_ptr<const Ring> of_names(const std::vector<std::string>& names) {
        std::vector<Variable> vs;
        vs.reserve(names.size());
        for (auto& n : names) vs.push_back({n, 0});
        return make(std::move(vs));
    }

    size_t size() const { return vars_.size(); }
    const Variable& var(size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& vars() const { return vars_; }

    std::optional<size_t> index_of(const std::string& name) const {
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return i;
        return std::nullopt;
    }
    bool has(const std::string& name) const { return index_of(name).has_value(); }

    bool operator==(const Ring& o) const { return vars_ == o.vars_; }

private:
    std::vector<Variable> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Left-biased union: variables of `a` in order, then the new ones of `b`.
inline RingPtr ring_union(const RingPtr& a, const RingPtr& b) {
    std::vector<Variable> vs = a->vars();
    for (auto& v : b->vars()) {
        auto idx = a->index_of(v.name);
        if (idx) {
            if (!(a->var(*idx) == v))
                throw std::invalid_argument("ring_union: conflicting cohdeg for " + v.name);
            continue;
        }
        vs.push_back(v);
    }
    return Ring::make(std::move(vs));
}

inline RingPtr ring_without(const RingPtr& r, const std::vector<std::string>& drop) {
    std::vector<Variable> vs;
    for (auto& v : r->vars()) {
        bool gone = false;
        for (auto& d : drop)
            if (v.name == d) { gone = true; break; }
        if (!gone) vs.push_back(v);
    }
    return Ring::make(std::move(vs));
}

} // namespace mfcat
