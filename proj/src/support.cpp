#include "mfcat/support.hpp"

#include "mfcat/modgb.hpp"

#include <stdexcept>

namespace mfcat {

IdealGB critical_ideal(const Poly& W) {
    std::vector<Poly> gens;
    for (size_t i = 0; i < W.ring()->size(); ++i) {
        Poly d = W.derivative(i);
        if (!d.is_zero()) gens.push_back(d);
    }
    return IdealGB::make(std::move(gens), W.ring());
}

long milnor_number(const Poly& W) {
    std::vector<Poly> gens;
    for (size_t i = 0; i < W.ring()->size(); ++i) gens.push_back(W.derivative(i));
    return scalar_dimension(FPModule::quotient_by_ideal(W.ring(), gens));
}

VarietyIdeal graph_ideal(const Poly& W, const std::vector<std::string>& fiber_names) {
    const RingPtr& base = W.ring();
    std::vector<std::string> fibers = fiber_names;
    if (fibers.empty())
        for (auto& v : base->vars()) fibers.push_back("p_" + v.name);
    if (fibers.size() != base->size())
        throw std::invalid_argument("graph_ideal: fiber name count mismatch");

    std::vector<Variable> vars = base->vars();
    for (auto& f : fibers) {
        if (base->has(f)) throw std::invalid_argument("graph_ideal: name collision " + f);
        vars.push_back({f, 0});
    }
    RingPtr ambient = Ring::make(vars);
    std::vector<Poly> gens;
    for (size_t i = 0; i < base->size(); ++i)
        gens.push_back(Poly::var(ambient, fibers[i]) - W.derivative(i).mapped_to(ambient));

    VarietyIdeal v{ambient, {}, fibers, IdealGB::make(std::move(gens), ambient)};
    for (auto& b : base->vars()) v.base_vars.push_back(b.name);
    return v;
}

VarietyIdeal correspondence_image(const VarietyIdeal& corr, const VarietyIdeal& src,
                                  bool flip_first) {
    // src lives on X1; the X1 coordinates must be a prefix of corr's pairing
    size_t n1 = src.base_vars.size();
    if (corr.base_vars.size() < n1)
        throw std::invalid_argument("correspondence_image: ambient mismatch");
    for (size_t i = 0; i < n1; ++i)
        if (corr.base_vars[i] != src.base_vars[i] || corr.fiber_vars[i] != src.fiber_vars[i])
            throw std::invalid_argument("correspondence_image: X1 coordinates disagree");

    const RingPtr& amb = corr.ambient;
    // negate the first cotangent block in both the correspondence and the
    // source; the tau_1 twist conjugates the whole p1-pairing
    auto negate_p1 = [&](const Poly& g) {
        Poly out = g.mapped_to(amb);
        for (size_t i = 0; i < n1; ++i) {
            auto idx = amb->index_of(src.fiber_vars[i]);
            if (!idx) throw std::invalid_argument("correspondence_image: missing fiber variable");
            out = out.substitute(*idx, -Poly::var(amb, *idx), amb);
        }
        return out;
    };

    std::vector<Poly> gens;
    for (auto& g : corr.ideal.generators())
        gens.push_back(flip_first ? negate_p1(g) : g.mapped_to(amb));
    for (auto& g : src.ideal.generators())
        gens.push_back(flip_first ? negate_p1(g.mapped_to(amb)) : g.mapped_to(amb));

    std::vector<std::string> drop;
    for (size_t i = 0; i < n1; ++i) {
        drop.push_back(src.base_vars[i]);
        drop.push_back(src.fiber_vars[i]);
    }
    IdealGB big = IdealGB::make(std::move(gens), amb);
    IdealGB small = eliminate(big, drop);

    VarietyIdeal out{small.ring(), {}, {}, small};
    for (size_t i = n1; i < corr.base_vars.size(); ++i) {
        out.base_vars.push_back(corr.base_vars[i]);
        out.fiber_vars.push_back(corr.fiber_vars[i]);
    }
    return out;
}

CleanStatus clean_critical_status(const Poly& W) {
    return milnor_number(W) >= 0 ? CleanStatus::ISOLATED : CleanStatus::UNDECIDED;
}

} // namespace mfcat
