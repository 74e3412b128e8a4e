#pragma once

#include "mfcat/homology.hpp"
#include "mfcat/matfact.hpp"

#include <string>
#include <vector>

namespace mfcat {

/// Object of the relative 2-category over the base coordinates: a list of
/// extra variables together with a curving polynomial in base+extras.
struct LGObject {
    std::vector<std::string> base;
    std::vector<std::string> extras;
    Poly W;   // lives in a ring containing base and extras

    RingPtr ring() const { return W.ring(); }
};

LGObject make_lg_object(std::vector<std::string> base, std::vector<std::string> extras, Poly W);

/// A correspondence between two bases: extra variables z and a curving W12
/// in C[source, target, z].
struct Correspondence {
    std::vector<std::string> source_base;
    std::vector<std::string> target_base;
    std::vector<std::string> extras;
    Poly W12;
};

/// Ring and curving of the morphism category Hom(o1, o2): all of base,
/// extras1, extras2 with curving W2 - W1. Bases must agree; extras must be
/// disjoint (rename before calling).
std::pair<RingPtr, Poly> lg_hom_ring(const LGObject& o1, const LGObject& o2);

/// Object action of the correspondence 2-functor: (u; W) over the source base
/// becomes (source, u, z; W + W12) over the target base.
LGObject correspondence_apply(const Correspondence& c, const LGObject& o);

/// Composition of correspondences concatenates extras and adds curvings.
Correspondence compose_correspondences(const Correspondence& c23, const Correspondence& c12);

/// The plus/minus Legendre correspondence between two bases of equal length.
Correspondence legendre_correspondence(const std::vector<std::string>& xs,
                                       const std::vector<std::string>& ys, int sign);
LGObject legendre(const LGObject& o, int sign, const std::vector<std::string>& target_base);

/// Identity correspondence (a; a.(x' - x)).
Correspondence identity_correspondence(const std::vector<std::string>& xs,
                                       const std::string& prime_suffix = "'",
                                       const std::string& a_prefix = "a_");

/// Translation: add one extra variable and its square to the curving.
LGObject translate2(const LGObject& o, const std::string& fresh);

/// Compose 1-morphisms: tensor over the ring union, then exclude the middle
/// variables where a linear Koszul row allows it. The total curving must be
/// free of every middle variable.
MatFact compose_1morphisms(const MatFact& m12, const MatFact& m23,
                           const std::vector<std::string>& middle);

/// Canonical Koszul generator of the morphism category MF(ring; dW):
/// greedy single-variable rows (v, q_v) peeled off in ring order.
MatFact hom_generator(const RingPtr& ring, const Poly& dW);
MatFact hom_generator(const LGObject& o1, const LGObject& o2);

/// Kernel data of the correspondence 2-functor action on morphism categories
/// and the image of a probe under it: tensor with the Koszul kernel, then
/// exclude the source-side variables.
struct MorphismFunctorResult {
    MatFact image;
    LGObject source_image;   // the functor image of o1 (extras primed)
    LGObject target_image;   // the functor image of o2 (extras double-primed)
};

MorphismFunctorResult morphism_image(const MatFact& probe, const Correspondence& corr,
                                     const LGObject& o1, const LGObject& o2,
                                     const std::string& prime1, const std::string& prime2);

} // namespace mfcat
