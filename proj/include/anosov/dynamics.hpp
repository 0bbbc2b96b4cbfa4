#ifndef ANOSOV_DYNAMICS_HPP
#define ANOSOV_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "anosov/ct.hpp"

namespace anosov {

// Image of sec under g, defined on g's image leaves (-2 entries elsewhere:
// windows only host partial automorphisms). nullopt when a marker value at a
// mapped leaf falls outside g's stable domain.
struct PartialSection {
    std::vector<int> value; // stable index, -1 nonmarker, -2 unknown
    bool defined(int leaf) const { return value[leaf] != -2; }
};

std::optional<PartialSection> act_on_section(const LeafSpace& ls, const Automorphism& g,
                                             const Section& sec);

// sec is g-equivariant where visible: sec(g(l)) = g(sec(l)) for l in dom(g).
bool fixed_by(const LeafSpace& ls, const Automorphism& g, const Section& sec);

// k-fold composite of a partial automorphism.
Automorphism power(const Automorphism& g, int k);

enum class FixedPointClass : uint8_t { Attractor, Repellor, Undetermined };

inline const char* to_string(FixedPointClass c) {
    switch (c) {
        case FixedPointClass::Attractor: return "attractor";
        case FixedPointClass::Repellor: return "repellor";
        default: return "undetermined";
    }
}

struct FixedPointRecord {
    Section section;
    std::string label; // "limit(<end>)" or "special(<leaf>[:stable])"
    SymbolicPoint ct_value;
    FixedPointClass cls = FixedPointClass::Undetermined;
};

struct PeriodicSectionsResult {
    bool ok = false;
    std::vector<FixedPointRecord> records; // in cyclic order
    std::string error;                     // "sample_too_sparse", ...
};

// Sample basepoints are nonmarker points of the given leaves; fixed sections
// are found among end limits and sections anchored at g^k-fixed structures.
PeriodicSectionsResult periodic_sections(const LeafSpace& ls, const MasterSets& ms,
                                         const Automorphism& g, int power_k,
                                         const std::vector<int>& sample_leaves);

} // namespace anosov

#endif
