#ifndef ANOSOV_CT_HPP
#define ANOSOV_CT_HPP

#include <string>
#include <vector>

#include "anosov/master.hpp"

namespace anosov {

struct CTResult {
    bool ok = false;
    SymbolicPoint value;
    std::string error; // "window_truncated", "type_i_violation", ...
};

CTResult ct(const LeafSpace& ls, const MasterSets& ms, const Section& sec);

struct WellDefinedReport {
    bool ok = true;
    bool vacuous = false;           // base smaller than two leaves
    int witness_a = -1, witness_b = -1;
};

WellDefinedReport check_well_defined(const LeafSpace& ls, const MasterSets& ms,
                                     const Section& sec);

struct CoreCompatReport {
    bool ok = true;
    int checked = 0;
    std::string detail;
};

// For sections alone at their fiber value at leaf: ct == i_map at that leaf.
CoreCompatReport check_core_compat(const LeafSpace& ls, const MasterSets& ms,
                                   const std::vector<Section>& secs, int leaf);

struct ContinuityReport {
    bool ok = false;
    bool stabilized = false;
    int period = 0;
    SymbolicPoint family_value;
    SymbolicPoint limit_value;
    std::vector<int> witness_march;
    std::string error;
};

ContinuityReport continuity_sample(const LeafSpace& ls, const MasterSets& ms,
                                   const EndDecl& e);

} // namespace anosov

#endif
