#ifndef ANOSOV_MASTER_HPP
#define ANOSOV_MASTER_HPP

#include <optional>
#include <string>
#include <vector>

#include "anosov/current.hpp"

namespace anosov {

// Equality of symbolic boundary points is master-set identity; the id indexes
// a component of the shared-endpoint structure (or a standalone end gap).
struct SymbolicPoint {
    int id = -1;
    bool operator==(const SymbolicPoint& o) const { return id == o.id; }
    bool operator!=(const SymbolicPoint& o) const { return id != o.id; }
};

struct MasterSet {
    std::vector<int> unstable_leaves;
    std::vector<int> stable_leaves;
    std::vector<LeafEnd> boundary;      // ends in the component
    std::vector<std::string> gap_ids;   // declared-end gaps hinted in
    int leaf_count() const { return (int)(unstable_leaves.size() + stable_leaves.size()); }
};

struct MasterSets {
    std::vector<MasterSet> sets;               // indexed by SymbolicPoint id
    std::vector<int> class_of_unstable;        // leaf -> set id
    std::vector<int> class_of_stable;
    std::vector<std::array<int, 2>> end_class_unstable; // [minus, plus]
    std::vector<std::array<int, 2>> end_class_stable;
    std::vector<int> gap_class;                // per declared end

    SymbolicPoint of_leaf(LeafId id) const;
    SymbolicPoint of_end(const LeafEnd& e) const;
    SymbolicPoint of_gap(int end_index) const;
};

MasterSets master_sets(const LeafSpace& ls);

// Psi carries a fiber point to the orbit-space object it names: the crossing
// stable leaf, or the leaf's own boundary class for nonmarker points.
SymbolicPoint psi(const MasterSets& ms, const FiberPoint& p);
SymbolicPoint i_map(const MasterSets& ms, const FiberPoint& p);

struct FEndResult {
    bool ok = false;
    SymbolicPoint point;
    std::vector<LeafEnd> pinched_ends; // ends the window cannot separate from e
    std::string error;                 // "window_truncated" detail when !ok
};

FEndResult f_end(const LeafSpace& ls, const MasterSets& ms, const EndDecl& e);
// same computation along the ray from a chosen start leaf
FEndResult f_end_from(const LeafSpace& ls, const MasterSets& ms, const EndDecl& e,
                      int start_leaf);

struct QlDiagnostics {
    bool extremal = true;
    std::string failed_condition; // "1", "2" or "3"
    std::string witness;
};

QlDiagnostics is_ql_extremal(const LeafSpace& ls, const Section& sec, const ZigzagPath& z);

struct QlMasterRecord {
    bool ok = false;
    SymbolicPoint common;
    std::string detail;
};

QlMasterRecord ql_implies_master(const LeafSpace& ls, const MasterSets& ms,
                                 const Section& sec, const ZigzagPath& z);

} // namespace anosov

#endif
