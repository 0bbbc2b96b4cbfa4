#ifndef ANOSOV_LEAFSPACE_HPP
#define ANOSOV_LEAFSPACE_HPP

#include <string>
#include <utility>
#include <vector>

#include "anosov/model.hpp"

namespace anosov {

enum class Order : uint8_t { Below, Above, Equal, Incomparable };

struct ZigzagInterval {
    int lo = -1;            // index of the interval's first breakpoint (even)
    bool up = true;         // orientation in the leaf space
    bool degenerate = false;
};

// Breakpoints nu_0..nu_n; for odd j, (nu_j, nu_{j+1}) is a cataclysm jump with
// nu_j launching and nu_{j+1} landing. Even pairs are the oriented intervals.
struct ZigzagPath {
    std::vector<int> breakpoints;          // unstable leaf indices
    std::vector<ZigzagInterval> intervals; // intervals[k] spans breakpoints 2k, 2k+1

    int source() const { return breakpoints.empty() ? -1 : breakpoints.front(); }
    int target() const { return breakpoints.empty() ? -1 : breakpoints.back(); }
    bool degenerate_point() const { return breakpoints.size() <= 1; }
    int n_jumps() const { return intervals.empty() ? 0 : (int)intervals.size() - 1; }
    std::vector<int> launching() const;
    std::vector<int> landing() const;
    ZigzagPath reversed() const;
    bool contains(int leaf) const;
};

struct LeafSpaceError : std::runtime_error {
    explicit LeafSpaceError(const std::string& what) : std::runtime_error(what) {}
};

struct LeafSpace {
    const OrbitModel* model = nullptr;
    int n = 0;

    std::vector<std::vector<uint8_t>> leq; // leq[a][b]: a <= b
    std::vector<std::vector<int>> covers_up;
    std::vector<std::vector<int>> covers_down;

    struct Cataclysm {
        std::vector<int> leaves;
        BranchSide side;
    };
    std::vector<Cataclysm> cataclysms;        // from declared unstable chains
    std::vector<std::vector<int>> cataclysms_of; // per leaf

    // Hausdorffification classes: cataclysm-overlap components.
    std::vector<int> h_class;
    std::vector<std::vector<int>> h_members;

    // Quotient tree on h-classes; pairs are (lower member, upper member).
    struct QEdge {
        int lo_class, hi_class;
        std::vector<std::pair<int, int>> pairs;
    };
    std::vector<QEdge> qedges;
    std::vector<std::vector<int>> qadj; // class -> incident edge ids

    std::vector<std::vector<int>> charts; // maximal linear chains, ascending

    // fiber structure cache
    std::vector<std::vector<int>> fiber_pos; // [u][s] crossing position or -1
    std::vector<std::vector<int>> ul_roads;  // per u: stables fit-attached at (s-, u-)
    std::vector<std::vector<int>> lr_roads;  // per u: stables fit-attached at (s+, u+)

    int pos_of(int u, int s) const { return fiber_pos[u][s]; }

    Order compare(int a, int b) const;
    bool below_eq(int a, int b) const { return leq[a][b] != 0; }
    bool strictly_below(int a, int b) const { return a != b && leq[a][b] != 0; }

    std::vector<int> up_set(int a) const;
    std::vector<int> down_set(int a) const;

    // Frontier exits of a's saturation in direction `up`: the extreme leaves
    // together with the declared end sitting there, if any.
    struct Exit {
        int frontier;
        const EndDecl* end; // null when the window edge carries no declared end
    };
    std::vector<Exit> exits(int a, bool up) const;

    bool nonseparated(int a, int b) const;
    // Leaves sharing a cataclysm with a.
    std::vector<int> cataclysm_partners(int a) const;
};

LeafSpace derive_leaf_space(const OrbitModel& m);

Order comparable(const LeafSpace& ls, int a, int b);

ZigzagPath zigzag(const LeafSpace& ls, int a, int b);

// Path from a to the end's attachment leaf (the window truncation of the ray).
ZigzagPath zigzag_ray(const LeafSpace& ls, int a, const EndDecl& e);

struct HausdorffQuotient {
    std::vector<std::vector<int>> classes;
    int n_classes() const { return (int)classes.size(); }
};

HausdorffQuotient hausdorffify(const LeafSpace& ls);

} // namespace anosov

#endif
