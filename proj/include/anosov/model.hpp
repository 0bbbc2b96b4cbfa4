#ifndef ANOSOV_MODEL_HPP
#define ANOSOV_MODEL_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "anosov/ids.hpp"

namespace anosov {

struct PerfectFit {
    LeafEnd stable_end;   // leaf.family == Stable
    LeafEnd unstable_end; // leaf.family == Unstable

    bool operator==(const PerfectFit& o) const {
        return stable_end == o.stable_end && unstable_end == o.unstable_end;
    }
    bool operator<(const PerfectFit& o) const {
        if (!(stable_end == o.stable_end)) return stable_end < o.stable_end;
        return unstable_end < o.unstable_end;
    }
};

enum class BranchSide : uint8_t { FromAbove, FromBelow };

inline const char* to_string(BranchSide s) {
    return s == BranchSide::FromAbove ? "from_above" : "from_below";
}

// Connector between adjacent chain leaves: either both ends are the same
// ideal point (shared_end) or a stable leaf makes a perfect fit with each.
struct ChainLink {
    bool via_stable = false;
    int stable = -1;          // set when via_stable
    LeafEnd left_end;         // end of chain.leaves[i]
    LeafEnd right_end;        // end of chain.leaves[i+1]
};

struct BranchingChain {
    Family family = Family::Unstable;
    std::vector<int> leaves;  // indices in the chain's family, in chain order
    BranchSide side = BranchSide::FromAbove;
    std::vector<ChainLink> links; // size = leaves.size() - 1
};

struct EndDecl {
    std::string id;
    int attachment = -1;       // unstable leaf index at the window frontier
    Sign side = Sign::Plus;    // Plus: end lies above the leaf, Minus: below
    std::optional<LeafEnd> boundary_hint;
};

struct Automorphism {
    std::string name;
    // Partial injective maps; windows cannot host total shifts.
    std::map<int, int> unstable_map;
    std::map<int, int> stable_map;
    std::map<std::string, std::string> end_map;
};

struct OrbitModel {
    std::vector<std::string> unstable_names;
    std::vector<std::string> stable_names;

    // Per stable leaf: crossed unstable leaves in coorientation-positive order.
    std::vector<std::vector<int>> crossings_along_stable;
    // Per unstable leaf: crossing stable leaves in order from the minus end.
    std::vector<std::vector<int>> crossings_along_unstable;

    std::vector<PerfectFit> perfect_fits;
    std::vector<BranchingChain> chains;
    std::vector<EndDecl> ends;
    std::vector<Automorphism> automorphisms;

    int n_unstable() const { return (int)unstable_names.size(); }
    int n_stable() const { return (int)stable_names.size(); }

    int unstable_index(const std::string& name) const;
    int stable_index(const std::string& name) const;
    const std::string& name_of(LeafId id) const;

    const Automorphism* find_automorphism(const std::string& name) const;
    const EndDecl* find_end(const std::string& id) const;

    // nullopt when x is outside g's domain.
    std::optional<LeafId> apply(const Automorphism& g, LeafId x) const;
};

struct Violation {
    std::string rule;    // "a".."d" or a structural rule id
    std::string detail;  // witness description
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

OrbitModel parse_model(const std::string& text);
OrbitModel load_model_file(const std::string& path);
std::string serialize(const OrbitModel& m);

// Checks invariants (a)-(d) plus the structural rules other modules rely on
// (fit/chain well-formedness and leaf-space consistency). Empty report means
// every other module accepts the model.
ValidationReport validate_model(const OrbitModel& m);

LeafId apply_automorphism(const OrbitModel& m, const std::string& g, LeafId x);

std::vector<OrbitModel> generate_corpus(uint64_t seed, int count, int max_leaves);

} // namespace anosov

#endif
