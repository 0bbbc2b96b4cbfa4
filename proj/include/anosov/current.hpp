#ifndef ANOSOV_CURRENT_HPP
#define ANOSOV_CURRENT_HPP

#include <string>
#include <vector>

#include "anosov/sections.hpp"

namespace anosov {

struct RegionColoring {
    std::vector<uint8_t> lu; // per unstable leaf
    std::vector<uint8_t> rd;
    bool in_lu(int a) const { return lu[a] != 0; }
    bool in_rd(int a) const { return rd[a] != 0; }
};

RegionColoring lu_rd_regions(const LeafSpace& ls, const Section& sec);

struct CurrentCheck {
    bool with_current = true;
    int offending_interval = -1;
};

CurrentCheck is_with_current(const LeafSpace& ls, const RegionColoring& rc, const ZigzagPath& z);
CurrentCheck is_against_current(const LeafSpace& ls, const RegionColoring& rc, const ZigzagPath& z);

enum class BaseKind : uint8_t { Leaves, End, WindowTruncated, AmbiguousAgainstCurrent };

struct Base {
    BaseKind kind = BaseKind::Leaves;
    std::vector<int> leaves;   // when kind == Leaves
    std::string end_id;        // when kind == End
    std::string detail;
};

Base base_of(const LeafSpace& ls, const Section& sec, const RegionColoring& rc);
Base base_of(const LeafSpace& ls, const Section& sec);

// Definitional route: points whose every zigzag (and declared-end ray) is
// oriented with the s-current. Used as the cross-check against base_of.
struct DefinitionalBase {
    std::vector<int> leaves;
    std::vector<std::string> end_ids;
};
DefinitionalBase definitional_base(const LeafSpace& ls, const Section& sec,
                                   const RegionColoring& rc);

enum class SectionType : uint8_t { S, E, TypeIViolation, WindowTruncated };

struct Classification {
    SectionType type = SectionType::S;
    Base base;
};

Classification classify(const LeafSpace& ls, const Section& sec);

} // namespace anosov

#endif
