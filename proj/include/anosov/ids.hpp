#ifndef ANOSOV_IDS_HPP
#define ANOSOV_IDS_HPP

#include <cstdint>
#include <functional>
#include <string>

namespace anosov {

enum class Family : uint8_t { Unstable, Stable };

enum class Sign : uint8_t { Minus, Plus };

inline Sign opposite(Sign s) { return s == Sign::Minus ? Sign::Plus : Sign::Minus; }

inline const char* to_string(Family f) { return f == Family::Unstable ? "unstable" : "stable"; }
inline const char* to_string(Sign s) { return s == Sign::Minus ? "minus" : "plus"; }

// Dense per-family index. String names live in the model's name tables.
struct LeafId {
    Family family = Family::Unstable;
    int index = -1;

    bool operator==(const LeafId& o) const { return family == o.family && index == o.index; }
    bool operator!=(const LeafId& o) const { return !(*this == o); }
    bool operator<(const LeafId& o) const {
        if (family != o.family) return family < o.family;
        return index < o.index;
    }
    bool valid() const { return index >= 0; }
};

inline LeafId unstable_leaf(int i) { return LeafId{Family::Unstable, i}; }
inline LeafId stable_leaf(int i) { return LeafId{Family::Stable, i}; }

struct LeafEnd {
    LeafId leaf;
    Sign sign = Sign::Minus;

    bool operator==(const LeafEnd& o) const { return leaf == o.leaf && sign == o.sign; }
    bool operator<(const LeafEnd& o) const {
        if (!(leaf == o.leaf)) return leaf < o.leaf;
        return sign < o.sign;
    }
};

} // namespace anosov

#endif
