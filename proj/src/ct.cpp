#include "anosov/ct.hpp"

#include <set>

namespace anosov {

CTResult ct(const LeafSpace& ls, const MasterSets& ms, const Section& sec) {
    CTResult r;
    Classification c = classify(ls, sec);
    switch (c.type) {
        case SectionType::S: {
            std::set<int> vals;
            for (int l : c.base.leaves) vals.insert(i_map(ms, sec.at(l)).id);
            if (vals.size() != 1) {
                r.error = "not_well_defined";
                return r;
            }
            r.ok = true;
            r.value = {*vals.begin()};
            return r;
        }
        case SectionType::E: {
            const EndDecl* e = ls.model->find_end(c.base.end_id);
            auto fe = f_end(ls, ms, *e);
            if (!fe.ok) {
                r.error = fe.error;
                return r;
            }
            r.ok = true;
            r.value = fe.point;
            return r;
        }
        case SectionType::WindowTruncated:
            r.error = "window_truncated";
            return r;
        default:
            r.error = "type_i_violation";
            return r;
    }
}

WellDefinedReport check_well_defined(const LeafSpace& ls, const MasterSets& ms,
                                     const Section& sec) {
    WellDefinedReport rep;
    Classification c = classify(ls, sec);
    if (c.type != SectionType::S || c.base.leaves.size() < 2) {
        rep.vacuous = true;
        return rep;
    }
    int first = c.base.leaves[0];
    int v0 = i_map(ms, sec.at(first)).id;
    for (int l : c.base.leaves)
        if (i_map(ms, sec.at(l)).id != v0) {
            rep.ok = false;
            rep.witness_a = first;
            rep.witness_b = l;
            return rep;
        }
    return rep;
}

CoreCompatReport check_core_compat(const LeafSpace& ls, const MasterSets& ms,
                                   const std::vector<Section>& secs, int leaf) {
    CoreCompatReport rep;
    for (size_t i = 0; i < secs.size(); ++i) {
        bool alone = true;
        for (size_t j = 0; j < secs.size(); ++j)
            if (j != i && secs[j].value[leaf] == secs[i].value[leaf]) alone = false;
        if (!alone) continue; // a shared fiber value is a gap, not core
        // a core point is its own leftmost section through the fiber value
        if (!(secs[i] == special_section(ls, secs[i].at(leaf)))) continue;
        auto r = ct(ls, ms, secs[i]);
        if (!r.ok) continue;
        ++rep.checked;
        if (r.value != i_map(ms, secs[i].at(leaf))) {
            rep.ok = false;
            rep.detail = "ct disagrees with the leaf extension at " +
                         ls.model->unstable_names[leaf];
            return rep;
        }
    }
    return rep;
}

ContinuityReport continuity_sample(const LeafSpace& ls, const MasterSets& ms, const EndDecl& e) {
    ContinuityReport rep;
    auto lim = limit_section_at_end(ls, e);
    if (!lim.ok) {
        rep.error = "no_stabilization at " + ls.model->unstable_names[lim.failing_leaf];
        return rep;
    }
    auto lv = ct(ls, ms, lim.section);
    if (!lv.ok) {
        rep.error = "limit section ct failed: " + lv.error;
        return rep;
    }
    rep.limit_value = lv.value;
    rep.period = lim.period;
    rep.witness_march = lim.march;

    // ct values of the marching family, strided at the stabilization period
    const auto& march = lim.march;
    int m = (int)march.size();
    std::vector<int> idx;
    for (int i = m - 1; i >= 0; i -= lim.period) idx.push_back(i);
    std::reverse(idx.begin(), idx.end());
    int last = -2, prev = -2;
    for (size_t k = 0; k < idx.size(); ++k) {
        auto s = special_section(ls, nonmarker_at(march[idx[k]]));
        auto v = ct(ls, ms, s);
        prev = last;
        last = v.ok ? v.value.id : -1;
    }
    if (idx.size() >= 2 && last == prev && last >= 0) {
        rep.stabilized = true;
        rep.family_value = {last};
        rep.ok = rep.family_value == rep.limit_value;
        if (!rep.ok) rep.error = "family value differs from ct(limit section)";
    } else {
        rep.error = "family ct values do not stabilize";
    }
    return rep;
}

} // namespace anosov
