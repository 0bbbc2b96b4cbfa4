#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "anosov/leafspace.hpp"
#include "anosov/model.hpp"

namespace anosov {

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    for (const auto& v : violations) os << "(" << v.rule << ") " << v.detail << "\n";
    return os.str();
}

namespace {

void check_structure(const OrbitModel& m, ValidationReport& rep) {
    auto add = [&](const std::string& rule, const std::string& detail) {
        rep.violations.push_back({rule, detail});
    };

    // (a) the two crossing tables list the same pairs
    std::set<std::pair<int, int>> from_stable, from_unstable;
    for (int s = 0; s < m.n_stable(); ++s)
        for (int u : m.crossings_along_stable[s]) {
            if (u < 0 || u >= m.n_unstable()) {
                add("a", "crossing references unknown unstable index");
                continue;
            }
            from_stable.insert({s, u});
        }
    for (int u = 0; u < m.n_unstable(); ++u)
        for (int s : m.crossings_along_unstable[u]) {
            if (s < 0 || s >= m.n_stable()) {
                add("a", "crossing references unknown stable index");
                continue;
            }
            from_unstable.insert({s, u});
        }
    for (const auto& [s, u] : from_stable)
        if (!from_unstable.count({s, u}))
            add("a", "crossing " + m.stable_names[s] + "/" + m.unstable_names[u] +
                         " listed along stable only");
    for (const auto& [s, u] : from_unstable)
        if (!from_stable.count({s, u}))
            add("a", "crossing " + m.stable_names[s] + "/" + m.unstable_names[u] +
                         " listed along unstable only");

    // (b) same-family disjointness: tables may only pair stable with unstable,
    // and lists carry no repeats (repeats would be a self-crossing).
    for (int s = 0; s < m.n_stable(); ++s) {
        std::set<int> seen(m.crossings_along_stable[s].begin(),
                           m.crossings_along_stable[s].end());
        if (seen.size() != m.crossings_along_stable[s].size())
            add("b", "repeated crossing along " + m.stable_names[s]);
    }
    for (int u = 0; u < m.n_unstable(); ++u) {
        std::set<int> seen(m.crossings_along_unstable[u].begin(),
                           m.crossings_along_unstable[u].end());
        if (seen.size() != m.crossings_along_unstable[u].size())
            add("b", "repeated crossing along " + m.unstable_names[u]);
    }

    // (c) planarity: relative orders agree between any two parallel leaves
    auto pos_of = [](const std::vector<int>& v, int x) {
        auto it = std::find(v.begin(), v.end(), x);
        return it == v.end() ? -1 : (int)(it - v.begin());
    };
    for (int s1 = 0; s1 < m.n_stable(); ++s1)
        for (int s2 = s1 + 1; s2 < m.n_stable(); ++s2) {
            const auto& a = m.crossings_along_stable[s1];
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t k = i + 1; k < a.size(); ++k) {
                    int p1 = pos_of(m.crossings_along_stable[s2], a[i]);
                    int p2 = pos_of(m.crossings_along_stable[s2], a[k]);
                    if (p1 >= 0 && p2 >= 0 && p1 > p2)
                        add("c", "order of " + m.unstable_names[a[i]] + "," +
                                     m.unstable_names[a[k]] + " along " + m.stable_names[s1] +
                                     " vs " + m.stable_names[s2] + " disagrees");
                }
        }
    for (int u1 = 0; u1 < m.n_unstable(); ++u1)
        for (int u2 = u1 + 1; u2 < m.n_unstable(); ++u2) {
            const auto& a = m.crossings_along_unstable[u1];
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t k = i + 1; k < a.size(); ++k) {
                    int p1 = pos_of(m.crossings_along_unstable[u2], a[i]);
                    int p2 = pos_of(m.crossings_along_unstable[u2], a[k]);
                    if (p1 >= 0 && p2 >= 0 && p1 > p2)
                        add("c", "order of " + m.stable_names[a[i]] + "," +
                                     m.stable_names[a[k]] + " along " + m.unstable_names[u1] +
                                     " vs " + m.unstable_names[u2] + " disagrees");
                }
        }

    // fits: well-formed families, no fit between crossing leaves, stable must
    // cross something (its quadrant would otherwise be undefined)
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> fit_seen;
    for (const auto& f : m.perfect_fits) {
        if (f.stable_end.leaf.family != Family::Stable ||
            f.unstable_end.leaf.family != Family::Unstable) {
            add("fit", "fit with wrong family");
            continue;
        }
        int s = f.stable_end.leaf.index, u = f.unstable_end.leaf.index;
        if (s < 0 || s >= m.n_stable() || u < 0 || u >= m.n_unstable()) {
            add("fit", "fit references unknown leaf");
            continue;
        }
        auto key = std::make_pair(std::make_pair(s, (int)f.stable_end.sign),
                                  std::make_pair(u, (int)f.unstable_end.sign));
        if (!fit_seen.insert(key).second)
            add("fit", "duplicate perfect fit " + m.stable_names[s] + "/" + m.unstable_names[u]);
        if (from_stable.count({s, u}))
            add("fit", "perfect fit between crossing leaves " + m.stable_names[s] + "/" +
                           m.unstable_names[u]);
        if (m.crossings_along_stable[s].empty())
            add("fit", "fit on crossing-less stable leaf " + m.stable_names[s]);
    }

    // chains: size, distinctness, links present and coherent
    std::map<std::pair<int, int>, int> membership; // (family-tagged leaf, side) -> chain idx
    for (size_t ci = 0; ci < m.chains.size(); ++ci) {
        const auto& c = m.chains[ci];
        if (c.leaves.size() < 2) {
            add("chain", "chain with fewer than 2 leaves");
            continue;
        }
        std::set<int> uniq(c.leaves.begin(), c.leaves.end());
        if (uniq.size() != c.leaves.size()) add("chain", "chain with repeated leaf");
        int n = c.family == Family::Unstable ? m.n_unstable() : m.n_stable();
        bool bad = false;
        for (int l : c.leaves)
            if (l < 0 || l >= n) {
                add("chain", "chain references unknown leaf");
                bad = true;
            }
        if (bad) continue;
        for (int l : c.leaves) {
            auto key = std::make_pair(l * 2 + (c.family == Family::Stable), (int)c.side);
            auto it = membership.find(key);
            if (it != membership.end())
                add("chain", "leaf in two same-side chains (chains must be merged)");
            membership[key] = (int)ci;
        }
        if (c.links.size() + 1 != c.leaves.size()) {
            add("chain", "chain link count mismatch");
            continue;
        }
        for (size_t i = 0; i < c.links.size(); ++i) {
            const auto& l = c.links[i];
            if (l.left_end.leaf.index != c.leaves[i] || l.right_end.leaf.index != c.leaves[i + 1])
                add("chain", "link endpoints do not name the adjacent chain leaves");
            if (c.family == Family::Unstable) {
                if (!l.via_stable) {
                    add("chain", "unstable chain link must carry a via stable leaf");
                    continue;
                }
                // the via stable makes a perfect fit with each adjacent leaf
                bool fit_l = false, fit_r = false;
                for (const auto& f : m.perfect_fits) {
                    if (f.stable_end.leaf.index == l.stable &&
                        f.unstable_end == l.left_end)
                        fit_l = true;
                    if (f.stable_end.leaf.index == l.stable &&
                        f.unstable_end == l.right_end)
                        fit_r = true;
                }
                if (!fit_l || !fit_r)
                    add("chain", "via stable " + m.stable_names[l.stable] +
                                     " missing declared fits with chain pair");
            }
        }
    }

    // ends: attachment in range, one end per (leaf, side)
    std::set<std::pair<int, int>> end_slots;
    for (const auto& e : m.ends) {
        if (e.attachment < 0 || e.attachment >= m.n_unstable()) {
            add("end", "end '" + e.id + "' attached to unknown leaf");
            continue;
        }
        if (!end_slots.insert({e.attachment, (int)e.side}).second)
            add("end", "two ends attached to the same leaf side");
    }

    // (d) automorphisms preserve family (by table shape), crossings and orders,
    // fits, chains, on their domain
    for (const auto& g : m.automorphisms) {
        std::set<int> uimg, simg;
        for (const auto& [a, b] : g.unstable_map) {
            if (a < 0 || a >= m.n_unstable() || b < 0 || b >= m.n_unstable()) {
                add("d", g.name + ": unstable map out of range");
                continue;
            }
            if (!uimg.insert(b).second) add("d", g.name + ": unstable map not injective");
        }
        for (const auto& [a, b] : g.stable_map) {
            if (a < 0 || a >= m.n_stable() || b < 0 || b >= m.n_stable()) {
                add("d", g.name + ": stable map out of range");
                continue;
            }
            if (!simg.insert(b).second) add("d", g.name + ": stable map not injective");
        }
        // crossings preserved with order
        for (const auto& [s, s2] : g.stable_map) {
            std::vector<int> mapped;
            bool total = true;
            for (int u : m.crossings_along_stable[s]) {
                auto it = g.unstable_map.find(u);
                if (it == g.unstable_map.end()) {
                    total = false;
                    break;
                }
                mapped.push_back(it->second);
            }
            if (!total) continue;
            // mapped must appear as a subsequence of the image leaf's crossings,
            // in order or fully reversed (global orientation flip)
            auto subseq = [&](const std::vector<int>& seq, const std::vector<int>& in) {
                size_t k = 0;
                for (int x : in) {
                    if (k < seq.size() && seq[k] == x) ++k;
                }
                return k == seq.size();
            };
            std::vector<int> rev(mapped.rbegin(), mapped.rend());
            if (!subseq(mapped, m.crossings_along_stable[s2]) &&
                !subseq(rev, m.crossings_along_stable[s2]))
                add("d", g.name + ": crossing order along " + m.stable_names[s] +
                             " not preserved by image " + m.stable_names[s2]);
        }
        for (const auto& [s, u] : from_stable) {
            auto si = g.stable_map.find(s);
            auto ui = g.unstable_map.find(u);
            if (si == g.stable_map.end() || ui == g.unstable_map.end()) continue;
            if (!from_stable.count({si->second, ui->second}))
                add("d", g.name + ": image of crossing " + m.stable_names[s] + "/" +
                             m.unstable_names[u] + " is not a crossing");
        }
        for (const auto& f : m.perfect_fits) {
            auto si = g.stable_map.find(f.stable_end.leaf.index);
            auto ui = g.unstable_map.find(f.unstable_end.leaf.index);
            if (si == g.stable_map.end() || ui == g.unstable_map.end()) continue;
            bool found = false;
            for (const auto& f2 : m.perfect_fits)
                if (f2.stable_end.leaf.index == si->second &&
                    f2.unstable_end.leaf.index == ui->second && f2.stable_end.sign ==
                        f.stable_end.sign && f2.unstable_end.sign == f.unstable_end.sign)
                    found = true;
            if (!found)
                add("d", g.name + ": image of perfect fit " +
                             m.stable_names[f.stable_end.leaf.index] + "/" +
                             m.unstable_names[f.unstable_end.leaf.index] + " missing");
        }
    }
}

} // namespace

ValidationReport validate_model(const OrbitModel& m) {
    ValidationReport rep;
    check_structure(m, rep);
    if (!rep.ok()) return rep;
    // leaf-space derivation errors make the model inadmissible too
    try {
        derive_leaf_space(m);
    } catch (const LeafSpaceError& e) {
        rep.violations.push_back({"leafspace", e.what()});
    }
    return rep;
}

} // namespace anosov
