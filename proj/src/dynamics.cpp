#include "anosov/dynamics.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace anosov {

std::optional<PartialSection> act_on_section(const LeafSpace& ls, const Automorphism& g,
                                             const Section& sec) {
    PartialSection out;
    out.value.assign(ls.n, -2);
    for (const auto& [a, b] : g.unstable_map) {
        int v = sec.value[a];
        if (v < 0) {
            out.value[b] = -1;
        } else {
            auto it = g.stable_map.find(v);
            if (it == g.stable_map.end()) return std::nullopt;
            out.value[b] = it->second;
        }
    }
    return out;
}

bool fixed_by(const LeafSpace& ls, const Automorphism& g, const Section& sec) {
    auto img = act_on_section(ls, g, sec);
    if (!img) return false;
    for (int l = 0; l < ls.n; ++l)
        if (img->defined(l) && img->value[l] != sec.value[l]) return false;
    return true;
}

Automorphism power(const Automorphism& g, int k) {
    Automorphism out;
    out.name = g.name + "^" + std::to_string(k);
    // identity seeded from g's domain, then composed k times
    for (const auto& [a, _] : g.unstable_map) out.unstable_map[a] = a;
    for (const auto& [a, _] : g.stable_map) out.stable_map[a] = a;
    for (const auto& [a, _] : g.end_map) out.end_map[a] = a;
    for (int i = 0; i < k; ++i) {
        std::map<int, int> um, sm;
        std::map<std::string, std::string> em;
        for (const auto& [a, b] : out.unstable_map) {
            auto it = g.unstable_map.find(b);
            if (it != g.unstable_map.end()) um[a] = it->second;
        }
        for (const auto& [a, b] : out.stable_map) {
            auto it = g.stable_map.find(b);
            if (it != g.stable_map.end()) sm[a] = it->second;
        }
        for (const auto& [a, b] : out.end_map) {
            auto it = g.end_map.find(b);
            if (it != g.end_map.end()) em[a] = it->second;
        }
        out.unstable_map = um;
        out.stable_map = sm;
        out.end_map = em;
    }
    return out;
}

PeriodicSectionsResult periodic_sections(const LeafSpace& ls, const MasterSets& ms,
                                         const Automorphism& g, int power_k,
                                         const std::vector<int>& sample_leaves) {
    const OrbitModel& m = *ls.model;
    PeriodicSectionsResult res;
    Automorphism gk = power(g, power_k);

    struct Tagged {
        Section sec;
        std::string label;
        bool fixed;
    };
    std::vector<Tagged> all;
    auto add = [&](Section s, const std::string& label, bool fixed) {
        for (const auto& t : all)
            if (t.sec == s) return;
        all.push_back({std::move(s), label, fixed});
    };

    // end limits at g-invariant ends are the candidate fixed points
    for (const auto& e : m.ends) {
        auto it = gk.end_map.find(e.id);
        bool invariant = it != gk.end_map.end() && it->second == e.id;
        auto lim = limit_section_at_end(ls, e);
        if (!lim.ok) continue;
        bool fixed = invariant && fixed_by(ls, gk, lim.section);
        add(lim.section, "limit(" + e.id + ")", fixed);
    }
    // sections anchored at g^k-fixed leaves
    for (const auto& [a, b] : gk.unstable_map) {
        if (a != b) continue;
        Section s = special_section(ls, nonmarker_at(a));
        add(s, "special(" + m.unstable_names[a] + ")", fixed_by(ls, gk, s));
    }
    // sampled sections
    for (int l : sample_leaves) {
        Section s = special_section(ls, nonmarker_at(l));
        add(s, "special(" + m.unstable_names[l] + ")", fixed_by(ls, gk, s));
    }

    std::vector<Section> secs;
    for (const auto& t : all) secs.push_back(t.sec);
    CircleOrder co;
    try {
        co = circular_order(ls, secs);
    } catch (const CircleOrderError& e) {
        res.error = e.what();
        return res;
    }

    int N = (int)co.sections.size();
    std::vector<const Tagged*> in_order(N, nullptr);
    for (size_t i = 0; i < all.size(); ++i) in_order[co.input_index[i]] = &all[i];

    // image of a sampled basepoint section under g^k, when constructible
    auto image_of = [&](const Tagged& t) -> std::optional<Section> {
        if (t.label.rfind("special(", 0) == 0) {
            std::string name = t.label.substr(8, t.label.size() - 9);
            int a = m.unstable_index(name);
            auto it = gk.unstable_map.find(a);
            if (it == gk.unstable_map.end()) return std::nullopt;
            return special_section(ls, nonmarker_at(it->second));
        }
        return std::nullopt; // fixed limits map to themselves
    };

    for (int i = 0; i < N; ++i) {
        const Tagged& t = *in_order[i];
        if (!t.fixed) continue;
        FixedPointRecord rec;
        rec.section = t.sec;
        rec.label = t.label;
        auto cv = ct(ls, ms, t.sec);
        rec.ct_value = cv.ok ? cv.value : SymbolicPoint{-1};

        // neighbour displacement decides the classification; neighbours must
        // have an image under g^k to be usable
        auto mappable = [&](const Tagged* c) {
            if (c->label.rfind("special(", 0) != 0) return false;
            std::string name = c->label.substr(8, c->label.size() - 9);
            return gk.unstable_map.count(m.unstable_index(name)) > 0;
        };
        auto neighbour = [&](int dir) -> const Tagged* {
            for (int step = 1; step < N; ++step) {
                const Tagged* c = in_order[((i + dir * step) % N + N) % N];
                if (!c->fixed && !(c->sec == t.sec) && mappable(c)) return c;
            }
            return nullptr;
        };
        const Tagged* left = neighbour(-1);
        const Tagged* right = neighbour(+1);
        if (!left || !right) {
            res.error = "sample_too_sparse";
            return res;
        }
        auto moved_toward = [&](const Tagged* nb) -> std::optional<bool> {
            auto img = image_of(*nb);
            if (!img) return std::nullopt;
            if (*img == nb->sec) return std::nullopt;
            // toward iff the image lies strictly between the neighbour and t
            int o = section_triple_orient(ls, nb->sec, *img, t.sec);
            return o > 0;
        };
        auto lt = moved_toward(left);
        auto rt = moved_toward(right);
        if (lt && rt && *lt && *rt)
            rec.cls = FixedPointClass::Attractor;
        else if (lt && rt && !*lt && !*rt)
            rec.cls = FixedPointClass::Repellor;
        else
            rec.cls = FixedPointClass::Undetermined;
        res.records.push_back(rec);
    }
    res.ok = true;
    return res;
}

} // namespace anosov
