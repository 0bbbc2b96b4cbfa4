#include "anosov/model.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace anosov {

using nlohmann::json;
using nlohmann::ordered_json;

int OrbitModel::unstable_index(const std::string& name) const {
    for (int i = 0; i < n_unstable(); ++i)
        if (unstable_names[i] == name) return i;
    return -1;
}

int OrbitModel::stable_index(const std::string& name) const {
    for (int i = 0; i < n_stable(); ++i)
        if (stable_names[i] == name) return i;
    return -1;
}

const std::string& OrbitModel::name_of(LeafId id) const {
    return id.family == Family::Unstable ? unstable_names[id.index] : stable_names[id.index];
}

const Automorphism* OrbitModel::find_automorphism(const std::string& name) const {
    for (const auto& g : automorphisms)
        if (g.name == name) return &g;
    return nullptr;
}

const EndDecl* OrbitModel::find_end(const std::string& id) const {
    for (const auto& e : ends)
        if (e.id == id) return &e;
    return nullptr;
}

std::optional<LeafId> OrbitModel::apply(const Automorphism& g, LeafId x) const {
    const auto& table = x.family == Family::Unstable ? g.unstable_map : g.stable_map;
    auto it = table.find(x.index);
    if (it == table.end()) return std::nullopt;
    return LeafId{x.family, it->second};
}

LeafId apply_automorphism(const OrbitModel& m, const std::string& gname, LeafId x) {
    const Automorphism* g = m.find_automorphism(gname);
    if (!g) throw std::runtime_error("unknown automorphism: " + gname);
    if (x.index < 0 ||
        (x.family == Family::Unstable ? x.index >= m.n_unstable() : x.index >= m.n_stable()))
        throw std::runtime_error("unknown leaf");
    auto y = m.apply(*g, x);
    if (!y) throw std::runtime_error("leaf outside domain of " + gname + ": " + m.name_of(x));
    return *y;
}

namespace {

Sign parse_sign(const json& j, const std::string& where) {
    std::string s = j.get<std::string>();
    if (s == "minus" || s == "-") return Sign::Minus;
    if (s == "plus" || s == "+") return Sign::Plus;
    throw ParseError("bad sign '" + s + "' in " + where);
}

LeafEnd parse_end_ref(const OrbitModel& m, const json& j, Family fam, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("end reference must be [leaf, sign] in " + where);
    std::string name = j[0].get<std::string>();
    int idx = fam == Family::Unstable ? m.unstable_index(name) : m.stable_index(name);
    if (idx < 0) throw ParseError("unknown " + std::string(to_string(fam)) + " leaf '" + name +
                                  "' in " + where);
    return LeafEnd{LeafId{fam, idx}, parse_sign(j[1], where)};
}

} // namespace

OrbitModel parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
    OrbitModel m;

    auto names = [&](const char* key, std::vector<std::string>& out) {
        if (!j.contains(key) || !j[key].is_array())
            throw ParseError(std::string("missing array '") + key + "'");
        std::set<std::string> seen;
        for (const auto& v : j[key]) {
            std::string s = v.get<std::string>();
            if (!seen.insert(s).second)
                throw ParseError("duplicate identifier '" + s + "' in " + key);
            out.push_back(s);
        }
    };
    names("unstable", m.unstable_names);
    names("stable", m.stable_names);

    m.crossings_along_stable.assign(m.n_stable(), {});
    m.crossings_along_unstable.assign(m.n_unstable(), {});

    if (j.contains("crossings_along_stable")) {
        for (auto it = j["crossings_along_stable"].begin(); it != j["crossings_along_stable"].end();
             ++it) {
            int s = m.stable_index(it.key());
            if (s < 0) throw ParseError("unknown stable leaf '" + it.key() + "' in crossings");
            std::set<int> seen;
            for (const auto& v : it.value()) {
                int u = m.unstable_index(v.get<std::string>());
                if (u < 0)
                    throw ParseError("unknown unstable leaf '" + v.get<std::string>() +
                                     "' along " + it.key());
                if (!seen.insert(u).second)
                    throw ParseError("duplicate crossing " + it.key() + "/" + v.get<std::string>());
                m.crossings_along_stable[s].push_back(u);
            }
        }
    }
    if (j.contains("crossings_along_unstable")) {
        for (auto it = j["crossings_along_unstable"].begin();
             it != j["crossings_along_unstable"].end(); ++it) {
            int u = m.unstable_index(it.key());
            if (u < 0) throw ParseError("unknown unstable leaf '" + it.key() + "' in crossings");
            std::set<int> seen;
            for (const auto& v : it.value()) {
                int s = m.stable_index(v.get<std::string>());
                if (s < 0)
                    throw ParseError("unknown stable leaf '" + v.get<std::string>() + "' along " +
                                     it.key());
                if (!seen.insert(s).second)
                    throw ParseError("duplicate crossing " + v.get<std::string>() + "/" + it.key());
                m.crossings_along_unstable[u].push_back(s);
            }
        }
    }

    if (j.contains("perfect_fits")) {
        for (const auto& f : j["perfect_fits"]) {
            PerfectFit pf;
            pf.stable_end = parse_end_ref(m, f.at("stable"), Family::Stable, "perfect_fits");
            pf.unstable_end = parse_end_ref(m, f.at("unstable"), Family::Unstable, "perfect_fits");
            m.perfect_fits.push_back(pf);
        }
    }

    if (j.contains("chains")) {
        for (const auto& c : j["chains"]) {
            BranchingChain ch;
            std::string fam = c.at("family").get<std::string>();
            ch.family = fam == "stable" ? Family::Stable : Family::Unstable;
            std::string side = c.at("side").get<std::string>();
            if (side == "from_above")
                ch.side = BranchSide::FromAbove;
            else if (side == "from_below")
                ch.side = BranchSide::FromBelow;
            else
                throw ParseError("bad chain side '" + side + "'");
            for (const auto& v : c.at("leaves")) {
                std::string name = v.get<std::string>();
                int idx = ch.family == Family::Unstable ? m.unstable_index(name)
                                                        : m.stable_index(name);
                if (idx < 0) throw ParseError("unknown chain leaf '" + name + "'");
                ch.leaves.push_back(idx);
            }
            if (c.contains("links")) {
                for (const auto& l : c.at("links")) {
                    ChainLink link;
                    std::string kind = l.at("kind").get<std::string>();
                    if (kind == "via_stable") {
                        link.via_stable = true;
                        int s = m.stable_index(l.at("stable").get<std::string>());
                        if (s < 0) throw ParseError("unknown link stable leaf");
                        link.stable = s;
                    } else if (kind != "shared_end") {
                        throw ParseError("bad link kind '" + kind + "'");
                    }
                    link.left_end = parse_end_ref(m, l.at("left"), ch.family, "chain link");
                    link.right_end = parse_end_ref(m, l.at("right"), ch.family, "chain link");
                    ch.links.push_back(link);
                }
            }
            m.chains.push_back(ch);
        }
    }

    if (j.contains("ends")) {
        for (const auto& e : j["ends"]) {
            EndDecl d;
            d.id = e.at("id").get<std::string>();
            if (m.find_end(d.id)) throw ParseError("duplicate end id '" + d.id + "'");
            int u = m.unstable_index(e.at("leaf").get<std::string>());
            if (u < 0) throw ParseError("unknown end attachment leaf");
            d.attachment = u;
            d.side = parse_sign(e.at("side"), "ends");
            if (e.contains("boundary_hint"))
                d.boundary_hint =
                    parse_end_ref(m, e.at("boundary_hint"), Family::Unstable, "boundary_hint");
            m.ends.push_back(d);
        }
    }

    if (j.contains("automorphisms")) {
        for (auto it = j["automorphisms"].begin(); it != j["automorphisms"].end(); ++it) {
            Automorphism g;
            g.name = it.key();
            if (m.find_automorphism(g.name)) throw ParseError("duplicate automorphism");
            const auto& spec = it.value();
            if (spec.contains("unstable")) {
                for (auto e = spec["unstable"].begin(); e != spec["unstable"].end(); ++e) {
                    int a = m.unstable_index(e.key());
                    int b = m.unstable_index(e.value().get<std::string>());
                    if (a < 0 || b < 0) throw ParseError("unknown leaf in automorphism " + g.name);
                    g.unstable_map[a] = b;
                }
            }
            if (spec.contains("stable")) {
                for (auto e = spec["stable"].begin(); e != spec["stable"].end(); ++e) {
                    int a = m.stable_index(e.key());
                    int b = m.stable_index(e.value().get<std::string>());
                    if (a < 0 || b < 0) throw ParseError("unknown leaf in automorphism " + g.name);
                    g.stable_map[a] = b;
                }
            }
            if (spec.contains("ends")) {
                for (auto e = spec["ends"].begin(); e != spec["ends"].end(); ++e)
                    g.end_map[e.key()] = e.value().get<std::string>();
            }
            m.automorphisms.push_back(g);
        }
    }
    return m;
}

OrbitModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize(const OrbitModel& m) {
    ordered_json j;
    auto sorted = [](std::vector<std::string> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    j["unstable"] = sorted(m.unstable_names);
    j["stable"] = sorted(m.stable_names);

    ordered_json cs = ordered_json::object();
    {
        std::vector<int> order(m.n_stable());
        for (int i = 0; i < m.n_stable(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return m.stable_names[a] < m.stable_names[b]; });
        for (int s : order) {
            if (m.crossings_along_stable[s].empty()) continue;
            ordered_json arr = ordered_json::array();
            for (int u : m.crossings_along_stable[s]) arr.push_back(m.unstable_names[u]);
            cs[m.stable_names[s]] = arr;
        }
    }
    j["crossings_along_stable"] = cs;

    ordered_json cu = ordered_json::object();
    {
        std::vector<int> order(m.n_unstable());
        for (int i = 0; i < m.n_unstable(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return m.unstable_names[a] < m.unstable_names[b]; });
        for (int u : order) {
            if (m.crossings_along_unstable[u].empty()) continue;
            ordered_json arr = ordered_json::array();
            for (int s : m.crossings_along_unstable[u]) arr.push_back(m.stable_names[s]);
            cu[m.unstable_names[u]] = arr;
        }
    }
    j["crossings_along_unstable"] = cu;

    {
        auto fits = m.perfect_fits;
        std::sort(fits.begin(), fits.end(), [&](const PerfectFit& a, const PerfectFit& b) {
            auto ka = std::make_tuple(m.stable_names[a.stable_end.leaf.index], a.stable_end.sign,
                                      m.unstable_names[a.unstable_end.leaf.index],
                                      a.unstable_end.sign);
            auto kb = std::make_tuple(m.stable_names[b.stable_end.leaf.index], b.stable_end.sign,
                                      m.unstable_names[b.unstable_end.leaf.index],
                                      b.unstable_end.sign);
            return ka < kb;
        });
        ordered_json arr = ordered_json::array();
        for (const auto& f : fits) {
            ordered_json o;
            o["stable"] = {m.stable_names[f.stable_end.leaf.index], to_string(f.stable_end.sign)};
            o["unstable"] = {m.unstable_names[f.unstable_end.leaf.index],
                             to_string(f.unstable_end.sign)};
            arr.push_back(o);
        }
        j["perfect_fits"] = arr;
    }

    {
        ordered_json arr = ordered_json::array();
        auto chains = m.chains;
        auto chain_key = [&](const BranchingChain& c) {
            std::string k = c.family == Family::Unstable ? "u" : "s";
            for (int l : c.leaves)
                k += "|" + (c.family == Family::Unstable ? m.unstable_names[l] : m.stable_names[l]);
            return k;
        };
        std::sort(chains.begin(), chains.end(),
                  [&](const BranchingChain& a, const BranchingChain& b) {
                      return chain_key(a) < chain_key(b);
                  });
        for (const auto& c : chains) {
            ordered_json o;
            o["family"] = to_string(c.family);
            o["side"] = to_string(c.side);
            ordered_json lv = ordered_json::array();
            for (int l : c.leaves)
                lv.push_back(c.family == Family::Unstable ? m.unstable_names[l]
                                                          : m.stable_names[l]);
            o["leaves"] = lv;
            ordered_json links = ordered_json::array();
            for (const auto& l : c.links) {
                ordered_json lo;
                lo["kind"] = l.via_stable ? "via_stable" : "shared_end";
                if (l.via_stable) lo["stable"] = m.stable_names[l.stable];
                lo["left"] = {m.name_of(l.left_end.leaf), to_string(l.left_end.sign)};
                lo["right"] = {m.name_of(l.right_end.leaf), to_string(l.right_end.sign)};
                links.push_back(lo);
            }
            o["links"] = links;
            arr.push_back(o);
        }
        j["chains"] = arr;
    }

    {
        ordered_json arr = ordered_json::array();
        auto ends = m.ends;
        std::sort(ends.begin(), ends.end(),
                  [](const EndDecl& a, const EndDecl& b) { return a.id < b.id; });
        for (const auto& e : ends) {
            ordered_json o;
            o["id"] = e.id;
            o["leaf"] = m.unstable_names[e.attachment];
            o["side"] = to_string(e.side);
            if (e.boundary_hint)
                o["boundary_hint"] = {m.name_of(e.boundary_hint->leaf),
                                      to_string(e.boundary_hint->sign)};
            arr.push_back(o);
        }
        j["ends"] = arr;
    }

    {
        ordered_json autos = ordered_json::object();
        auto gs = m.automorphisms;
        std::sort(gs.begin(), gs.end(),
                  [](const Automorphism& a, const Automorphism& b) { return a.name < b.name; });
        for (const auto& g : gs) {
            ordered_json o;
            ordered_json um = ordered_json::object();
            std::vector<std::pair<std::string, std::string>> rows;
            for (const auto& [a, b] : g.unstable_map)
                rows.push_back({m.unstable_names[a], m.unstable_names[b]});
            std::sort(rows.begin(), rows.end());
            for (auto& [a, b] : rows) um[a] = b;
            o["unstable"] = um;
            ordered_json sm = ordered_json::object();
            rows.clear();
            for (const auto& [a, b] : g.stable_map)
                rows.push_back({m.stable_names[a], m.stable_names[b]});
            std::sort(rows.begin(), rows.end());
            for (auto& [a, b] : rows) sm[a] = b;
            o["stable"] = sm;
            ordered_json em = ordered_json::object();
            for (const auto& [a, b] : g.end_map) em[a] = b;
            o["ends"] = em;
            autos[g.name] = o;
        }
        j["automorphisms"] = autos;
    }
    return j.dump(2) + "\n";
}

} // namespace anosov
