#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "anosov/suite.hpp"

using namespace anosov;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInput = 2;

OrbitModel load(const std::string& path) {
    if (path.rfind("fixture:", 0) == 0) return fixtures::by_name(path.substr(8));
    return load_model_file(path);
}

// "LEAF" or "LEAF:STABLE" for special sections, "limit:END" for end limits
Section parse_section_spec(const LeafSpace& ls, const std::string& spec) {
    const OrbitModel& m = *ls.model;
    if (spec.rfind("limit:", 0) == 0) {
        const EndDecl* e = m.find_end(spec.substr(6));
        if (!e) throw std::runtime_error("unknown end in section spec: " + spec);
        auto lim = limit_section_at_end(ls, *e);
        if (!lim.ok)
            throw std::runtime_error("no_stabilization at " +
                                     m.unstable_names[lim.failing_leaf]);
        return lim.section;
    }
    auto colon = spec.find(':');
    std::string leaf = colon == std::string::npos ? spec : spec.substr(0, colon);
    int u = m.unstable_index(leaf);
    if (u < 0) throw std::runtime_error("unknown leaf in section spec: " + leaf);
    if (colon == std::string::npos) return special_section(ls, nonmarker_at(u));
    int s = m.stable_index(spec.substr(colon + 1));
    if (s < 0) throw std::runtime_error("unknown stable leaf in section spec");
    if (ls.pos_of(u, s) < 0) throw std::runtime_error("marker basepoint is not a crossing");
    return special_section(ls, marker_at(u, s));
}

std::string fiber_name(const OrbitModel& m, int leaf, int v) {
    return m.unstable_names[leaf] + " -> " + (v < 0 ? "NM" : "marker(" + m.stable_names[v] + ")");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-window orbit space engine for Anosov-flow universal circles"};
    app.require_subcommand(1);

    std::string model_path, out_dir = ".", section_spec, base_spec, end_id, from_leaf, to_leaf;
    std::string auto_name = "g";
    bool as_json = false;
    uint64_t seed = 1;
    int count = 10, max_leaves = 20, power = 1;

    app.add_option("--model", model_path, "model file or fixture:<name>");
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", seed, "corpus seed");
    app.add_option("--out", out_dir, "output directory");

    auto* c_validate = app.add_subcommand("validate", "check model invariants");
    auto* c_leafspace = app.add_subcommand("leafspace", "dump charts and cataclysms");
    auto* c_sections = app.add_subcommand("sections", "print a leftmost section");
    c_sections->add_option("--base", base_spec, "LEAF or LEAF:STABLE basepoint")->required();
    auto* c_base = app.add_subcommand("base", "coloring and base of a section");
    c_base->add_option("--section", section_spec, "section spec")->required();
    auto* c_master = app.add_subcommand("master", "list master sets");
    auto* c_ql = app.add_subcommand("ql", "ql-extremality diagnostic");
    c_ql->add_option("--section", section_spec)->required();
    c_ql->add_option("--from", from_leaf)->required();
    c_ql->add_option("--to", to_leaf)->required();
    auto* c_ct = app.add_subcommand("ct", "Cannon-Thurston value of a section");
    c_ct->add_option("--section", section_spec)->required();
    auto* c_cont = app.add_subcommand("ct-continuity", "end-family continuity report");
    c_cont->add_option("--end", end_id)->required();
    auto* c_dyn = app.add_subcommand("dynamics", "fixed points of an automorphism power");
    c_dyn->add_option("--auto", auto_name);
    c_dyn->add_option("--power", power);
    auto* c_render = app.add_subcommand("render", "write SVG views");
    c_render->add_option("--section", section_spec, "optional section for the coloring view");
    auto* c_corpus = app.add_subcommand("corpus", "generate models");
    c_corpus->add_option("--count", count);
    c_corpus->add_option("--max-leaves", max_leaves);
    auto* c_suite = app.add_subcommand("suite", "run all invariant suites");
    c_suite->add_option("--count", count);
    c_suite->add_option("--max-leaves", max_leaves);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_corpus->parsed()) {
            auto models = generate_corpus(seed, count, max_leaves);
            std::filesystem::create_directories(out_dir);
            for (size_t i = 0; i < models.size(); ++i) {
                std::ostringstream name;
                name << out_dir << "/model-" << seed << "-" << i << ".json";
                write_file(name.str(), serialize(models[i]));
            }
            std::cout << "wrote " << models.size() << " models to " << out_dir << "\n";
            return kExitOk;
        }
        if (c_suite->parsed()) {
            SuiteConfig cfg;
            cfg.seed = seed;
            cfg.count = count;
            cfg.max_leaves = max_leaves;
            auto rep = run_suites(cfg);
            std::cout << (as_json ? rep.to_json() : rep.to_text());
            return rep.all_pass() ? kExitOk : kExitInvariant;
        }

        if (model_path.empty()) {
            std::cerr << "--model is required\n";
            return kExitInput;
        }
        OrbitModel m = load(model_path);

        if (c_validate->parsed()) {
            auto rep = validate_model(m);
            if (rep.ok()) {
                std::cout << (as_json ? "{\"ok\":true}\n" : "ok\n");
                return kExitOk;
            }
            if (as_json) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& v : rep.violations) arr.push_back({{"rule", v.rule},
                                                                    {"detail", v.detail}});
                std::cout << arr.dump(1) << "\n";
            } else {
                std::cout << rep.to_string();
            }
            return kExitInvariant;
        }

        LeafSpace ls = derive_leaf_space(m);

        if (c_leafspace->parsed()) {
            std::cout << "leaves: " << ls.n << "\n";
            for (size_t i = 0; i < ls.charts.size(); ++i) {
                std::cout << "chart " << i << ":";
                for (int u : ls.charts[i]) std::cout << " " << m.unstable_names[u];
                std::cout << "\n";
            }
            for (size_t i = 0; i < ls.cataclysms.size(); ++i) {
                std::cout << "cataclysm " << i << " (" << to_string(ls.cataclysms[i].side)
                          << "):";
                for (int u : ls.cataclysms[i].leaves) std::cout << " " << m.unstable_names[u];
                std::cout << "\n";
            }
            for (const auto& e : m.ends)
                std::cout << "end " << e.id << " at " << m.unstable_names[e.attachment] << " ("
                          << to_string(e.side) << ")\n";
            return kExitOk;
        }

        MasterSets msets = master_sets(ls);

        if (c_sections->parsed()) {
            Section sec = parse_section_spec(ls, base_spec);
            if (as_json) {
                nlohmann::ordered_json o;
                for (int u = 0; u < ls.n; ++u)
                    o[m.unstable_names[u]] =
                        sec.value[u] < 0 ? "NM" : m.stable_names[sec.value[u]];
                std::cout << o.dump(1) << "\n";
            } else {
                for (int u = 0; u < ls.n; ++u) std::cout << fiber_name(m, u, sec.value[u]) << "\n";
            }
            return kExitOk;
        }
        if (c_base->parsed()) {
            Section sec = parse_section_spec(ls, section_spec);
            auto rc = lu_rd_regions(ls, sec);
            auto b = base_of(ls, sec, rc);
            for (int u = 0; u < ls.n; ++u) {
                std::string color = rc.in_lu(u) && rc.in_rd(u) ? "BOTH"
                                    : rc.in_lu(u)              ? "LU"
                                    : rc.in_rd(u)              ? "RD"
                                                               : "-";
                std::cout << m.unstable_names[u] << " " << color << "\n";
            }
            switch (b.kind) {
                case BaseKind::Leaves: {
                    std::cout << "base: leaves";
                    for (int u : b.leaves) std::cout << " " << m.unstable_names[u];
                    std::cout << "\n";
                    break;
                }
                case BaseKind::End:
                    std::cout << "base: end " << b.end_id << "\n";
                    break;
                case BaseKind::WindowTruncated:
                    std::cout << "base: window_truncated (" << b.detail << ")\n";
                    return kExitInvariant;
                default:
                    std::cout << "base: ambiguous_against_current (" << b.detail << ")\n";
                    return kExitInvariant;
            }
            return kExitOk;
        }
        if (c_master->parsed()) {
            for (size_t i = 0; i < msets.sets.size(); ++i) {
                const auto& set = msets.sets[i];
                std::cout << "X" << i << ":";
                for (int u : set.unstable_leaves) std::cout << " " << m.unstable_names[u];
                for (int s : set.stable_leaves) std::cout << " " << m.stable_names[s];
                for (const auto& gj : set.gap_ids) std::cout << " gap(" << gj << ")";
                std::cout << "\n";
            }
            return kExitOk;
        }
        if (c_ql->parsed()) {
            Section sec = parse_section_spec(ls, section_spec);
            int a = m.unstable_index(from_leaf), b = m.unstable_index(to_leaf);
            if (a < 0 || b < 0) {
                std::cerr << "unknown leaf\n";
                return kExitInput;
            }
            auto z = zigzag(ls, a, b);
            auto d = is_ql_extremal(ls, sec, z);
            if (d.extremal) {
                auto r = ql_implies_master(ls, msets, sec, z);
                std::cout << "ql-extremal: yes\n";
                std::cout << "master: " << (r.ok ? "X" + std::to_string(r.common.id) : r.detail)
                          << "\n";
                return kExitOk;
            }
            std::cout << "ql-extremal: no (condition " << d.failed_condition << ": " << d.witness
                      << ")\n";
            return kExitOk;
        }
        if (c_ct->parsed()) {
            Section sec = parse_section_spec(ls, section_spec);
            auto r = ct(ls, msets, sec);
            if (!r.ok) {
                std::cout << "error: " << r.error << "\n";
                return kExitInvariant;
            }
            std::cout << "CT = X" << r.value.id << "\n";
            return kExitOk;
        }
        if (c_cont->parsed()) {
            const EndDecl* e = m.find_end(end_id);
            if (!e) {
                std::cerr << "unknown end " << end_id << "\n";
                return kExitInput;
            }
            auto r = continuity_sample(ls, msets, *e);
            if (!r.ok) {
                std::cout << "error: " << r.error << "\n";
                return kExitInvariant;
            }
            std::cout << "family stabilizes at stride " << r.period << " to X"
                      << r.family_value.id << ", ct(limit) = X" << r.limit_value.id << "\n";
            return kExitOk;
        }
        if (c_dyn->parsed()) {
            const Automorphism* g = m.find_automorphism(auto_name);
            if (!g) {
                std::cerr << "unknown automorphism " << auto_name << "\n";
                return kExitInput;
            }
            std::vector<int> sample;
            for (int u = 0; u < ls.n; ++u) sample.push_back(u);
            auto r = periodic_sections(ls, msets, *g, power, sample);
            if (!r.ok) {
                std::cout << "error: " << r.error << "\n";
                return kExitInvariant;
            }
            for (const auto& rec : r.records)
                std::cout << rec.label << " ct=X" << rec.ct_value.id << " "
                          << to_string(rec.cls) << "\n";
            return kExitOk;
        }
        if (c_render->parsed()) {
            std::filesystem::create_directories(out_dir);
            write_file(out_dir + "/orbit.svg", render_orbit_svg(ls));
            if (!section_spec.empty()) {
                Section sec = parse_section_spec(ls, section_spec);
                auto rc = lu_rd_regions(ls, sec);
                write_file(out_dir + "/coloring.svg", render_coloring_svg(ls, sec, rc));
            }
            std::vector<Section> secs;
            for (int u = 0; u < ls.n; ++u) secs.push_back(special_section(ls, nonmarker_at(u)));
            auto co = circular_order(ls, secs);
            write_file(out_dir + "/circle.svg", render_circle_svg(ls, msets, co));
            std::cout << "wrote SVG views to " << out_dir << "\n";
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInput;
}
