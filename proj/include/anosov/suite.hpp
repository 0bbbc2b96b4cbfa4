#ifndef ANOSOV_SUITE_HPP
#define ANOSOV_SUITE_HPP

#include <string>
#include <vector>

#include "anosov/dynamics.hpp"
#include "anosov/fixtures.hpp"
#include "anosov/render.hpp"

namespace anosov {

struct SuiteRecord {
    std::string model_id;
    std::string invariant;
    std::string status; // "pass", "fail", "skip"
    std::string witness;
};

struct SuiteReport {
    std::vector<SuiteRecord> records;
    bool all_pass() const;
    int fail_count() const;
    std::string to_text() const; // sorted and deterministic
    std::string to_json() const;
    void add(const std::string& model, const std::string& inv, bool ok,
             const std::string& witness = "");
    void skip(const std::string& model, const std::string& inv, const std::string& why);
};

struct SuiteConfig {
    uint64_t seed = 1;
    int count = 100;
    int max_leaves = 50;
    bool fixtures = true;
    bool corpus = true;
    int oracle_leaf_limit = 8;
};

// registry of invariant ids; every deep-checked model reports each exactly once
std::vector<std::string> invariant_registry();

// deep per-model sweep appending one record per registry invariant
void check_model(SuiteReport& rep, const std::string& id, const OrbitModel& m);

SuiteReport run_suites(const SuiteConfig& cfg);

// sections used by the sweeps: special sections at every nonmarker point plus
// every constructible end limit
struct SectionUniverse {
    std::vector<Section> sections;
    std::vector<std::string> labels;
    std::vector<int> basepoints;           // -1 for end limits
    std::vector<const EndDecl*> limit_of;  // null for basepoint sections
    std::vector<std::string> no_stab_ends; // ends whose limit failed
};
SectionUniverse build_universe(const LeafSpace& ls);

// brute-force enumeration of admissible sections (small windows only)
std::vector<Section> enumerate_admissible(const LeafSpace& ls, long long cap);

// tournament comparison behind the leftmost oracle: true when a beats b at
// their first divergence walking out from the shared basepoint
bool improves(const LeafSpace& ls, FiberPoint p, const Section& a, const Section& b);

} // namespace anosov

#endif
