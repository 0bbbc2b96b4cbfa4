#include <doctest.h>

#include "anosov/fixtures.hpp"
#include "anosov/leafspace.hpp"

using namespace anosov;

TEST_CASE("M0 parses to three unstable leaves and one stable leaf") {
    auto m = fixtures::m0();
    auto text = serialize(m);
    auto m2 = parse_model(text);
    CHECK(m2.n_unstable() == 3);
    CHECK(m2.n_stable() == 1);
    CHECK(serialize(m2) == text);
}

TEST_CASE("M1 carries the base_s structure") {
    auto m = fixtures::m1();
    CHECK(m.n_unstable() == 5);
    CHECK(m.n_stable() == 2);
    int s1 = m.stable_index("s1");
    REQUIRE(s1 >= 0);
    REQUIRE(m.crossings_along_stable[s1].size() == 2);
    CHECK(m.unstable_names[m.crossings_along_stable[s1][0]] == "u1");
    CHECK(m.unstable_names[m.crossings_along_stable[s1][1]] == "u2");
    CHECK(m.perfect_fits.size() == 2);
    CHECK(validate_model(m).ok());
}

TEST_CASE("crossing listed on one side only is rejected") {
    auto m = fixtures::m1();
    // drop the unstable-side record of one crossing
    int u1 = m.unstable_index("u1");
    m.crossings_along_unstable[u1].clear();
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.rule == "a") found = true;
    CHECK(found);
}

TEST_CASE("syntax errors and duplicate identifiers are parse errors") {
    CHECK_THROWS_AS(parse_model("{"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"unstable":["u","u"],"stable":[]})"), ParseError);
}

TEST_CASE("planarity violations are reported with witnesses") {
    auto m = fixtures::m0();
    // second stable crossing the same pair in the opposite order
    m.stable_names.push_back("s2");
    int u1 = m.unstable_index("u1"), u2 = m.unstable_index("u2");
    m.crossings_along_stable.push_back({u2, u1});
    m.crossings_along_unstable[u1].push_back(1);
    m.crossings_along_unstable[u2].push_back(1);
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok());
    bool planarity = false;
    for (const auto& v : rep.violations)
        if (v.rule == "c") planarity = true;
    CHECK(planarity);
}

TEST_CASE("one-leaf chains are rejected") {
    auto m = fixtures::m1();
    BranchingChain c;
    c.family = Family::Unstable;
    c.side = BranchSide::FromAbove;
    c.leaves = {m.unstable_index("u0")};
    m.chains.push_back(c);
    auto rep = validate_model(m);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("apply_automorphism is table lookup with errors") {
    auto m = fixtures::m4();
    int a = m.unstable_index("m1"), b = m.unstable_index("m4");
    CHECK(apply_automorphism(m, "g", unstable_leaf(a)) == unstable_leaf(b));
    CHECK_THROWS(apply_automorphism(m, "nope", unstable_leaf(a)));
    // outside the partial domain
    CHECK_THROWS(apply_automorphism(m, "g", unstable_leaf(m.unstable_index("r2"))));
    auto plain = fixtures::m1();
    CHECK_THROWS(apply_automorphism(plain, "g", unstable_leaf(0)));
}

TEST_CASE("identity automorphism fixes every leaf") {
    auto models = generate_corpus(7, 6, 14);
    for (const auto& m : models) {
        const Automorphism* id = m.find_automorphism("id");
        if (!id) continue;
        for (int u = 0; u < m.n_unstable(); ++u)
            CHECK(apply_automorphism(m, "id", unstable_leaf(u)) == unstable_leaf(u));
    }
}

TEST_CASE("corpus generation is deterministic and valid") {
    auto a = generate_corpus(1, 10, 20);
    auto b = generate_corpus(1, 10, 20);
    REQUIRE(a.size() == 10);
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(serialize(a[i]) == serialize(b[i]));
        CHECK(validate_model(a[i]).ok());
    }
}

TEST_CASE("a three-leaf corpus is chain free") {
    auto ms = generate_corpus(2, 1, 3);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].chains.empty());
    CHECK(validate_model(ms[0]).ok());
}

TEST_CASE("round trip through serialize and parse is structural identity") {
    for (const auto& name : fixtures::names()) {
        auto m = fixtures::by_name(name);
        auto text = serialize(m);
        CHECK(serialize(parse_model(text)) == text);
    }
    for (const auto& m : generate_corpus(3, 5, 25)) {
        auto text = serialize(m);
        CHECK(serialize(parse_model(text)) == text);
    }
}
