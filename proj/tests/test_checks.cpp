#include "ctaut/checks.hpp"

#include "doctest.h"

#include <set>

using namespace ctaut;

TEST_CASE("catalog") {
    const auto& c = check_catalog();
    REQUIRE(c.size() == 10);
    std::set<std::string> ids;
    for (const auto& info : c)
        ids.insert(info.id);
    CHECK(ids.size() == 10);
    CHECK(check_info("pushforward").id == "pushforward");
    CHECK_THROWS_AS(check_info("nope"), std::invalid_argument);
    CHECK_THROWS_AS(check_tasks("nope", {}), std::invalid_argument);
}

TEST_CASE("selection filters the items") {
    Selection sel;
    const auto all = check_tasks("pushforward", sel);
    sel.g = 1;
    sel.n = 2;
    const auto some = check_tasks("pushforward", sel);
    CHECK(some.size() < all.size());
    for (const auto& t : some)
        CHECK(t.label.find("g=1 n=2") != std::string::npos);
    Selection lng;
    lng.long_mode = true;
    CHECK(check_tasks("pushforward", lng).size() > all.size());
    CHECK(check_tasks("vanishing-experiment", lng).size() == 4);
    CHECK(check_tasks("vanishing-experiment", {}).size() == 2);
}

TEST_CASE("pass rule") {
    CheckItem it;
    it.verdict = Verdict::Consistent;
    CHECK(item_passes(check_info("relations"), it));
    CHECK_FALSE(item_passes(check_info("genus0-vanishing"), it));
    it.verdict = Verdict::Nonzero;
    CHECK_FALSE(item_passes(check_info("relations"), it));
}

TEST_CASE("class hashes") {
    const StrataClass x = StrataClass::fundamental(0, 4);
    CHECK(class_hash(x) == class_hash(StrataClass::fundamental(0, 4)));
    CHECK(class_hash(x) != class_hash(StrataClass::fundamental(0, 5)));
    CHECK(class_hash(x).size() == 16);
}

TEST_CASE("brute force level counts") {
    // root with two leaf children: levels {0,1,1} or {0,1,2} or {0,2,1}
    StableRootedTree cherry(0, 4, 2, {{0, -1, {1, 2}, {}}, {0, 0, {}, {0, 1}}, {0, 0, {}, {2, 3}}});
    CHECK(brute_force_c_lvl(cherry, {0, 0, 0}) == c_lvl(cherry, {0, 0, 0}));
    CHECK(brute_force_c_lvl(cherry, {1, 0, 0}) == c_lvl(cherry, {1, 0, 0}));
}

TEST_CASE("DVV recursion") {
    CHECK(dvv_integral(1, {1}) == Rational(1, 24));
    CHECK(dvv_integral(2, {4}) == Rational(1, 1152));
    CHECK(dvv_integral(0, {1, 0, 0, 0}) == Rational(1));
    CHECK(dvv_integral(1, {2}) == Rational(0));
}

TEST_CASE("small checks run and pass") {
    for (const char* id : {"oracles", "relations"}) {
        Selection sel;
        sel.g = 1;
        sel.r = 0;
        sel.n = 1;
        for (const auto& t : check_tasks(id, sel)) {
            const CheckItem it = t.run();
            CAPTURE(t.label);
            CHECK(it.label == t.label);
            CHECK(item_passes(check_info(id), it));
        }
    }
    Selection sel;
    sel.g = 0;
    sel.n = 2;
    sel.m = 3;
    const auto tasks = check_tasks("genus0-vanishing", sel);
    REQUIRE(tasks.size() == 1);
    const CheckItem it = tasks[0].run();
    CHECK(it.verdict == Verdict::Certified);
    CHECK(it.degrees.count(2) == 1);
    CHECK(it.degrees.at(2).nonzero == 0);
}
