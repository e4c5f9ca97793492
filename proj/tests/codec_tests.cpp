#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "planaria/codec.hpp"
#include "planaria/core.hpp"

namespace {

using planaria::codec::GaussCode;
using planaria::core::CurveDiagram;

std::vector<int> face_profile(const CurveDiagram& c) {
    std::vector<int> sizes;
    for (const auto& f : planaria::core::faces(c))
        sizes.push_back(f.sides());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

bool same_word_class(const GaussCode& a, const GaussCode& b) {
    return planaria::codec::canonical_word(a) == planaria::codec::canonical_word(b);
}

} // namespace

TEST_CASE("gauss parsing") {
    CHECK(planaria::codec::parse_gauss("1 2 1 2") == GaussCode{1, 2, 1, 2});
    CHECK(planaria::codec::parse_gauss("# lead\n 3 4\n4 3 # tail\n") == GaussCode{3, 4, 4, 3});
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("1 x 1"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("1 2 1"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss(""), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("# only comments"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("1 1 1 1"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("0 0"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_gauss("1 1 2"), std::runtime_error);

    const GaussCode w{2, 7, 7, 2};
    CHECK(planaria::codec::parse_gauss(planaria::codec::emit_gauss(w)) == w);
}

TEST_CASE("word normalization") {
    CHECK(planaria::codec::normalize_labels({7, 3, 7, 3}) == GaussCode{1, 2, 1, 2});
    CHECK(planaria::codec::canonical_word({2, 1, 1, 2}) ==
          planaria::codec::canonical_word({1, 2, 2, 1}));
    CHECK(planaria::codec::canonical_word({1, 2, 3, 1, 2, 3}) ==
          planaria::codec::canonical_word({3, 2, 1, 3, 2, 1}));
    CHECK(planaria::codec::canonical_word({1, 1, 2, 2}) !=
          planaria::codec::canonical_word({1, 2, 1, 2}));
}

TEST_CASE("realize a kink") {
    auto c = planaria::codec::realize({1, 1});
    REQUIRE(c.has_value());
    CHECK_FALSE(planaria::core::validate(*c).has_value());
    CHECK(c->n() == 1);
    CHECK(planaria::core::genus(*c) == 0);
    CHECK(face_profile(*c) == std::vector<int>{1, 1, 2});
    CHECK(planaria::core::curve_order(*c) == std::vector<int>{1, 1});
}

TEST_CASE("realize rejects nonplanar words") {
    CHECK_FALSE(planaria::codec::realize({1, 2, 1, 2}).has_value());
    CHECK(planaria::codec::realize_all({1, 2, 1, 2}).empty());
    CHECK_THROWS_AS((void)planaria::codec::realize({1, 2, 1}), std::invalid_argument);
}

TEST_CASE("realize the clasp closure") {
    auto c = planaria::codec::realize({1, 2, 2, 1});
    REQUIRE(c.has_value());
    CHECK(planaria::core::genus(*c) == 0);
    CHECK(face_profile(*c) == std::vector<int>{1, 1, 2, 4});
    const auto fs = planaria::core::faces(*c);
    bool lens = false;
    for (const auto& f : fs)
        if (f.sides() == 2 &&
            CurveDiagram::vertex(f.boundary[0]) != CurveDiagram::vertex(f.boundary[1]))
            lens = true;
    CHECK(lens);
    CHECK(same_word_class(planaria::core::curve_order(*c), {1, 2, 2, 1}));

    const auto all = planaria::codec::realize_all({1, 2, 2, 1});
    CHECK(all.size() == 2);
    std::set<std::vector<int>> profiles;
    for (const auto& r : all)
        profiles.insert(face_profile(r));
    CHECK(profiles == std::set<std::vector<int>>{{1, 1, 2, 4}, {1, 1, 3, 3}});
}

TEST_CASE("realize both curl layouts") {
    const auto all = planaria::codec::realize_all({1, 1, 2, 2});
    CHECK(all.size() == 2);
    std::set<std::vector<int>> profiles;
    for (const auto& r : all) {
        CHECK(planaria::core::genus(r) == 0);
        CHECK(same_word_class(planaria::core::curve_order(r), {1, 1, 2, 2}));
        profiles.insert(face_profile(r));
    }
    CHECK(profiles == std::set<std::vector<int>>{{1, 1, 2, 4}, {1, 1, 3, 3}});
}

TEST_CASE("realize the trefoil shadow") {
    auto c = planaria::codec::realize({1, 2, 3, 1, 2, 3});
    REQUIRE(c.has_value());
    CHECK(planaria::core::genus(*c) == 0);
    CHECK(face_profile(*c) == std::vector<int>{2, 2, 2, 3, 3});

    // The shadow has a reflection symmetry, so both embeddings of the word
    // are the same map.
    const auto all = planaria::codec::realize_all({1, 2, 3, 1, 2, 3});
    REQUIRE(all.size() == 1);
    CHECK(planaria::codec::canonical(all[0]) == planaria::codec::canonical(*c));
}

TEST_CASE("canonical code equivalences") {
    auto a = planaria::codec::realize({1, 2, 2, 1});
    auto b = planaria::codec::realize({5, 9, 9, 5});
    auto r = planaria::codec::realize({2, 2, 1, 1});
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    REQUIRE(r.has_value());
    CHECK(planaria::codec::canonical(*a) == planaria::codec::canonical(*b));
    CHECK(planaria::codec::canonical(*a) == planaria::codec::canonical(*r));
    CHECK(planaria::codec::canonical(*a).bytes != "");

    auto trefoil = planaria::codec::realize({1, 2, 3, 1, 2, 3});
    REQUIRE(trefoil.has_value());
    CHECK(planaria::codec::canonical(*a) != planaria::codec::canonical(*trefoil));

    auto circle = CurveDiagram::circle(0);
    CHECK(planaria::codec::canonical(circle).bytes == "O:g0");
    CHECK(planaria::codec::canonical(CurveDiagram::circle(1)).bytes == "O:g1");
}

TEST_CASE("quad emission is deterministic") {
    auto kink = planaria::codec::realize({1, 1});
    REQUIRE(kink.has_value());
    const std::string text = planaria::codec::emit_quad(*kink);
    CHECK(text == "X 1: 1 2 2 1\n");
    auto back = planaria::codec::parse_quad(text);
    CHECK(planaria::codec::canonical(back) == planaria::codec::canonical(*kink));

    auto trefoil = planaria::codec::realize({1, 2, 3, 1, 2, 3});
    REQUIRE(trefoil.has_value());
    const std::string t = planaria::codec::emit_quad(*trefoil);
    CHECK(planaria::codec::emit_quad(planaria::codec::parse_quad(t)) == t);
}

TEST_CASE("quad circle records") {
    CHECK(planaria::codec::emit_quad(CurveDiagram::circle(0)) == "O 0\n");
    auto c = planaria::codec::parse_quad("# comment\nO 1\n");
    CHECK(c.n() == 0);
    CHECK(c.circle_genus == 1);
}

TEST_CASE("quad parser rejects malformed input") {
    CHECK_THROWS_AS((void)planaria::codec::parse_quad(""), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("X 1: 1 2 3 4\n"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("X 1: 1 2 2 1 7\n"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("X 1 1 2 2 1\n"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("Y 1: 1 2 2 1\n"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("O 0\nX 1: 1 2 2 1\n"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("O -1\n"), std::runtime_error);
    // Pairings that form two disjoint curves are rejected by validation.
    CHECK_THROWS_AS((void)planaria::codec::parse_quad("X 1: 1 1 2 2\nX 2: 3 3 4 4\n"),
                    std::runtime_error);
}

TEST_CASE("quad round trip for the torus clasp") {
    CurveDiagram c;
    c.alpha = {7, 6, 4, 5, 2, 3, 1, 0};
    c.ids = {1, 2};
    c.colors = {planaria::core::Color::black, planaria::core::Color::black};
    c.next_id = 3;
    REQUIRE_FALSE(planaria::core::validate(c).has_value());
    REQUIRE(planaria::core::genus(c) == 1);
    const std::string text = planaria::codec::emit_quad(c);
    auto back = planaria::codec::parse_quad(text);
    CHECK(planaria::core::genus(back) == 1);
    CHECK(planaria::codec::canonical(back) == planaria::codec::canonical(c));
}

TEST_CASE("canonical separates the curl layouts") {
    const auto all = planaria::codec::realize_all({1, 1, 2, 2});
    REQUIRE(all.size() == 2);
    CHECK(planaria::codec::canonical(all[0]) != planaria::codec::canonical(all[1]));
    // The two layouts are not mirror images of each other either: one has
    // matching curls, the other opposing ones.
    CHECK(planaria::codec::canonical(all[0], true) != planaria::codec::canonical(all[1], true));
}

namespace {

// Reflection of the map: reverse the rotation at every crossing.
CurveDiagram mirrored(const CurveDiagram& c) {
    auto m = [](planaria::core::Dart d) { return (d & ~3) | ((4 - (d & 3)) & 3); };
    CurveDiagram out = c;
    for (planaria::core::Dart d = 0; d < c.dart_count(); ++d)
        out.alpha[static_cast<std::size_t>(m(d))] =
            m(c.alpha[static_cast<std::size_t>(d)]);
    return out;
}

} // namespace

TEST_CASE("mirror classes") {
    auto kink = planaria::codec::realize({1, 1});
    REQUIRE(kink.has_value());
    CHECK(planaria::codec::canonical(*kink) == planaria::codec::canonical(mirrored(*kink)));

    bool found_chiral = false;
    for (const auto& r : planaria::codec::realize_all({1, 1, 2, 2, 3, 4, 4, 3})) {
        const auto mir = mirrored(r);
        REQUIRE_FALSE(planaria::core::validate(mir).has_value());
        CHECK(planaria::codec::canonical(r, true) == planaria::codec::canonical(mir, true));
        if (planaria::codec::canonical(r) != planaria::codec::canonical(mir))
            found_chiral = true;
    }
    CHECK(found_chiral);
}
