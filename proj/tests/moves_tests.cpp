#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"

namespace {

using planaria::core::CurveDiagram;
using planaria::moves::MoveInstance;
using planaria::moves::MoveKind;

CurveDiagram realized(const std::vector<int>& word) {
    auto c = planaria::codec::realize(word);
    REQUIRE(c.has_value());
    return *c;
}

CurveDiagram torus_clasp() {
    CurveDiagram c;
    c.alpha = {7, 6, 4, 5, 2, 3, 1, 0};
    c.ids = {1, 2};
    c.colors = {planaria::core::Color::black, planaria::core::Color::black};
    c.next_id = 3;
    REQUIRE_FALSE(planaria::core::validate(c).has_value());
    return c;
}

std::vector<int> face_profile(const CurveDiagram& c) {
    std::vector<int> sizes;
    for (const auto& f : planaria::core::faces(c))
        sizes.push_back(f.sides());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

int face_index_where(const CurveDiagram& c, int sides, bool distinct_vertices) {
    const auto fs = planaria::core::faces(c);
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        const auto& f = fs[static_cast<std::size_t>(i)];
        if (f.sides() != sides)
            continue;
        std::set<int> vs;
        for (auto d : f.boundary)
            vs.insert(CurveDiagram::vertex(d));
        if (!distinct_vertices || static_cast<int>(vs.size()) == sides)
            return i;
    }
    return -1;
}

const std::vector<MoveKind> all_kinds{MoveKind::r1a, MoveKind::r1b, MoveKind::r2a,
                                      MoveKind::r2b, MoveKind::r3};

} // namespace

TEST_CASE("move kind names") {
    using planaria::moves::crossing_delta;
    CHECK(crossing_delta(MoveKind::r1a) == -1);
    CHECK(crossing_delta(MoveKind::r1b) == 1);
    CHECK(crossing_delta(MoveKind::r2a) == -2);
    CHECK(crossing_delta(MoveKind::r2b) == 2);
    CHECK(crossing_delta(MoveKind::r3) == 0);
    for (MoveKind k : all_kinds)
        CHECK(planaria::moves::kind_from_name(planaria::moves::kind_name(k)) == k);
    CHECK(planaria::moves::parse_kinds("1a, 1b ,3") ==
          std::vector<MoveKind>{MoveKind::r1a, MoveKind::r1b, MoveKind::r3});
    CHECK_THROWS_AS((void)planaria::moves::kind_from_name("4x"), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::moves::parse_kinds(""), std::runtime_error);
}

TEST_CASE("kink birth from the circle") {
    const auto circle = CurveDiagram::circle(0);
    auto left = planaria::moves::apply(circle, {MoveKind::r1b, 0, 0, 0});
    auto right = planaria::moves::apply(circle, {MoveKind::r1b, 0, 0, 1});
    CHECK(left.after.n() == 1);
    CHECK(left.created_ids == std::vector<int>{1});
    CHECK(left.after.colors[0] == planaria::core::Color::gray);
    CHECK(planaria::core::genus(left.after) == 0);
    CHECK(face_profile(left.after) == std::vector<int>{1, 1, 2});
    // A lone kink is the same map whichever side the loop lands on.
    CHECK(planaria::codec::canonical(left.after) == planaria::codec::canonical(right.after));
}

TEST_CASE("kink removal") {
    const auto kink = realized({1, 1});
    const auto only = planaria::moves::enumerate(kink, {MoveKind::r1a});
    REQUIRE(only.size() == 1);
    auto res = planaria::moves::apply(kink, only[0]);
    CHECK(res.after.n() == 0);
    CHECK(res.after.circle_genus == 0);
    CHECK(res.removed_ids == std::vector<int>{1});
    CHECK(res.dart_map == std::vector<planaria::core::Dart>{-1, -1, -1, -1});
}

TEST_CASE("clasp birth from the circle") {
    const auto circle = CurveDiagram::circle(0);
    auto a = planaria::moves::apply(circle, {MoveKind::r2b, 0, 0, 0});
    auto b = planaria::moves::apply(circle, {MoveKind::r2b, 0, 0, 1});
    CHECK(a.after.n() == 2);
    CHECK(a.created_ids == std::vector<int>{1, 2});
    CHECK(planaria::core::genus(a.after) == 0);
    CHECK(face_profile(a.after) == std::vector<int>{1, 1, 2, 4});
    CHECK(planaria::codec::canonical_word(planaria::core::curve_order(a.after)) ==
          planaria::codec::canonical_word({1, 2, 2, 1}));
    CHECK(planaria::codec::canonical(a.after) == planaria::codec::canonical(b.after));
}

TEST_CASE("clasp removal") {
    const auto finger = realized({1, 2, 2, 1});
    const auto only = planaria::moves::enumerate(finger, {MoveKind::r2a});
    REQUIRE(only.size() == 1);
    auto res = planaria::moves::apply(finger, only[0]);
    CHECK(res.after.n() == 0);
    CHECK(res.after.circle_genus == 0);
    CHECK(res.removed_ids == std::vector<int>{1, 2});
}

TEST_CASE("move 2a needs distinct crossings") {
    // The kink has a two-sided face, but both of its corners sit at the one
    // crossing, so no strand pair can be pulled apart there.
    const auto kink = realized({1, 1});
    const int big = face_index_where(kink, 2, false);
    REQUIRE(big >= 0);
    const auto fs = planaria::core::faces(kink);
    CHECK(CurveDiagram::vertex(fs[static_cast<std::size_t>(big)].boundary[0]) ==
          CurveDiagram::vertex(fs[static_cast<std::size_t>(big)].boundary[1]));
    CHECK(planaria::moves::enumerate(kink, {MoveKind::r2a}).empty());
    CHECK_THROWS_AS((void)planaria::moves::apply(kink, {MoveKind::r2a, big, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("triangle slide on the trefoil shadow") {
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    const auto tris = planaria::moves::enumerate(trefoil, {MoveKind::r3});
    REQUIRE(tris.size() == 2);
    for (const auto& m : tris) {
        auto res = planaria::moves::apply(trefoil, m);
        CHECK(res.after.n() == 3);
        CHECK(planaria::core::genus(res.after) == 0);
        CHECK(face_profile(res.after) == std::vector<int>{2, 2, 2, 3, 3});
        CHECK(planaria::codec::canonical(res.after) == planaria::codec::canonical(trefoil));
        // The inverse slide across the image triangle restores alpha exactly.
        auto inv = planaria::moves::inverse(m, trefoil, res);
        auto back = planaria::moves::apply(res.after, inv);
        CHECK(back.after.alpha == trefoil.alpha);
    }
}

TEST_CASE("moves keep the genus") {
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    for (const auto& m : planaria::moves::enumerate(trefoil, all_kinds)) {
        auto res = planaria::moves::apply(trefoil, m);
        CHECK(planaria::core::genus(res.after) == 0);
        CHECK(res.after.n() == 3 + planaria::moves::crossing_delta(m.kind));
    }
    const auto torus = torus_clasp();
    REQUIRE(planaria::core::genus(torus) == 1);
    for (const auto& m : planaria::moves::enumerate(torus, {MoveKind::r1b, MoveKind::r2b,
                                                            MoveKind::r3})) {
        auto res = planaria::moves::apply(torus, m);
        CHECK(planaria::core::genus(res.after) == 1);
    }
}

TEST_CASE("clasp removal remembers the surface") {
    const auto torus = torus_clasp();
    const auto only = planaria::moves::enumerate(torus, {MoveKind::r2a});
    REQUIRE(only.size() == 1);
    auto res = planaria::moves::apply(torus, only[0]);
    CHECK(res.after.n() == 0);
    CHECK(res.after.circle_genus == 1);
    CHECK(planaria::moves::enumerate(res.after, all_kinds).empty());
    CHECK_THROWS_AS((void)planaria::moves::apply(res.after, {MoveKind::r1b, 0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("loop side quotient") {
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    for (planaria::core::Dart d = 0; d < trefoil.dart_count(); ++d) {
        const planaria::core::Dart f = trefoil.alpha[static_cast<std::size_t>(d)];
        if (d >= f)
            continue;
        auto dl = planaria::moves::apply(trefoil, {MoveKind::r1b, d, 0, 0});
        auto fr = planaria::moves::apply(trefoil, {MoveKind::r1b, f, 0, 1});
        CHECK(planaria::codec::canonical(dl.after) == planaria::codec::canonical(fr.after));
    }
}

TEST_CASE("every move inverts") {
    std::vector<CurveDiagram> pool;
    pool.push_back(realized({1, 1}));
    pool.push_back(realized({1, 2, 2, 1}));
    pool.push_back(realized({1, 2, 3, 1, 2, 3}));
    for (auto& c : planaria::codec::realize_all({1, 1, 2, 2}))
        pool.push_back(std::move(c));
    for (const auto& c : pool) {
        const auto code = planaria::codec::canonical(c);
        for (const auto& m : planaria::moves::enumerate(c, all_kinds)) {
            auto res = planaria::moves::apply(c, m);
            auto inv = planaria::moves::inverse(m, c, res);
            auto back = planaria::moves::apply(res.after, inv);
            CHECK(planaria::codec::canonical(back.after) == code);
        }
    }
    // The circle specials invert as well.
    const auto circle = CurveDiagram::circle(0);
    for (const auto& m : planaria::moves::enumerate(circle, all_kinds)) {
        auto res = planaria::moves::apply(circle, m);
        auto inv = planaria::moves::inverse(m, circle, res);
        auto back = planaria::moves::apply(res.after, inv);
        CHECK(back.after.n() == 0);
        CHECK(back.after.circle_genus == 0);
    }
}

TEST_CASE("move serialization round trip") {
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    const auto ms = planaria::moves::enumerate(trefoil, all_kinds);
    CHECK(!ms.empty());
    std::set<std::string> seen;
    for (const auto& m : ms) {
        const std::string text = planaria::moves::serialize(m, trefoil);
        CHECK(seen.insert(text).second);
        CHECK(planaria::moves::parse_move(text, trefoil) == m);
    }
    const auto circle = CurveDiagram::circle(0);
    CHECK(planaria::moves::serialize({MoveKind::r1b, 0, 0, 0}, circle) == "1b:d0:L");
    CHECK(planaria::moves::serialize({MoveKind::r2b, 0, 0, 1}, circle) == "2b:d0:d0:B");
    CHECK(planaria::moves::parse_move("1b:d0:R", circle) ==
          MoveInstance{MoveKind::r1b, 0, 0, 1});
    CHECK_THROWS_AS((void)planaria::moves::parse_move("1b:d9:L", circle), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::moves::parse_move("2b:d0", trefoil), std::runtime_error);
    CHECK_THROWS_AS((void)planaria::moves::parse_move("1a:x3", trefoil), std::runtime_error);
}

TEST_CASE("moves are anchored by the traversal, not the storage") {
    // Relabeling the crossings of a diagram must not change what a
    // serialized move means.
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    CurveDiagram shifted = trefoil;
    shifted.ids = {7, 5, 6};
    shifted.next_id = 8;
    for (const auto& m : planaria::moves::enumerate(trefoil, all_kinds)) {
        const std::string text = planaria::moves::serialize(m, trefoil);
        const auto m2 = planaria::moves::parse_move(text, shifted);
        auto r1 = planaria::moves::apply(trefoil, m);
        auto r2 = planaria::moves::apply(shifted, m2);
        CHECK(planaria::codec::canonical(r1.after) == planaria::codec::canonical(r2.after));
    }
}

TEST_CASE("apply rejects bad anchors") {
    const auto trefoil = realized({1, 2, 3, 1, 2, 3});
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r1a, 0, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r1a, 99, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r1b, -1, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r2b, 0, 0, 0}),
                    std::invalid_argument);
    const auto fs = planaria::core::faces(trefoil);
    const int tri = face_index_where(trefoil, 3, true);
    REQUIRE(tri >= 0);
    const int big = face_index_where(trefoil, 2, true);
    REQUIRE(big >= 0);
    // Darts of different faces never share an anchor.
    const auto owner = planaria::core::face_of_dart(trefoil, fs);
    planaria::core::Dart d1 = fs[static_cast<std::size_t>(tri)].boundary[0];
    planaria::core::Dart d2 = fs[static_cast<std::size_t>(big)].boundary[0];
    REQUIRE(owner[static_cast<std::size_t>(d1)] != owner[static_cast<std::size_t>(d2)]);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r2b, d1, d2, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r2a, tri, 0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)planaria::moves::apply(trefoil, {MoveKind::r3, big, 0, 0}),
                    std::invalid_argument);
    const auto circle = CurveDiagram::circle(0);
    CHECK_THROWS_AS((void)planaria::moves::apply(circle, {MoveKind::r1a, 0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("enumeration is closed under apply") {
    const auto finger = realized({1, 2, 2, 1});
    const auto ms = planaria::moves::enumerate(finger, all_kinds);
    CHECK(!ms.empty());
    for (const auto& m : ms)
        CHECK_NOTHROW((void)planaria::moves::apply(finger, m));
}
