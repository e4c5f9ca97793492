#include <set>
#include <stdexcept>

#include "doctest.h"
#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"
#include "planaria/search.hpp"
#include "planaria/torus.hpp"

using namespace planaria;

namespace {

core::CurveDiagram clasp() {
    core::CurveDiagram c;
    c.alpha = {7, 6, 4, 5, 2, 3, 1, 0};
    c.ids = {1, 2};
    c.colors = {core::Color::black, core::Color::black};
    c.circle_genus = 1;
    c.next_id = 3;
    return c;
}

std::set<int> full_marking(const core::CurveDiagram& c) {
    return {c.ids.begin(), c.ids.end()};
}

search::SearchConfig torus_config(int cap) {
    search::SearchConfig cfg;
    cfg.kinds = {moves::MoveKind::r1a, moves::MoveKind::r1b, moves::MoveKind::r3};
    cfg.max_crossings = cap;
    return cfg;
}

} // namespace

TEST_CASE("the clasp strands cross twice") {
    CHECK(torus::disk_tangle_intersections(clasp(), {1, 2}) == 2);
    CHECK(torus::disk_tangle_intersections(core::CurveDiagram::circle(1), {}) == 0);
}

TEST_CASE("the invariant rejects inconsistent input") {
    CHECK_THROWS_AS((void)torus::disk_tangle_intersections(clasp(), {1}), std::invalid_argument);
    CHECK_THROWS_AS((void)torus::disk_tangle_intersections(clasp(), {1, 3}), std::out_of_range);
    const core::CurveDiagram trefoil = *codec::realize({1, 2, 3, 1, 2, 3});
    CHECK_THROWS_AS((void)torus::disk_tangle_intersections(trefoil, {1, 2, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)torus::disk_tangle_intersections(core::CurveDiagram::circle(0), {}),
                    std::invalid_argument);
}

TEST_CASE("transported disks keep the strand count under single moves") {
    const core::CurveDiagram start = clasp();
    const auto start_pairs = torus::detail::valid_pairs(start);
    REQUIRE(start_pairs.size() == 1);
    CHECK(torus::detail::pair_count(start, start_pairs[0][0], start_pairs[0][1]) == 2);

    int checked = 0;
    for (const moves::MoveInstance& mi : moves::enumerate(start, torus_config(4).kinds)) {
        const moves::MoveResult res = moves::apply(start, mi);
        const auto pr = torus::detail::transport_pair(start, res, start_pairs[0]);
        REQUIRE(torus::detail::pair_valid(res.after, core::faces(res.after), pr[0], pr[1]));
        CHECK(torus::detail::pair_count(res.after, pr[0], pr[1]) == 2);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("triangle slides keep the transported strand count") {
    // Walk two levels of loop insertions first so triangle moves exist.
    int slides = 0;
    std::vector<std::pair<core::CurveDiagram, std::array<core::Dart, 2>>> layer{
        {clasp(), torus::detail::valid_pairs(clasp()).front()}};
    for (int depth = 0; depth < 2; ++depth) {
        std::vector<std::pair<core::CurveDiagram, std::array<core::Dart, 2>>> next;
        for (const auto& [state, pr] : layer) {
            for (const moves::MoveInstance& mi :
                 moves::enumerate(state, {moves::MoveKind::r1b})) {
                const moves::MoveResult res = moves::apply(state, mi);
                next.emplace_back(res.after, torus::detail::transport_pair(state, res, pr));
            }
        }
        layer = std::move(next);
    }
    for (const auto& [state, pr] : layer) {
        const int before = torus::detail::pair_count(state, pr[0], pr[1]);
        CHECK(before == 2);
        for (const moves::MoveInstance& mi : moves::enumerate(state, {moves::MoveKind::r3})) {
            const moves::MoveResult res = moves::apply(state, mi);
            const auto moved = torus::detail::transport_pair(state, res, pr);
            REQUIRE(torus::detail::pair_valid(res.after, core::faces(res.after), moved[0],
                                              moved[1]));
            CHECK(torus::detail::pair_count(res.after, moved[0], moved[1]) == before);
            ++slides;
        }
    }
    CHECK(slides > 0);
}

TEST_CASE("the torus verifier confirms the theorem at cap four") {
    const torus::TorusReport rep =
        torus::verify_torus(clasp(), core::CurveDiagram::circle(1), torus_config(4));
    CHECK(rep.verified());
    CHECK(rep.status == search::StatusKind::exhausted);
    CHECK(rep.min_crossings == 2);
    CHECK(rep.invariant == 2);
    CHECK(rep.states > 1);
    CHECK(rep.left_states == 1);
    CHECK(rep.left_invariant == 0);
    CHECK_FALSE(rep.left_reaches_right);
}

TEST_CASE("the torus verifier confirms the theorem at cap six") {
    const torus::TorusReport four =
        torus::verify_torus(clasp(), core::CurveDiagram::circle(1), torus_config(4));
    const torus::TorusReport six =
        torus::verify_torus(clasp(), core::CurveDiagram::circle(1), torus_config(6));
    CHECK(six.verified());
    CHECK(six.status == search::StatusKind::exhausted);
    CHECK(six.min_crossings == 2);
    CHECK(six.invariant == 2);
    CHECK(six.states > four.states);
    CHECK_FALSE(six.left_reaches_right);
}

TEST_CASE("the torus verifier rejects misuse") {
    search::SearchConfig bad = torus_config(4);
    bad.kinds.push_back(moves::MoveKind::r2a);
    CHECK_THROWS_AS((void)torus::verify_torus(clasp(), core::CurveDiagram::circle(1), bad),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)torus::verify_torus(clasp(), core::CurveDiagram::circle(1), torus_config(1)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        (void)torus::verify_torus(core::CurveDiagram::circle(0), core::CurveDiagram::circle(1),
                                  torus_config(4)),
        std::invalid_argument);
}
