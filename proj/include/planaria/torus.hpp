#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"
#include "planaria/search.hpp"

namespace planaria::torus {

namespace detail {

inline core::Dart edge_rep(const core::CurveDiagram& c, core::Dart d) {
    return std::min(d, c.alpha[static_cast<std::size_t>(d)]);
}

// True when cutting the two excursion edges leaves the crossing graph
// connected, so the rest of the diagram can thicken to a disk.
inline bool connected_without(const core::CurveDiagram& c, core::Dart e, core::Dart f) {
    const int n = c.n();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int k = queue.front();
        queue.pop_front();
        for (int j = 0; j < 4; ++j) {
            const core::Dart d = 4 * k + j;
            if (edge_rep(c, d) == e || edge_rep(c, d) == f)
                continue;
            const int other = core::CurveDiagram::vertex(c.alpha[static_cast<std::size_t>(d)]);
            if (!seen[static_cast<std::size_t>(other)]) {
                seen[static_cast<std::size_t>(other)] = 1;
                ++reached;
                queue.push_back(other);
            }
        }
    }
    return reached == n;
}

inline bool pair_valid(const core::CurveDiagram& c, const std::vector<core::Face>& fs,
                       core::Dart e, core::Dart f) {
    std::set<int> touched;
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (const core::Dart d : fs[i].boundary)
            if (edge_rep(c, d) == e || edge_rep(c, d) == f)
                touched.insert(static_cast<int>(i));
    return touched.size() == 1 && connected_without(c, e, f);
}

// Excursion pairs: two edges whose four sides all lie on one face, leaving a
// disk that holds every crossing and a single genus-carrying complement.
inline std::vector<std::array<core::Dart, 2>> valid_pairs(const core::CurveDiagram& c) {
    const std::vector<core::Face> fs = core::faces(c);
    std::set<core::Dart> reps;
    for (core::Dart d = 0; d < c.dart_count(); ++d)
        reps.insert(edge_rep(c, d));
    std::vector<std::array<core::Dart, 2>> out;
    for (auto i = reps.begin(); i != reps.end(); ++i)
        for (auto j = std::next(i); j != reps.end(); ++j)
            if (pair_valid(c, fs, *i, *j))
                out.push_back({*i, *j});
    return out;
}

// Cuts the closed traversal at the two excursion edges and counts crossings
// whose two passages fall on different strands.
inline int pair_count(const core::CurveDiagram& c, core::Dart e, core::Dart f) {
    const std::vector<core::Dart> walk = core::traversal_sequence(c);
    std::size_t t1 = walk.size();
    std::size_t t2 = walk.size();
    for (std::size_t t = 0; t < walk.size(); ++t) {
        const core::Dart rep = edge_rep(c, walk[t]);
        if (rep != e && rep != f)
            continue;
        (t1 == walk.size() ? t1 : t2) = t;
    }
    if (t2 == walk.size())
        throw std::logic_error("pair_count: the excursion edges are not on the curve");
    std::vector<int> passage_strand(static_cast<std::size_t>(c.dart_count()), -1);
    for (std::size_t t = 0; t < walk.size(); ++t) {
        const core::Dart arrival = c.alpha[static_cast<std::size_t>(walk[t])];
        passage_strand[static_cast<std::size_t>(arrival & ~2)] = (t > t1 && t <= t2) ? 0 : 1;
    }
    int count = 0;
    for (int k = 0; k < c.n(); ++k)
        count += passage_strand[static_cast<std::size_t>(4 * k)] !=
                 passage_strand[static_cast<std::size_t>(4 * k + 1)];
    return count;
}

// Carries an excursion edge through a move. An edge that survives re-pairing
// intact keeps its darts; a split edge keeps the half at its smaller dart
// (either half separates the strands identically); a merged edge follows its
// surviving dart.
inline core::Dart transport_edge(const core::CurveDiagram& before,
                                 const moves::MoveResult& res, core::Dart rep) {
    const core::Dart a = rep;
    const core::Dart b = before.alpha[static_cast<std::size_t>(rep)];
    const core::Dart ma = res.dart_map[static_cast<std::size_t>(a)];
    const core::Dart mb = res.dart_map[static_cast<std::size_t>(b)];
    if (ma >= 0)
        return edge_rep(res.after, ma);
    if (mb >= 0)
        return edge_rep(res.after, mb);
    throw std::logic_error("transport_edge: the excursion edge collapsed");
}

inline std::array<core::Dart, 2> transport_pair(const core::CurveDiagram& before,
                                                const moves::MoveResult& res,
                                                const std::array<core::Dart, 2>& pair) {
    std::array<core::Dart, 2> out{transport_edge(before, res, pair[0]),
                                  transport_edge(before, res, pair[1])};
    if (out[0] > out[1])
        std::swap(out[0], out[1]);
    if (out[0] == out[1])
        throw std::logic_error("transport_edge: the excursion edges merged");
    return out;
}

} // namespace detail

// Number of double points between the two distinct strands of the tangle
// inside the disk. The marking lists the crossings inside the disk; since
// the complement is a single crossing-free region, it must cover all of
// them. The value is well defined when every admissible choice of excursion
// edges agrees; diagrams reached by moves carry their disk along instead
// (see verify_torus).
inline int disk_tangle_intersections(const core::CurveDiagram& c, const std::set<int>& marking) {
    for (const int id : marking)
        (void)c.dense_of(id);
    if (core::genus(c) != 1)
        throw std::invalid_argument("disk_tangle_intersections: the diagram is not genus one");
    if (c.n() == 0)
        return 0;
    if (static_cast<int>(marking.size()) != c.n())
        throw std::invalid_argument(
            "disk_tangle_intersections: the disk must contain every crossing");
    const auto pairs = detail::valid_pairs(c);
    if (pairs.empty())
        throw std::invalid_argument(
            "disk_tangle_intersections: the complement is not a single face");
    int value = -1;
    for (const auto& pr : pairs) {
        const int count = detail::pair_count(c, pr[0], pr[1]);
        if (value < 0)
            value = count;
        else if (count != value)
            throw std::invalid_argument(
                "disk_tangle_intersections: the disk placement is ambiguous");
    }
    return value;
}

struct TorusReport {
    search::StatusKind status = search::StatusKind::exhausted;
    int cap = 0;
    int min_crossings = 0;
    long long states = 0;
    long long edges = 0;
    int invariant = -1;
    long long left_states = 0;
    int left_invariant = -1;
    bool left_reaches_right = false;
    std::vector<std::string> violations;

    [[nodiscard]] bool verified() const { return violations.empty(); }
};

// Explores the right-hand curve under {R1a,R1b,R3}, transporting the disk's
// excursion edges along every discovery edge, and checks that no state is
// embedded and the strand invariant never moves; then explores the left-hand
// curve and checks it stays clear of the right-hand class.
inline TorusReport verify_torus(const core::CurveDiagram& right, const core::CurveDiagram& left,
                                const search::SearchConfig& cfg) {
    for (const moves::MoveKind k : cfg.kinds)
        if (k == moves::MoveKind::r2a || k == moves::MoveKind::r2b)
            throw std::invalid_argument("verify_torus: only kinds 1a, 1b, 3 are admissible");
    if (core::genus(right) != 1 || core::genus(left) != 1)
        throw std::invalid_argument("verify_torus: the curves must sit on the torus");

    const auto start_pairs = detail::valid_pairs(right);
    if (start_pairs.size() != 1)
        throw std::invalid_argument("verify_torus: the right-hand disk placement is ambiguous");

    TorusReport rep;
    rep.cap = cfg.max_crossings;

    search::SearchConfig run = cfg;
    run.exhaustive = true;

    std::vector<std::array<core::Dart, 2>> pair_of{start_pairs.front()};
    const auto watch = [&rep, &pair_of](long long idx, const core::CurveDiagram& s) {
        if (core::genus(s) != 1) {
            rep.violations.push_back("a visited state left the torus");
            return;
        }
        if (s.n() == 0) {
            rep.violations.push_back("reached an embedded state");
            return;
        }
        try {
            const auto& pr = pair_of.at(static_cast<std::size_t>(idx));
            if (!detail::pair_valid(s, core::faces(s), pr[0], pr[1]))
                throw std::logic_error("the transported disk stopped bounding");
            const int value = detail::pair_count(s, pr[0], pr[1]);
            if (rep.invariant < 0)
                rep.invariant = value;
            else if (value != rep.invariant)
                rep.violations.push_back("the strand invariant drifted from " +
                                         std::to_string(rep.invariant) + " to " +
                                         std::to_string(value));
        } catch (const std::exception& e) {
            rep.violations.push_back(e.what());
        }
    };

    const search::SearchResult res = search::explore(
        right, run, [&](long long idx, const core::CurveDiagram& s, int) { watch(idx, s); },
        [&](const search::EdgeEvent& ev) {
            if (!ev.fresh || ev.child < 0)
                return;
            if (static_cast<long long>(pair_of.size()) != ev.child)
                throw std::logic_error("verify_torus: discovery edges arrived out of order");
            pair_of.push_back(detail::transport_pair(
                ev.before, ev.result, pair_of.at(static_cast<std::size_t>(ev.parent))));
        });
    rep.status = res.status;
    rep.min_crossings = res.min_crossings;
    rep.states = res.visited;
    rep.edges = res.edges;

    const std::string target = codec::canonical(right, cfg.mirror_quotient).bytes;
    const search::SearchResult lres =
        search::explore(left, run, [&](long long, const core::CurveDiagram& s, int) {
            if (codec::canonical(s, cfg.mirror_quotient).bytes == target)
                rep.left_reaches_right = true;
        });
    rep.left_states = lres.visited;
    rep.left_invariant =
        disk_tangle_intersections(left, std::set<int>(left.ids.begin(), left.ids.end()));
    if (rep.left_reaches_right)
        rep.violations.push_back("the embedded curve reaches the right-hand class");
    return rep;
}

} // namespace planaria::torus
