#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"
#include "planaria/search.hpp"

namespace planaria::transforms {

// The double bigon tangle: three crossings in a vertical twist. Corner
// slots follow the dart convention (0 NW, 1 SW, 2 SE, 3 NE), so the two
// interior faces {a2,b0} and {b2,c0} are the bigons and a strand entering
// at one top corner leaves at the diagonally opposite bottom corner, the
// same boundary connectivity as the single crossing it replaces.
inline core::CurveDiagram expand_double_bigon(const core::CurveDiagram& c, int crossing) {
    const int k = c.dense_of(crossing);
    const int n = c.n();

    core::CurveDiagram out;
    std::vector<int> shifted(n, -1);
    int w = 0;
    for (int i = 0; i < n; ++i) {
        if (i == k)
            continue;
        shifted[i] = w++;
        out.ids.push_back(c.ids[i]);
        out.colors.push_back(c.colors[i]);
    }
    const int a = w;
    const int b = w + 1;
    const int cc = w + 2;
    for (int j = 0; j < 3; ++j) {
        out.ids.push_back(c.next_id + j);
        out.colors.push_back(core::Color::black);
    }
    out.next_id = c.next_id + 3;
    out.alpha.assign(static_cast<std::size_t>(4 * (n + 2)), -1);

    const auto pair = [&](core::Dart x, core::Dart y) {
        out.alpha[x] = y;
        out.alpha[y] = x;
    };
    pair(4 * a + 1, 4 * b + 0);
    pair(4 * a + 2, 4 * b + 3);
    pair(4 * b + 1, 4 * cc + 0);
    pair(4 * b + 2, 4 * cc + 3);

    // The replaced crossing's corners map to the free gadget corners.
    const std::array<core::Dart, 4> stub = {4 * a + 0, 4 * cc + 1, 4 * cc + 2, 4 * a + 3};
    const auto remap = [&](core::Dart d) {
        return core::CurveDiagram::vertex(d) == k ? stub[d & 3]
                                                  : 4 * shifted[core::CurveDiagram::vertex(d)] + (d & 3);
    };
    for (core::Dart d = 0; d < c.dart_count(); ++d)
        out.alpha[remap(d)] = remap(c.alpha[d]);
    return out;
}

// Expands the listed crossings in ascending id order; the gadget ids for
// each site are reported through `gadgets` when requested.
inline core::CurveDiagram expand_many(const core::CurveDiagram& c, std::vector<int> crossings,
                                      std::map<int, std::array<int, 3>>* gadgets = nullptr) {
    std::sort(crossings.begin(), crossings.end());
    if (std::adjacent_find(crossings.begin(), crossings.end()) != crossings.end())
        throw std::invalid_argument("expand_many: duplicate crossing id");
    core::CurveDiagram cur = c;
    for (const int id : crossings) {
        const int base = cur.next_id;
        cur = expand_double_bigon(cur, id);
        if (gadgets != nullptr)
            (*gadgets)[id] = {base, base + 1, base + 2};
    }
    return cur;
}

inline core::CurveDiagram expand_all(const core::CurveDiagram& c) {
    return expand_many(c, c.ids);
}

namespace detail {

// Structural isomorphism between connected diagrams of equal size: try each
// image for dart 0 and propagate through sigma and alpha. Colors and labels
// are ignored; any consistent dart bijection witnesses the isomorphism.
inline std::optional<std::vector<core::Dart>> map_iso(const core::CurveDiagram& from,
                                                      const core::CurveDiagram& to) {
    const int m = from.dart_count();
    if (m != to.dart_count())
        return std::nullopt;
    if (m == 0) {
        if (from.circle_genus != to.circle_genus)
            return std::nullopt;
        return std::vector<core::Dart>{};
    }
    for (core::Dart pin = 0; pin < m; ++pin) {
        std::vector<core::Dart> h(static_cast<std::size_t>(m), -1);
        std::vector<bool> hit(static_cast<std::size_t>(m), false);
        h[0] = pin;
        std::vector<core::Dart> stack = {0};
        bool ok = true;
        while (ok && !stack.empty()) {
            const core::Dart d = stack.back();
            stack.pop_back();
            const std::array<core::Dart, 2> src = {core::CurveDiagram::sigma(d), from.alpha[d]};
            const std::array<core::Dart, 2> dst = {core::CurveDiagram::sigma(h[d]), to.alpha[h[d]]};
            for (int i = 0; i < 2; ++i) {
                if (h[src[i]] == -1) {
                    h[src[i]] = dst[i];
                    stack.push_back(src[i]);
                } else if (h[src[i]] != dst[i]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok)
            continue;
        std::fill(hit.begin(), hit.end(), false);
        for (const core::Dart e : h) {
            if (e < 0 || hit[e]) {
                ok = false;
                break;
            }
            hit[e] = true;
        }
        if (ok)
            return h;
    }
    return std::nullopt;
}

// Breadth-first search through {1a, 1b, 3} move applications until a state
// matches the target canonical code. Deterministic: FIFO over enumeration
// order, first hit wins.
inline std::optional<std::vector<moves::MoveInstance>> steer_to(const core::CurveDiagram& start,
                                                                const std::string& target,
                                                                int max_crossings,
                                                                long long max_states = 200000) {
    static const std::vector<moves::MoveKind> kinds = {moves::MoveKind::r1a, moves::MoveKind::r1b,
                                                       moves::MoveKind::r3};
    if (codec::canonical(start).bytes == target)
        return std::vector<moves::MoveInstance>{};
    struct Node {
        core::CurveDiagram state;
        long long parent;
        moves::MoveInstance via;
    };
    std::vector<Node> nodes;
    nodes.push_back({start, -1, {}});
    std::map<std::string, long long> seen;
    seen.emplace(codec::canonical(start).bytes, 0);
    std::deque<long long> queue = {0};
    while (!queue.empty()) {
        const long long at = queue.front();
        queue.pop_front();
        const core::CurveDiagram cur = nodes[at].state;
        for (const moves::MoveInstance& m : moves::enumerate(cur, kinds)) {
            moves::MoveResult res = moves::apply(cur, m);
            if (res.after.n() > max_crossings)
                continue;
            const std::string key = codec::canonical(res.after).bytes;
            if (seen.count(key) != 0)
                continue;
            const long long idx = static_cast<long long>(nodes.size());
            seen.emplace(key, idx);
            nodes.push_back({std::move(res.after), at, m});
            if (key == target) {
                std::vector<moves::MoveInstance> path;
                for (long long i = idx; i > 0; i = nodes[i].parent)
                    path.push_back(nodes[i].via);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (idx >= max_states)
                return std::nullopt;
            queue.push_back(idx);
        }
    }
    return std::nullopt;
}

} // namespace detail

struct Lemma6Sequence {
    core::CurveDiagram start;
    std::vector<moves::MoveInstance> moves;
};

// The double bigon closed by a removal loop, with the loop nested on one
// end or the other. The two drawings are distinct curves, and they are
// connected without ever using a move 2, so a cascade prepared for one
// nesting serves the other as well.
inline Lemma6Sequence lemma6_sequence() {
    const std::optional<core::CurveDiagram> left = codec::realize({1, 2, 3, 3, 2, 1});
    if (!left.has_value())
        throw std::logic_error("lemma6_sequence: closure word did not realize");
    const core::CurveDiagram right = expand_double_bigon(*codec::realize({1, 1}), 1);
    std::optional<std::vector<moves::MoveInstance>> seq =
        detail::steer_to(*left, codec::canonical(right).bytes, 5);
    if (!seq.has_value())
        throw std::logic_error("lemma6_sequence: no connecting sequence within bounds");
    return {*left, std::move(*seq)};
}

namespace detail {

// Dart of the expansion that corresponds to dart `d` of the source: darts
// at surviving crossings keep their corner, darts at an expanded crossing
// land on the matching gadget stub.
inline core::Dart expanded_dart(const core::CurveDiagram& src, core::Dart d,
                                const core::CurveDiagram& ex,
                                const std::map<int, std::array<int, 3>>& gadgets) {
    const int id = src.id_of(core::CurveDiagram::vertex(d));
    const int j = d & 3;
    const auto site = gadgets.find(id);
    if (site == gadgets.end())
        return 4 * ex.dense_of(id) + j;
    const int top = ex.dense_of(site->second[0]);
    const int bottom = ex.dense_of(site->second[2]);
    const std::array<core::Dart, 4> stub = {4 * top + 0, 4 * bottom + 1, 4 * bottom + 2,
                                            4 * top + 3};
    return stub[j];
}

} // namespace detail

// Rewrites a {1a, 1b, 3} simplifying sequence for L into one for R, where R
// is L with the given crossings expanded into double bigons. Moves away
// from the expanded sites carry over one for one; a move that consumes or
// slides across a site is replaced by a bounded search toward the state
// that re-expanding the rest of L prescribes.
inline std::vector<moves::MoveInstance> transport_sequence(
    const std::vector<moves::MoveInstance>& seq_l, const core::CurveDiagram& l,
    const core::CurveDiagram& r, const std::set<int>& expanded) {
    for (const int id : expanded)
        if (std::find(l.ids.begin(), l.ids.end(), id) == l.ids.end())
            throw std::invalid_argument("transport_sequence: expanded crossing " +
                                        std::to_string(id) + " is not in the source");

    std::set<int> live = expanded;
    const auto expansion = [&](const core::CurveDiagram& base,
                               std::map<int, std::array<int, 3>>* gadgets) {
        return expand_many(base, std::vector<int>(live.begin(), live.end()), gadgets);
    };

    {
        std::map<int, std::array<int, 3>> gadgets;
        const core::CurveDiagram fresh = expansion(l, &gadgets);
        if (fresh.alpha != r.alpha || fresh.ids != r.ids || fresh.colors != r.colors ||
            fresh.circle_genus != r.circle_genus)
            throw std::invalid_argument("transport_sequence: target is not the expansion of the source");
    }

    core::CurveDiagram cur_l = l;
    core::CurveDiagram cur_r = r;
    std::vector<moves::MoveInstance> out;

    for (std::size_t i = 0; i < seq_l.size(); ++i) {
        const moves::MoveInstance& m = seq_l[i];
        const auto fail = [&](const std::string& why) {
            throw std::invalid_argument("transport: step " + std::to_string(i) + ": " + why);
        };
        if (m.kind == moves::MoveKind::r2a || m.kind == moves::MoveKind::r2b)
            fail("only kinds 1a, 1b, 3 are transportable");

        moves::MoveResult res_l;
        try {
            res_l = moves::apply(cur_l, m);
        } catch (const std::exception& e) {
            fail(e.what());
        }

        bool in_box = false;
        if (m.kind == moves::MoveKind::r1a) {
            in_box = live.count(res_l.removed_ids.at(0)) != 0;
        } else if (m.kind == moves::MoveKind::r3) {
            for (const core::Dart d : core::faces(cur_l).at(static_cast<std::size_t>(m.a)).boundary)
                if (live.count(cur_l.id_of(core::CurveDiagram::vertex(d))) != 0)
                    in_box = true;
        }

        if (!in_box && cur_l.n() == 0) {
            out.push_back(m);
            cur_r = moves::apply(cur_r, m).after;
        } else if (!in_box) {
            std::map<int, std::array<int, 3>> gadgets;
            const core::CurveDiagram ex = expansion(cur_l, &gadgets);
            const std::optional<std::vector<core::Dart>> h = detail::map_iso(ex, cur_r);
            if (!h.has_value())
                throw std::logic_error("transport: lost the correspondence with the target");
            moves::MoveInstance mapped = m;
            if (m.kind == moves::MoveKind::r1b) {
                mapped.a = (*h)[detail::expanded_dart(cur_l, m.a, ex, gadgets)];
            } else {
                const core::Dart anchor =
                    core::faces(cur_l).at(static_cast<std::size_t>(m.a)).boundary.front();
                const core::Dart image = (*h)[detail::expanded_dart(cur_l, anchor, ex, gadgets)];
                mapped.a = core::face_of_dart(cur_r, core::faces(cur_r)).at(image);
            }
            out.push_back(mapped);
            cur_r = moves::apply(cur_r, mapped).after;
        } else {
            if (m.kind == moves::MoveKind::r1a)
                live.erase(res_l.removed_ids.at(0));
            const std::string target = codec::canonical(expansion(res_l.after, nullptr)).bytes;
            const std::optional<std::vector<moves::MoveInstance>> steps =
                detail::steer_to(cur_r, target, cur_r.n() + 3);
            if (!steps.has_value())
                fail("the expanded site is in a configuration the rewrite does not cover");
            for (const moves::MoveInstance& s : *steps) {
                out.push_back(s);
                cur_r = moves::apply(cur_r, s).after;
            }
        }

        cur_l = res_l.after;
        if (codec::canonical(expansion(cur_l, nullptr)).bytes != codec::canonical(cur_r).bytes)
            throw std::logic_error("transport: the rewritten sequence drifted from the source");
    }

    if (cur_l.n() != 0)
        throw std::invalid_argument("transport_sequence: the sequence does not simplify the source");
    return out;
}

} // namespace planaria::transforms
