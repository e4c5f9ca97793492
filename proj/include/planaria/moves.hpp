#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "planaria/codec.hpp"
#include "planaria/core.hpp"

namespace planaria::moves {

enum class MoveKind : std::uint8_t { r1a, r1b, r2a, r2b, r3 };

inline constexpr int crossing_delta(MoveKind k) {
    switch (k) {
    case MoveKind::r1a: return -1;
    case MoveKind::r1b: return 1;
    case MoveKind::r2a: return -2;
    case MoveKind::r2b: return 2;
    case MoveKind::r3: return 0;
    }
    return 0;
}

inline std::string kind_name(MoveKind k) {
    switch (k) {
    case MoveKind::r1a: return "1a";
    case MoveKind::r1b: return "1b";
    case MoveKind::r2a: return "2a";
    case MoveKind::r2b: return "2b";
    case MoveKind::r3: return "3";
    }
    return "?";
}

inline MoveKind kind_from_name(const std::string& name) {
    if (name == "1a") return MoveKind::r1a;
    if (name == "1b") return MoveKind::r1b;
    if (name == "2a") return MoveKind::r2a;
    if (name == "2b") return MoveKind::r2b;
    if (name == "3") return MoveKind::r3;
    throw std::runtime_error("unknown move kind '" + name + "'");
}

inline std::vector<MoveKind> parse_kinds(const std::string& csv) {
    std::vector<MoveKind> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(kind_from_name(cur));
            cur.clear();
        }
    };
    for (char ch : csv) {
        if (ch == ',')
            flush();
        else if (ch != ' ')
            cur += ch;
    }
    flush();
    if (out.empty())
        throw std::runtime_error("empty move kind list");
    return out;
}

// Anchor fields by kind: r1a/r2a/r3 use `a` as a face index; r1b uses `a`
// as a dart with flag 0=L / 1=R; r2b uses darts `a`,`b` with flag 0=A / 1=B.
struct MoveInstance {
    MoveKind kind = MoveKind::r1a;
    int a = 0;
    int b = 0;
    std::uint8_t flag = 0;

    friend bool operator==(const MoveInstance& x, const MoveInstance& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.flag == y.flag;
    }
};

struct MoveResult {
    core::CurveDiagram after;
    std::vector<core::Dart> dart_map; // before dart -> after dart, -1 when removed
    std::vector<int> created_ids;
    std::vector<int> removed_ids;
};

namespace detail {

// Deletes the crossings in `gone` (dense indices) and reconnects each strand
// straight through them.
inline MoveResult smooth(const core::CurveDiagram& c, const std::set<int>& gone) {
    MoveResult res;
    const int n = c.n();
    std::vector<int> new_dense(static_cast<std::size_t>(n), -1);
    int kept = 0;
    for (int k = 0; k < n; ++k)
        if (!gone.count(k))
            new_dense[static_cast<std::size_t>(k)] = kept++;
    res.dart_map.assign(static_cast<std::size_t>(c.dart_count()), -1);

    res.after.alpha.assign(static_cast<std::size_t>(4 * kept), -1);
    for (int k = 0; k < n; ++k) {
        if (gone.count(k)) {
            res.removed_ids.push_back(c.ids[static_cast<std::size_t>(k)]);
            continue;
        }
        res.after.ids.push_back(c.ids[static_cast<std::size_t>(k)]);
        res.after.colors.push_back(c.colors[static_cast<std::size_t>(k)]);
        for (int j = 0; j < 4; ++j)
            res.dart_map[static_cast<std::size_t>(4 * k + j)] =
                4 * new_dense[static_cast<std::size_t>(k)] + j;
    }
    res.after.next_id = c.next_id;
    if (kept == 0) {
        res.after.circle_genus = core::genus(c);
        return res;
    }
    for (core::Dart d = 0; d < c.dart_count(); ++d) {
        if (gone.count(core::CurveDiagram::vertex(d)))
            continue;
        core::Dart t = c.alpha[static_cast<std::size_t>(d)];
        while (gone.count(core::CurveDiagram::vertex(t)))
            t = c.alpha[static_cast<std::size_t>(core::CurveDiagram::theta(t))];
        if (t == d)
            throw std::invalid_argument("move would close the strand onto itself");
        res.after.alpha[static_cast<std::size_t>(res.dart_map[static_cast<std::size_t>(d)])] =
            res.dart_map[static_cast<std::size_t>(t)];
    }
    return res;
}

inline const core::Face& face_at(const std::vector<core::Face>& fs, int index) {
    if (index < 0 || index >= static_cast<int>(fs.size()))
        throw std::invalid_argument("face index " + std::to_string(index) + " out of range");
    return fs[static_cast<std::size_t>(index)];
}

} // namespace detail

inline MoveResult apply(const core::CurveDiagram& c, const MoveInstance& m) {
    MoveResult res;
    const int n = c.n();

    if (n == 0 && (m.kind == MoveKind::r1a || m.kind == MoveKind::r2a || m.kind == MoveKind::r3))
        throw std::invalid_argument("no removable structure on a bare circle");
    if (n == 0 && c.circle_genus != 0)
        throw std::invalid_argument("no moves on a bare circle of positive genus");

    switch (m.kind) {
    case MoveKind::r1a: {
        const auto fs = core::faces(c);
        const core::Face& f = detail::face_at(fs, m.a);
        if (f.sides() != 1)
            throw std::invalid_argument("move 1a needs a one-sided face");
        res = detail::smooth(c, {core::CurveDiagram::vertex(f.boundary[0])});
        break;
    }
    case MoveKind::r2a: {
        const auto fs = core::faces(c);
        const core::Face& f = detail::face_at(fs, m.a);
        if (f.sides() != 2)
            throw std::invalid_argument("move 2a needs a two-sided face");
        const int u = core::CurveDiagram::vertex(f.boundary[0]);
        const int w = core::CurveDiagram::vertex(f.boundary[1]);
        if (u == w)
            throw std::invalid_argument("move 2a needs a bigon between distinct crossings");
        res = detail::smooth(c, {u, w});
        break;
    }
    case MoveKind::r1b: {
        res.after = c;
        const int z = 4 * n;
        res.after.alpha.resize(static_cast<std::size_t>(z + 4), -1);
        res.after.ids.push_back(res.after.next_id);
        res.after.colors.push_back(core::Color::gray);
        res.created_ids.push_back(res.after.next_id++);
        res.dart_map.resize(static_cast<std::size_t>(c.dart_count()));
        for (core::Dart d = 0; d < c.dart_count(); ++d)
            res.dart_map[static_cast<std::size_t>(d)] = d;
        auto& alpha = res.after.alpha;
        auto pair = [&](core::Dart x, core::Dart y) {
            alpha[static_cast<std::size_t>(x)] = y;
            alpha[static_cast<std::size_t>(y)] = x;
        };
        if (n == 0) {
            if (m.flag == 0) {
                pair(z + 1, z + 2);
                pair(z + 0, z + 3);
            } else {
                pair(z + 2, z + 3);
                pair(z + 0, z + 1);
            }
            break;
        }
        if (m.a < 0 || m.a >= c.dart_count())
            throw std::invalid_argument("move 1b dart out of range");
        const core::Dart d = m.a;
        const core::Dart fd = c.alpha[static_cast<std::size_t>(d)];
        if (m.flag == 0) {
            pair(d, z + 0);
            pair(z + 2, z + 1);
            pair(z + 3, fd);
        } else {
            pair(d, z + 0);
            pair(z + 2, z + 3);
            pair(z + 1, fd);
        }
        break;
    }
    case MoveKind::r2b: {
        const int x = 4 * n;
        const int y = 4 * n + 4;
        res.after = c;
        res.after.alpha.resize(static_cast<std::size_t>(y + 4), -1);
        for (int i = 0; i < 2; ++i) {
            res.after.ids.push_back(res.after.next_id);
            res.after.colors.push_back(core::Color::gray);
            res.created_ids.push_back(res.after.next_id++);
        }
        res.dart_map.resize(static_cast<std::size_t>(c.dart_count()));
        for (core::Dart d = 0; d < c.dart_count(); ++d)
            res.dart_map[static_cast<std::size_t>(d)] = d;
        auto& alpha = res.after.alpha;
        auto pair = [&](core::Dart p, core::Dart q) {
            alpha[static_cast<std::size_t>(p)] = q;
            alpha[static_cast<std::size_t>(q)] = p;
        };
        // The flag swaps the roles of the two created crossings; both
        // attachments give isomorphic results, kept apart at the label level.
        const int u = m.flag == 0 ? x : y;
        const int v = m.flag == 0 ? y : x;
        if (n == 0) {
            pair(u + 1, v + 1);
            pair(v + 3, v + 0);
            pair(v + 2, u + 0);
            pair(u + 2, u + 3);
            break;
        }
        if (m.a < 0 || m.a >= c.dart_count() || m.b < 0 || m.b >= c.dart_count())
            throw std::invalid_argument("move 2b dart out of range");
        if (m.a == m.b)
            throw std::invalid_argument("move 2b needs two distinct darts");
        const core::Dart d1 = m.a;
        const core::Dart d2 = m.b;
        {
            const auto fs = core::faces(c);
            const std::vector<int> owner = core::face_of_dart(c, fs);
            if (owner[static_cast<std::size_t>(d1)] != owner[static_cast<std::size_t>(d2)])
                throw std::invalid_argument("move 2b darts must border a common face");
        }
        const core::Dart f1 = c.alpha[static_cast<std::size_t>(d1)];
        const core::Dart f2 = c.alpha[static_cast<std::size_t>(d2)];
        if (f1 == d2) {
            pair(d1, u + 3);
            pair(u + 1, v + 1);
            pair(v + 3, v + 0);
            pair(v + 2, u + 0);
            pair(u + 2, d2);
        } else {
            // The two boundary darts run anti-parallel around the face, so
            // the pushed strand meets the target strand head-on.
            pair(d1, u + 0);
            pair(u + 2, v + 2);
            pair(v + 0, f1);
            pair(d2, v + 3);
            pair(v + 1, u + 3);
            pair(u + 1, f2);
        }
        break;
    }
    case MoveKind::r3: {
        const auto fs = core::faces(c);
        const core::Face& f = detail::face_at(fs, m.a);
        if (f.sides() != 3)
            throw std::invalid_argument("move 3 needs a three-sided face");
        const int v0 = core::CurveDiagram::vertex(f.boundary[0]);
        const int v1 = core::CurveDiagram::vertex(f.boundary[1]);
        const int v2 = core::CurveDiagram::vertex(f.boundary[2]);
        if (v0 == v1 || v0 == v2 || v1 == v2)
            throw std::invalid_argument("move 3 needs a triangle on three distinct crossings");
        std::vector<core::Dart> tau(static_cast<std::size_t>(c.dart_count()));
        for (core::Dart d = 0; d < c.dart_count(); ++d)
            tau[static_cast<std::size_t>(d)] = d;
        auto swap_pair = [&](core::Dart d) {
            std::swap(tau[static_cast<std::size_t>(d)],
                      tau[static_cast<std::size_t>(core::CurveDiagram::theta(d))]);
        };
        for (core::Dart t : f.boundary) {
            swap_pair(t);
            swap_pair(c.alpha[static_cast<std::size_t>(t)]);
        }
        res.after = c;
        for (core::Dart d = 0; d < c.dart_count(); ++d)
            res.after.alpha[static_cast<std::size_t>(tau[static_cast<std::size_t>(d)])] =
                tau[static_cast<std::size_t>(c.alpha[static_cast<std::size_t>(d)])];
        // The slide carries each dart to its image under the conjugation, so
        // strands incident to the triangle stay traceable across the move.
        res.dart_map = tau;
        break;
    }
    }
    if (auto err = core::validate(res.after))
        throw std::invalid_argument("move produces invalid diagram: " + *err);
    return res;
}

inline std::vector<MoveInstance> enumerate(const core::CurveDiagram& c,
                                           const std::vector<MoveKind>& kinds) {
    std::vector<MoveInstance> out;
    auto wants = [&](MoveKind k) {
        return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
    };
    if (c.n() == 0) {
        if (c.circle_genus != 0)
            return out;
        if (wants(MoveKind::r1b)) {
            out.push_back({MoveKind::r1b, 0, 0, 0});
            out.push_back({MoveKind::r1b, 0, 0, 1});
        }
        if (wants(MoveKind::r2b)) {
            out.push_back({MoveKind::r2b, 0, 0, 0});
            out.push_back({MoveKind::r2b, 0, 0, 1});
        }
        return out;
    }
    const auto fs = core::faces(c);
    if (wants(MoveKind::r1a)) {
        std::set<int> anchored;
        for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
            const core::Face& f = fs[static_cast<std::size_t>(i)];
            if (f.sides() != 1)
                continue;
            const int v = core::CurveDiagram::vertex(f.boundary[0]);
            if (anchored.insert(v).second)
                out.push_back({MoveKind::r1a, i, 0, 0});
        }
    }
    if (wants(MoveKind::r1b)) {
        for (core::Dart d = 0; d < c.dart_count(); ++d) {
            if (d >= c.alpha[static_cast<std::size_t>(d)])
                continue;
            out.push_back({MoveKind::r1b, d, 0, 0});
            out.push_back({MoveKind::r1b, d, 0, 1});
        }
    }
    if (wants(MoveKind::r2a)) {
        for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
            const core::Face& f = fs[static_cast<std::size_t>(i)];
            if (f.sides() != 2)
                continue;
            if (core::CurveDiagram::vertex(f.boundary[0]) ==
                core::CurveDiagram::vertex(f.boundary[1]))
                continue;
            out.push_back({MoveKind::r2a, i, 0, 0});
        }
    }
    if (wants(MoveKind::r2b)) {
        for (const core::Face& f : fs) {
            for (core::Dart d1 : f.boundary) {
                for (core::Dart d2 : f.boundary) {
                    if (d1 == d2)
                        continue;
                    out.push_back({MoveKind::r2b, d1, d2, 0});
                    out.push_back({MoveKind::r2b, d1, d2, 1});
                }
            }
        }
    }
    if (wants(MoveKind::r3)) {
        for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
            const core::Face& f = fs[static_cast<std::size_t>(i)];
            if (f.sides() != 3)
                continue;
            const int v0 = core::CurveDiagram::vertex(f.boundary[0]);
            const int v1 = core::CurveDiagram::vertex(f.boundary[1]);
            const int v2 = core::CurveDiagram::vertex(f.boundary[2]);
            if (v0 == v1 || v0 == v2 || v1 == v2)
                continue;
            out.push_back({MoveKind::r3, i, 0, 0});
        }
    }
    return out;
}

// Serialized anchors use traversal-rank dart numbers and traversal-order
// face indices so that sequences stay meaningful for isomorphic copies.
inline std::string serialize(const MoveInstance& m, const core::CurveDiagram& c) {
    const auto rank_of = [&]() -> std::vector<int> {
        if (c.n() == 0)
            return {};
        return core::dart_order(c);
    }();
    auto dart_token = [&](int d) {
        if (c.n() == 0)
            return std::string("d0");
        return "d" + std::to_string(rank_of[static_cast<std::size_t>(d)]);
    };
    switch (m.kind) {
    case MoveKind::r1a: return "1a:f" + std::to_string(m.a);
    case MoveKind::r2a: return "2a:f" + std::to_string(m.a);
    case MoveKind::r3: return "3:f" + std::to_string(m.a);
    case MoveKind::r1b: return "1b:" + dart_token(m.a) + (m.flag == 0 ? ":L" : ":R");
    case MoveKind::r2b:
        return "2b:" + dart_token(m.a) + ":" + dart_token(m.b) + (m.flag == 0 ? ":A" : ":B");
    }
    return {};
}

inline MoveInstance parse_move(const std::string& text, const core::CurveDiagram& c) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.empty())
        throw std::runtime_error("empty move");
    auto numeric = [](const std::string& tok, char prefix) {
        if (tok.size() < 2 || tok[0] != prefix)
            throw std::runtime_error("bad move anchor '" + tok + "'");
        return std::stoi(tok.substr(1));
    };
    std::vector<core::Dart> dart_of_rank;
    if (c.n() > 0) {
        const auto ranks = core::dart_order(c);
        dart_of_rank.assign(ranks.size(), -1);
        for (core::Dart d = 0; d < c.dart_count(); ++d)
            dart_of_rank[static_cast<std::size_t>(ranks[static_cast<std::size_t>(d)])] = d;
    }
    auto dart_at = [&](const std::string& tok) {
        const int rank = numeric(tok, 'd');
        if (c.n() == 0) {
            if (rank != 0)
                throw std::runtime_error("bad circle dart '" + tok + "'");
            return 0;
        }
        if (rank < 0 || rank >= static_cast<int>(dart_of_rank.size()))
            throw std::runtime_error("dart rank out of range '" + tok + "'");
        return dart_of_rank[static_cast<std::size_t>(rank)];
    };
    const MoveKind kind = kind_from_name(parts[0]);
    MoveInstance m;
    m.kind = kind;
    switch (kind) {
    case MoveKind::r1a:
    case MoveKind::r2a:
    case MoveKind::r3:
        if (parts.size() != 2)
            throw std::runtime_error("malformed move '" + text + "'");
        m.a = numeric(parts[1], 'f');
        break;
    case MoveKind::r1b:
        if (parts.size() != 3 || (parts[2] != "L" && parts[2] != "R"))
            throw std::runtime_error("malformed move '" + text + "'");
        m.a = dart_at(parts[1]);
        m.flag = parts[2] == "L" ? 0 : 1;
        break;
    case MoveKind::r2b:
        if (parts.size() != 4 || (parts[3] != "A" && parts[3] != "B"))
            throw std::runtime_error("malformed move '" + text + "'");
        m.a = dart_at(parts[1]);
        m.b = dart_at(parts[2]);
        m.flag = parts[3] == "A" ? 0 : 1;
        break;
    }
    return m;
}

// Instance on res.after that undoes m; the composite is the identity up to
// isomorphism (exactly the identity for move 3).
inline MoveInstance inverse(const MoveInstance& m, const core::CurveDiagram& before,
                            const MoveResult& res) {
    const auto face_index_of_dart = [](const core::CurveDiagram& c, core::Dart d) {
        const auto fs = core::faces(c);
        for (int i = 0; i < static_cast<int>(fs.size()); ++i)
            for (core::Dart b : fs[static_cast<std::size_t>(i)].boundary)
                if (b == d)
                    return i;
        throw std::logic_error("dart missing from face decomposition");
    };
    switch (m.kind) {
    case MoveKind::r1b: {
        const int z = 4 * (res.after.n() - 1);
        return {MoveKind::r1a, face_index_of_dart(res.after, z + (m.flag == 0 ? 2 : 3)), 0, 0};
    }
    case MoveKind::r2b: {
        const int u = m.flag == 0 ? 4 * (res.after.n() - 2) : 4 * (res.after.n() - 1);
        const bool self_or_circle =
            before.n() == 0 || before.alpha[static_cast<std::size_t>(m.a)] == m.b;
        const int lens = self_or_circle ? u + 1 : u + 3;
        return {MoveKind::r2a, face_index_of_dart(res.after, lens), 0, 0};
    }
    case MoveKind::r3: {
        const core::Dart anchor =
            core::faces(before)[static_cast<std::size_t>(m.a)].boundary[0];
        return {MoveKind::r3, face_index_of_dart(res.after, anchor), 0, 0};
    }
    case MoveKind::r1a:
    case MoveKind::r2a: {
        const auto before_code = codec::canonical(before);
        std::vector<core::Dart> stubs;
        if (res.after.n() > 0) {
            const auto fs = core::faces(before);
            const core::Face& f = fs[static_cast<std::size_t>(m.a)];
            std::set<core::Dart> inner;
            for (core::Dart d : f.boundary) {
                inner.insert(d);
                inner.insert(before.alpha[static_cast<std::size_t>(d)]);
            }
            std::set<int> crossings;
            for (core::Dart d : f.boundary)
                crossings.insert(core::CurveDiagram::vertex(d));
            for (int v : crossings)
                for (int j = 0; j < 4; ++j)
                    if (!inner.count(4 * v + j)) {
                        core::Dart partner = before.alpha[static_cast<std::size_t>(4 * v + j)];
                        while (crossings.count(core::CurveDiagram::vertex(partner)))
                            partner = before.alpha[static_cast<std::size_t>(
                                core::CurveDiagram::theta(partner))];
                        const core::Dart mapped = res.dart_map[static_cast<std::size_t>(partner)];
                        if (mapped >= 0)
                            stubs.push_back(mapped);
                    }
            std::sort(stubs.begin(), stubs.end());
            stubs.erase(std::unique(stubs.begin(), stubs.end()), stubs.end());
        }
        std::vector<MoveInstance> candidates;
        if (m.kind == MoveKind::r1a) {
            if (res.after.n() == 0) {
                candidates.push_back({MoveKind::r1b, 0, 0, 0});
                candidates.push_back({MoveKind::r1b, 0, 0, 1});
            } else {
                for (core::Dart d : stubs)
                    for (std::uint8_t side = 0; side < 2; ++side)
                        candidates.push_back({MoveKind::r1b, d, 0, side});
            }
        } else {
            if (res.after.n() == 0) {
                candidates.push_back({MoveKind::r2b, 0, 0, 0});
                candidates.push_back({MoveKind::r2b, 0, 0, 1});
            } else {
                for (core::Dart d1 : stubs)
                    for (core::Dart d2 : stubs)
                        for (std::uint8_t align = 0; align < 2; ++align)
                            if (d1 != d2)
                                candidates.push_back({MoveKind::r2b, d1, d2, align});
            }
        }
        for (const MoveInstance& cand : candidates) {
            try {
                if (codec::canonical(apply(res.after, cand).after) == before_code)
                    return cand;
            } catch (const std::invalid_argument&) {
            }
        }
        throw std::logic_error("no inverse instance reproduces the source diagram");
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace planaria::moves
