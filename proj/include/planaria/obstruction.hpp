#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planaria/core.hpp"
#include "planaria/moves.hpp"

namespace planaria::obstruction {

// A run is a maximal stretch of consecutive traversal visits that stay in
// one box. `first` indexes into core::curve_order; runs may wrap.
struct StrandRun {
    int first = -1;
    int length = 0;

    [[nodiscard]] bool present() const { return length > 0; }

    friend bool operator==(const StrandRun& x, const StrandRun& y) {
        return x.first == y.first && x.length == y.length;
    }
};

struct BoxStrands {
    StrandRun s1; // begins and ends on the left side of the box
    StrandRun s2; // begins and ends on the right side
    StrandRun s3; // one endpoint per side; may carry no crossings at all
};

struct BoxCertificate {
    std::array<std::vector<int>, 8> boxes; // crossing ids, ascending
    std::array<BoxStrands, 8> strands;
    std::vector<core::Dart> connectors; // departure darts of the white arcs
    std::array<int, 2> stars{-1, -1};   // face indices, ascending
};

struct Violation {
    std::string property;
    std::string location;
};

// Empty means the check passed.
using Check = std::optional<Violation>;

struct TransportResult {
    std::optional<BoxCertificate> cert;
    std::string failure; // set exactly when `cert` is empty
};

namespace detail {

struct Run {
    int first = 0;
    int length = 0;
    int box = -1;
};

inline int wrap(int v, int m) { return ((v % m) + m) % m; }

// Box of every traversal visit, or the offending crossing id when the box
// partition and the diagram disagree.
inline std::optional<std::vector<int>> visit_boxes(const core::CurveDiagram& c,
                                                   const std::array<std::vector<int>, 8>& boxes,
                                                   int* bad_id) {
    std::map<int, int> of;
    for (int b = 0; b < 8; ++b)
        for (int id : boxes[b])
            if (!of.emplace(id, b).second) {
                if (bad_id != nullptr)
                    *bad_id = id;
                return std::nullopt;
            }
    const std::vector<int> order = core::curve_order(c);
    std::set<int> seen;
    std::vector<int> vb(order.size(), -1);
    for (std::size_t v = 0; v < order.size(); ++v) {
        const auto it = of.find(order[v]);
        if (it == of.end()) {
            if (bad_id != nullptr)
                *bad_id = order[v];
            return std::nullopt;
        }
        vb[v] = it->second;
        seen.insert(order[v]);
    }
    if (seen.size() != of.size()) {
        for (const auto& [id, b] : of)
            if (seen.count(id) == 0 && bad_id != nullptr) {
                *bad_id = id;
                break;
            }
        return std::nullopt;
    }
    return vb;
}

inline std::vector<Run> runs_of(const std::vector<int>& vb) {
    const int m = static_cast<int>(vb.size());
    int start = -1;
    for (int v = 0; v < m; ++v)
        if (vb[static_cast<std::size_t>(v)] != vb[static_cast<std::size_t>(wrap(v - 1, m))]) {
            start = v;
            break;
        }
    if (start < 0)
        return {Run{0, m, vb.empty() ? -1 : vb[0]}};
    std::vector<Run> runs;
    int v = start;
    do {
        Run r{v, 0, vb[static_cast<std::size_t>(v)]};
        while (r.length < m && vb[static_cast<std::size_t>(wrap(v + r.length, m))] == r.box)
            ++r.length;
        runs.push_back(r);
        v = wrap(v + r.length, m);
    } while (v != start);
    return runs;
}

inline std::vector<int> run_of_visit(const std::vector<Run>& runs, int m) {
    std::vector<int> of(static_cast<std::size_t>(m), -1);
    for (int r = 0; r < static_cast<int>(runs.size()); ++r)
        for (int j = 0; j < runs[static_cast<std::size_t>(r)].length; ++j)
            of[static_cast<std::size_t>(wrap(runs[static_cast<std::size_t>(r)].first + j, m))] = r;
    return of;
}

struct Parse {
    std::array<BoxStrands, 8> strands;
    std::vector<int> slot_of_run; // 0..23 in grammar order
};

// One grammar pass: triples (strand 1 of box k+1, strand 2 of box k,
// optional strand 3 of box k+1) with k increasing cyclically. `order`
// lists run indices in the traversal direction being tried.
inline std::optional<Parse> parse_attempt(const std::vector<Run>& runs, const std::vector<int>& order) {
    const int m = static_cast<int>(runs.size());
    Parse p;
    p.slot_of_run.assign(static_cast<std::size_t>(m), -1);
    const int k0 = wrap(runs[static_cast<std::size_t>(order[0])].box - 1, 8);
    int idx = 0;
    auto run_at = [&](int i) -> const Run& { return runs[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]; };
    for (int t = 0; t < 8; ++t) {
        const int k = wrap(k0 + t, 8);
        const int up = wrap(k + 1, 8);
        if (idx >= m || run_at(idx).box != up)
            return std::nullopt;
        p.strands[static_cast<std::size_t>(up)].s1 = {run_at(idx).first, run_at(idx).length};
        p.slot_of_run[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])] = 3 * t;
        ++idx;
        if (idx >= m || run_at(idx).box != k)
            return std::nullopt;
        p.strands[static_cast<std::size_t>(k)].s2 = {run_at(idx).first, run_at(idx).length};
        p.slot_of_run[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])] = 3 * t + 1;
        ++idx;
        if (idx < m && run_at(idx).box == up) {
            p.strands[static_cast<std::size_t>(up)].s3 = {run_at(idx).first, run_at(idx).length};
            p.slot_of_run[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])] = 3 * t + 2;
            ++idx;
        }
    }
    if (idx != m)
        return std::nullopt;
    return p;
}

inline bool inside(const StrandRun& s, int visit, int m) {
    return s.present() && wrap(visit - s.first, m) < s.length;
}

// Crossings whose two passages split across the box's strands 1 and 2.
inline int clasp_count(const core::CurveDiagram& c, const BoxStrands& bs) {
    const std::vector<int> order = core::curve_order(c);
    const int m = static_cast<int>(order.size());
    std::map<int, std::vector<int>> where;
    for (int v = 0; v < m; ++v)
        where[order[static_cast<std::size_t>(v)]].push_back(v);
    int count = 0;
    for (const auto& [id, vs] : where) {
        (void)id;
        const bool a1 = inside(bs.s1, vs[0], m);
        const bool a2 = inside(bs.s2, vs[0], m);
        const bool b1 = inside(bs.s1, vs[1], m);
        const bool b2 = inside(bs.s2, vs[1], m);
        if ((a1 && b2) || (a2 && b1))
            ++count;
    }
    return count;
}

inline bool p3_holds(const core::CurveDiagram& c, const std::array<BoxStrands, 8>& strands) {
    for (int b = 0; b < 8; ++b)
        if (clasp_count(c, strands[static_cast<std::size_t>(b)]) != 2)
            return false;
    return true;
}

// Net necklace winding of each face boundary; the two starred polygons are
// the only faces that circle the whole necklace.
inline std::optional<std::array<int, 2>> derive_stars(const core::CurveDiagram& c,
                                                      const std::vector<Run>& runs,
                                                      const std::vector<int>& slot_of_run) {
    const std::vector<core::Dart> trav = core::traversal_sequence(c);
    const int m = static_cast<int>(trav.size());
    const std::vector<int> rov = run_of_visit(runs, m);
    std::vector<int> slot_of_dart(static_cast<std::size_t>(c.dart_count()), -1);
    for (int v = 0; v < m; ++v) {
        const int slot = slot_of_run[static_cast<std::size_t>(rov[static_cast<std::size_t>(v)])];
        const core::Dart depart = trav[static_cast<std::size_t>(v)];
        slot_of_dart[static_cast<std::size_t>(depart)] = slot;
        slot_of_dart[static_cast<std::size_t>(core::CurveDiagram::theta(depart))] = slot;
    }
    std::vector<int> starred;
    const std::vector<core::Face> fs = core::faces(c);
    for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
        const auto& b = fs[static_cast<std::size_t>(f)].boundary;
        long long sum = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const int cur = slot_of_dart[static_cast<std::size_t>(b[i])];
            const int nxt = slot_of_dart[static_cast<std::size_t>(b[(i + 1) % b.size()])];
            int delta = wrap(nxt - cur, 24);
            if (delta > 12)
                delta -= 24;
            sum += delta;
        }
        if (sum % 24 != 0)
            return std::nullopt;
        if (sum != 0)
            starred.push_back(f);
    }
    if (starred.size() != 2)
        return std::nullopt;
    return std::array<int, 2>{starred[0], starred[1]};
}

inline std::vector<core::Dart> connector_darts(const core::CurveDiagram& c, const std::vector<Run>& runs) {
    const std::vector<core::Dart> trav = core::traversal_sequence(c);
    const int m = static_cast<int>(trav.size());
    std::vector<core::Dart> out;
    out.reserve(runs.size());
    for (const Run& r : runs)
        out.push_back(trav[static_cast<std::size_t>(wrap(r.first + r.length - 1, m))]);
    return out;
}

} // namespace detail

// Reconstructs strand labels, connectors, and stars from a box partition.
// Parses the necklace grammar in both traversal directions, preferring a
// labelling whose strands 1 and 2 meet twice in every box; structurally
// valid but property-breaking labellings are still returned so the checker
// can name the broken property.
inline std::optional<BoxCertificate> derive_certificate(const core::CurveDiagram& c,
                                                        const std::array<std::vector<int>, 8>& boxes) {
    if (c.n() == 0)
        return std::nullopt;
    int bad = 0;
    const auto vb = detail::visit_boxes(c, boxes, &bad);
    if (!vb)
        return std::nullopt;
    const std::vector<detail::Run> runs = detail::runs_of(*vb);
    const int m = static_cast<int>(runs.size());
    std::optional<detail::Parse> fallback;
    std::optional<detail::Parse> chosen;
    for (int rev = 0; rev < 2 && !chosen; ++rev) {
        for (int start = 0; start < m && !chosen; ++start) {
            std::vector<int> order(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                order[static_cast<std::size_t>(i)] =
                    rev == 0 ? detail::wrap(start + i, m) : detail::wrap(start - i, m);
            auto p = detail::parse_attempt(runs, order);
            if (!p)
                continue;
            if (!fallback)
                fallback = p;
            if (detail::p3_holds(c, p->strands))
                chosen = p;
        }
    }
    if (!chosen)
        chosen = fallback;
    if (!chosen)
        return std::nullopt;
    BoxCertificate cert;
    cert.boxes = boxes;
    for (auto& ids : cert.boxes)
        std::sort(ids.begin(), ids.end());
    cert.strands = chosen->strands;
    cert.connectors = detail::connector_darts(c, runs);
    const auto stars = detail::derive_stars(c, runs, chosen->slot_of_run);
    if (!stars)
        return std::nullopt;
    cert.stars = *stars;
    std::sort(cert.stars.begin(), cert.stars.end());
    return cert;
}

// Judges a stored certificate against the diagram. Violations carry the
// first broken property and where it broke; passing implies the curve has
// at least sixteen crossings.
inline Check check_certificate(const core::CurveDiagram& c, const BoxCertificate& cert) {
    int bad = 0;
    const auto vb = detail::visit_boxes(c, cert.boxes, &bad);
    if (!vb)
        return Violation{"references", "crossing c" + std::to_string(bad)};
    const int faces_total = static_cast<int>(core::faces(c).size());
    for (int s : cert.stars)
        if (s < 0 || s >= faces_total)
            return Violation{"references", "face f" + std::to_string(s)};
    if (cert.stars[0] == cert.stars[1])
        return Violation{"references", "face f" + std::to_string(cert.stars[0])};

    const std::vector<detail::Run> runs = detail::runs_of(*vb);
    const int m = static_cast<int>(runs.size());
    const int total = static_cast<int>(vb->size());

    // Property 1: each box carries exactly strands 1, 2, and optionally 3,
    // and together they are exactly the box's runs.
    std::map<int, int> run_by_first;
    for (int r = 0; r < m; ++r)
        run_by_first[runs[static_cast<std::size_t>(r)].first] = r;
    std::vector<int> role_of_run(static_cast<std::size_t>(m), -1);
    std::vector<int> box_of_run(static_cast<std::size_t>(m), -1);
    for (int b = 0; b < 8; ++b) {
        const BoxStrands& bs = cert.strands[static_cast<std::size_t>(b)];
        const std::array<const StrandRun*, 3> named{&bs.s1, &bs.s2, &bs.s3};
        for (int role = 0; role < 3; ++role) {
            const StrandRun& s = *named[static_cast<std::size_t>(role)];
            if (!s.present()) {
                if (role < 2)
                    return Violation{"Property 1", "box " + std::to_string(b)};
                continue;
            }
            const auto it = run_by_first.find(detail::wrap(s.first, total));
            if (it == run_by_first.end())
                return Violation{"Property 1", "box " + std::to_string(b)};
            const detail::Run& r = runs[static_cast<std::size_t>(it->second)];
            if (r.length != s.length || r.box != b || role_of_run[static_cast<std::size_t>(it->second)] != -1)
                return Violation{"Property 1", "box " + std::to_string(b)};
            role_of_run[static_cast<std::size_t>(it->second)] = role;
            box_of_run[static_cast<std::size_t>(it->second)] = b;
        }
    }
    for (int r = 0; r < m; ++r)
        if (role_of_run[static_cast<std::size_t>(r)] < 0)
            return Violation{"Property 1", "box " + std::to_string(runs[static_cast<std::size_t>(r)].box)};

    // Property 2: the runs follow the necklace grammar in one traversal
    // direction, and the stored connectors are the white arcs between them.
    auto follows = [&](int r, int next) {
        const int b = box_of_run[static_cast<std::size_t>(r)];
        const int nb = box_of_run[static_cast<std::size_t>(next)];
        const int nr = role_of_run[static_cast<std::size_t>(next)];
        switch (role_of_run[static_cast<std::size_t>(r)]) {
        case 0: return nr == 1 && nb == detail::wrap(b - 1, 8);
        case 1: return (nr == 2 && nb == detail::wrap(b + 1, 8)) || (nr == 0 && nb == detail::wrap(b + 2, 8));
        default: return nr == 0 && nb == detail::wrap(b + 1, 8);
        }
    };
    bool fwd = true;
    bool bwd = true;
    int fwd_fail = -1;
    for (int r = 0; r < m; ++r) {
        if (!follows(r, detail::wrap(r + 1, m))) {
            if (fwd && fwd_fail < 0)
                fwd_fail = r;
            fwd = false;
        }
        if (!follows(r, detail::wrap(r - 1, m)))
            bwd = false;
    }
    if (!fwd && !bwd)
        return Violation{"Property 2",
                         "box " + std::to_string(runs[static_cast<std::size_t>(fwd_fail < 0 ? 0 : fwd_fail)].box)};
    const std::vector<core::Dart> want = detail::connector_darts(c, runs);
    if (cert.connectors != want)
        return Violation{"Property 2", "connectors"};

    // Property 3: strands 1 and 2 of every box cross exactly twice.
    for (int b = 0; b < 8; ++b)
        if (detail::clasp_count(c, cert.strands[static_cast<std::size_t>(b)]) != 2)
            return Violation{"Property 3", "box " + std::to_string(b)};

    // Property 4: both starred faces have at least four sides.
    const std::vector<core::Face> fs = core::faces(c);
    for (int s : cert.stars)
        if (fs[static_cast<std::size_t>(s)].sides() < 4)
            return Violation{"Property 4", "face f" + std::to_string(s)};
    return std::nullopt;
}

// Debug oracle: bounded search for any valid certificate. Enumerates run
// segmentations of the traversal against the grammar, pruning on box
// consistency; intended for small instances only.
inline std::optional<BoxCertificate> find_certificate(const core::CurveDiagram& c) {
    if (c.n() < 16)
        return std::nullopt;
    const std::vector<int> order = core::curve_order(c);
    const int total = static_cast<int>(order.size());
    for (int dir = 0; dir < 2; ++dir) {
        for (int origin = 0; origin < total; ++origin) {
            std::vector<int> seq(static_cast<std::size_t>(total));
            for (int i = 0; i < total; ++i)
                seq[static_cast<std::size_t>(i)] =
                    order[static_cast<std::size_t>(detail::wrap(origin + (dir == 0 ? i : -i), total))];
            std::map<int, int> box_of;
            std::array<std::vector<int>, 8> boxes;
            // Slot roles repeat (s1 of k+1, s2 of k, s3 of k+1) for k = 0..7.
            std::optional<BoxCertificate> found;
            auto rec = [&](auto&& self, int slot, int pos) -> bool {
                if (slot == 24) {
                    if (pos != total)
                        return false;
                    auto cert = derive_certificate(c, boxes);
                    if (cert && !check_certificate(c, *cert)) {
                        found = cert;
                        return true;
                    }
                    return false;
                }
                const int t = slot / 3;
                const int role = slot % 3;
                const int box = role == 1 ? t : detail::wrap(t + 1, 8);
                const int remaining_min = 4 * (7 - t) + (role == 0 ? 2 : 0);
                const int rest = total - pos;
                const int lo = role == 2 ? 0 : 2;
                const int hi = rest - remaining_min;
                for (int len = lo; len <= hi; ++len) {
                    std::vector<int> placed;
                    bool ok = true;
                    for (int j = 0; j < len; ++j) {
                        const int id = seq[static_cast<std::size_t>(pos + j)];
                        const auto it = box_of.find(id);
                        if (it == box_of.end()) {
                            box_of.emplace(id, box);
                            boxes[static_cast<std::size_t>(box)].push_back(id);
                            placed.push_back(id);
                        } else if (it->second != box) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && self(self, slot + 1, pos + len))
                        return true;
                    for (int id : placed) {
                        box_of.erase(id);
                        auto& v = boxes[static_cast<std::size_t>(box)];
                        v.erase(std::find(v.begin(), v.end(), id));
                    }
                }
                return false;
            };
            if (rec(rec, 0, 0))
                return found;
        }
    }
    return std::nullopt;
}

inline std::string emit_certificate(const BoxCertificate& cert) {
    std::ostringstream os;
    for (int b = 0; b < 8; ++b) {
        os << "box " << b << ":";
        std::vector<int> ids = cert.boxes[static_cast<std::size_t>(b)];
        std::sort(ids.begin(), ids.end());
        for (int id : ids)
            os << " c" << id;
        os << "\n";
    }
    os << "star f" << cert.stars[0] << " f" << cert.stars[1] << "\n";
    return os.str();
}

// Reads the serialized box partition and stars, then rebuilds the derived
// fields against the diagram. A partition that no longer parses comes back
// bare so the checker can report the violation instead of throwing.
inline BoxCertificate parse_certificate(const std::string& text, const core::CurveDiagram& c) {
    std::array<std::vector<int>, 8> boxes;
    std::array<int, 2> stars{-1, -1};
    std::array<bool, 8> seen_box{};
    bool seen_star = false;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "box") {
            int b = -1;
            char colon = 0;
            if (!(ls >> b) || b < 0 || b > 7 || seen_box[static_cast<std::size_t>(b)])
                throw std::invalid_argument("certificate: bad box line: " + line);
            ls >> colon;
            if (colon != ':')
                throw std::invalid_argument("certificate: bad box line: " + line);
            std::string tok;
            while (ls >> tok) {
                if (tok.size() < 2 || tok[0] != 'c')
                    throw std::invalid_argument("certificate: bad crossing token: " + tok);
                boxes[static_cast<std::size_t>(b)].push_back(std::stoi(tok.substr(1)));
            }
            seen_box[static_cast<std::size_t>(b)] = true;
        } else if (head == "star") {
            std::string f0;
            std::string f1;
            if (!(ls >> f0 >> f1) || f0.size() < 2 || f1.size() < 2 || f0[0] != 'f' || f1[0] != 'f' || seen_star)
                throw std::invalid_argument("certificate: bad star line: " + line);
            stars = {std::stoi(f0.substr(1)), std::stoi(f1.substr(1))};
            seen_star = true;
        } else {
            throw std::invalid_argument("certificate: unknown line: " + line);
        }
    }
    for (int b = 0; b < 8; ++b)
        if (!seen_box[static_cast<std::size_t>(b)])
            throw std::invalid_argument("certificate: missing box " + std::to_string(b));
    if (!seen_star)
        throw std::invalid_argument("certificate: missing star line");
    auto derived = derive_certificate(c, boxes);
    if (derived) {
        derived->stars = stars;
        std::sort(derived->stars.begin(), derived->stars.end());
        return *derived;
    }
    BoxCertificate bare;
    bare.boxes = boxes;
    for (auto& ids : bare.boxes)
        std::sort(ids.begin(), ids.end());
    bare.stars = stars;
    std::sort(bare.stars.begin(), bare.stars.end());
    return bare;
}

namespace detail {

inline bool same_diagram(const core::CurveDiagram& a, const core::CurveDiagram& b) {
    return a.alpha == b.alpha && a.ids == b.ids && a.colors == b.colors && a.circle_genus == b.circle_genus;
}

inline std::optional<BoxCertificate> derive_checked(const core::CurveDiagram& result,
                                                    const std::array<std::vector<int>, 8>& boxes) {
    auto cert = derive_certificate(result, boxes);
    if (cert && !check_certificate(result, *cert))
        return cert;
    return std::nullopt;
}

} // namespace detail

// Carries a valid certificate across one curve-shrinking or curve-local
// move by deterministic case analysis: loop removals drop the crossing,
// loop insertions join the nearer end of their host edge, and triangle
// slides reassign at most two of the triangle's crossings. The sabotage
// switch deliberately drops the wrong crossing on a loop removal so the
// downstream checker has a fault to catch.
inline TransportResult transport(const core::CurveDiagram& before, const BoxCertificate& cert,
                                 const moves::MoveInstance& m, const core::CurveDiagram& result,
                                 bool sabotage = false) {
    if (m.kind != moves::MoveKind::r1a && m.kind != moves::MoveKind::r1b && m.kind != moves::MoveKind::r3)
        throw std::invalid_argument("transport: only moves 1a, 1b, and 3 are covered");
    if (check_certificate(before, cert))
        throw std::invalid_argument("transport: certificate invalid on the source diagram");
    const moves::MoveResult res = moves::apply(before, m);
    if (!detail::same_diagram(res.after, result))
        throw std::invalid_argument("transport: result does not match the move");

    if (m.kind == moves::MoveKind::r1a) {
        const int removed = res.removed_ids.at(0);
        int victim = removed;
        if (sabotage) {
            for (const auto& ids : cert.boxes)
                if (std::find(ids.begin(), ids.end(), removed) != ids.end())
                    for (int id : ids)
                        if (id != victim) {
                            victim = id;
                            break;
                        }
        }
        std::array<std::vector<int>, 8> boxes = cert.boxes;
        for (auto& ids : boxes)
            ids.erase(std::remove(ids.begin(), ids.end(), victim), ids.end());
        if (sabotage) {
            BoxCertificate stale = cert;
            stale.boxes = boxes;
            return {stale, ""};
        }
        if (auto out = detail::derive_checked(result, boxes))
            return {*out, ""};
        return {std::nullopt, "loop removal left no valid certificate"};
    }

    if (m.kind == moves::MoveKind::r1b) {
        const int created = res.created_ids.at(0);
        std::map<int, int> box_of;
        for (int b = 0; b < 8; ++b)
            for (int id : cert.boxes[static_cast<std::size_t>(b)])
                box_of[id] = b;
        std::vector<int> candidates;
        if (before.n() > 0) {
            const core::Dart d = m.a;
            const int near = before.ids[static_cast<std::size_t>(core::CurveDiagram::vertex(d))];
            const int far =
                before.ids[static_cast<std::size_t>(core::CurveDiagram::vertex(before.alpha[static_cast<std::size_t>(d)]))];
            candidates.push_back(box_of.at(near));
            if (box_of.at(far) != box_of.at(near))
                candidates.push_back(box_of.at(far));
        }
        for (int b : candidates) {
            std::array<std::vector<int>, 8> boxes = cert.boxes;
            boxes[static_cast<std::size_t>(b)].push_back(created);
            if (auto out = detail::derive_checked(result, boxes))
                return {*out, ""};
        }
        return {std::nullopt, "no adjacent box accepts the inserted loop crossing"};
    }

    // Triangle slide: try the unchanged partition first, then every
    // reassignment of at most two triangle crossings to boxes already
    // touched by the triangle, in lexicographic order.
    if (auto out = detail::derive_checked(result, cert.boxes))
        return {*out, ""};
    const std::vector<core::Face> fs = core::faces(before);
    if (m.a < 0 || m.a >= static_cast<int>(fs.size()))
        throw std::invalid_argument("transport: triangle face out of range");
    std::vector<int> tri;
    for (core::Dart d : fs[static_cast<std::size_t>(m.a)].boundary)
        tri.push_back(before.ids[static_cast<std::size_t>(core::CurveDiagram::vertex(d))]);
    std::sort(tri.begin(), tri.end());
    tri.erase(std::unique(tri.begin(), tri.end()), tri.end());
    std::map<int, int> box_of;
    for (int b = 0; b < 8; ++b)
        for (int id : cert.boxes[static_cast<std::size_t>(b)])
            box_of[id] = b;
    std::vector<int> targets;
    for (int id : tri)
        targets.push_back(box_of.at(id));
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    auto reassigned = [&](const std::vector<std::pair<int, int>>& changes) {
        std::array<std::vector<int>, 8> boxes = cert.boxes;
        for (const auto& [id, b] : changes) {
            for (auto& ids : boxes)
                ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
            boxes[static_cast<std::size_t>(b)].push_back(id);
        }
        return boxes;
    };
    for (std::size_t i = 0; i < tri.size(); ++i)
        for (int b : targets) {
            if (b == box_of.at(tri[i]))
                continue;
            if (auto out = detail::derive_checked(result, reassigned({{tri[i], b}})))
                return {*out, ""};
        }
    for (std::size_t i = 0; i < tri.size(); ++i)
        for (std::size_t j = i + 1; j < tri.size(); ++j)
            for (int bi : targets)
                for (int bj : targets) {
                    if (bi == box_of.at(tri[i]) || bj == box_of.at(tri[j]))
                        continue;
                    if (auto out = detail::derive_checked(result, reassigned({{tri[i], bi}, {tri[j], bj}})))
                        return {*out, ""};
                }
    return {std::nullopt, "triangle slide spans boxes beyond repair"};
}

// Chord-diagram shadow of a diagram: the word in traversal order plus each
// crossing's color.
struct ColoredGaussDiagram {
    std::vector<int> word;
    std::vector<std::pair<int, core::Color>> chords; // ascending ids

    friend bool operator==(const ColoredGaussDiagram& a, const ColoredGaussDiagram& b) {
        return a.word == b.word && a.chords == b.chords;
    }
};

inline ColoredGaussDiagram make_colored(const core::CurveDiagram& c) {
    ColoredGaussDiagram d;
    d.word = core::curve_order(c);
    for (int k = 0; k < c.n(); ++k)
        d.chords.emplace_back(c.ids[static_cast<std::size_t>(k)], c.colors[static_cast<std::size_t>(k)]);
    std::sort(d.chords.begin(), d.chords.end());
    return d;
}

namespace detail {

inline void validate_colored(const ColoredGaussDiagram& d) {
    std::map<int, int> seen;
    for (int id : d.word)
        ++seen[id];
    if (d.chords.size() != seen.size())
        throw std::invalid_argument("colored diagram: chords and word disagree");
    for (const auto& [id, color] : d.chords) {
        (void)color;
        const auto it = seen.find(id);
        if (it == seen.end() || it->second != 2)
            throw std::invalid_argument("colored diagram: chord c" + std::to_string(id) +
                                        " does not appear exactly twice");
    }
}

// The sixteen-crossing necklace pattern as a super-word: consecutive black
// pairs collapse to the box pair they belong to.
inline std::vector<int> super_template() {
    std::vector<int> t;
    for (int k = 0; k < 8; ++k) {
        t.push_back(wrap(k + 1, 8));
        t.push_back(k);
    }
    return t;
}

inline std::vector<int> normalize_word(const std::vector<int>& w) {
    std::map<int, int> relabel;
    std::vector<int> out;
    for (int x : w) {
        const auto it = relabel.find(x);
        if (it == relabel.end()) {
            const int fresh = static_cast<int>(relabel.size());
            relabel.emplace(x, fresh);
            out.push_back(fresh);
        } else {
            out.push_back(it->second);
        }
    }
    return out;
}

struct GaussAlignment {
    std::vector<int> black_pos; // full-word position of template position t
    bool reversed = false;
};

} // namespace detail

// Clause 1: erasing gray chords leaves the sixteen-crossing necklace word
// up to rotation, reflection, and relabelling, where each adjacent pair of
// parallel chords may independently be crossed. Clause 2: both endpoints
// of every gray chord stay inside one of the eight regions cut out between
// the black anchors flanking a repeat unit.
inline Check check_gauss_predicate(const ColoredGaussDiagram& d) {
    detail::validate_colored(d);
    std::map<int, core::Color> color_of(d.chords.begin(), d.chords.end());
    std::vector<int> black_pos;
    for (int p = 0; p < static_cast<int>(d.word.size()); ++p)
        if (color_of.at(d.word[static_cast<std::size_t>(p)]) == core::Color::black)
            black_pos.push_back(p);
    if (black_pos.size() != 32)
        return Violation{"clause 1", "black chord count " + std::to_string(black_pos.size() / 2)};

    const std::vector<int> tmpl = detail::normalize_word(detail::super_template());
    std::optional<detail::GaussAlignment> align;
    for (int rev = 0; rev < 2 && !align; ++rev) {
        std::vector<int> bw(32);
        std::vector<int> bp(32);
        for (int i = 0; i < 32; ++i) {
            const int src = rev == 0 ? i : 31 - i;
            bw[static_cast<std::size_t>(i)] = d.word[static_cast<std::size_t>(black_pos[static_cast<std::size_t>(src)])];
            bp[static_cast<std::size_t>(i)] = black_pos[static_cast<std::size_t>(src)];
        }
        for (int o = 0; o < 32 && !align; ++o) {
            std::map<std::pair<int, int>, int> pair_ids;
            std::vector<int> super;
            bool ok = true;
            for (int j = 0; j < 16 && ok; ++j) {
                int x = bw[static_cast<std::size_t>((o + 2 * j) % 32)];
                int y = bw[static_cast<std::size_t>((o + 2 * j + 1) % 32)];
                if (x == y) {
                    ok = false;
                    break;
                }
                if (x > y)
                    std::swap(x, y);
                const auto [it, fresh] = pair_ids.emplace(std::make_pair(x, y), static_cast<int>(pair_ids.size()));
                (void)fresh;
                super.push_back(it->second);
            }
            if (!ok || pair_ids.size() != 8)
                continue;
            std::vector<int> counts(8, 0);
            for (int s : super)
                ++counts[static_cast<std::size_t>(s)];
            if (*std::min_element(counts.begin(), counts.end()) != 2)
                continue;
            if (detail::normalize_word(super) != tmpl)
                continue;
            detail::GaussAlignment a;
            a.reversed = rev == 1;
            a.black_pos.resize(32);
            for (int t = 0; t < 32; ++t)
                a.black_pos[static_cast<std::size_t>(t)] = bp[static_cast<std::size_t>((o + t) % 32)];
            align = a;
        }
    }
    if (!align)
        return Violation{"clause 1", "no necklace alignment"};

    // Work on the oriented circle that matched, so the regions inherit the
    // alignment's direction.
    const int full = static_cast<int>(d.word.size());
    auto oriented = [&](int p) { return align->reversed ? full - 1 - p : p; };
    auto in_open_arc = [&](int p, int lo, int hi) {
        const int span = detail::wrap(hi - lo, full);
        const int off = detail::wrap(p - lo, full);
        return off > 0 && off < span;
    };
    std::map<int, std::vector<int>> gray_at;
    for (int p = 0; p < full; ++p)
        if (color_of.at(d.word[static_cast<std::size_t>(p)]) == core::Color::gray)
            gray_at[d.word[static_cast<std::size_t>(p)]].push_back(oriented(p));
    for (const auto& [id, ps] : gray_at) {
        bool housed = false;
        for (int k = 0; k < 8 && !housed; ++k) {
            const int lo = oriented(align->black_pos[static_cast<std::size_t>(detail::wrap(4 * k - 1, 32))]);
            const int hi = oriented(align->black_pos[static_cast<std::size_t>(detail::wrap(4 * k + 4, 32))]);
            housed = in_open_arc(ps[0], lo, hi) && in_open_arc(ps[1], lo, hi);
        }
        if (!housed)
            return Violation{"clause 2", "crossing c" + std::to_string(id)};
    }
    return std::nullopt;
}

// Chord-diagram image of one move. The word and colors are rebuilt from
// the after diagram; the move only dictates which bookkeeping must hold,
// and any mismatch is an internal inconsistency, not a domain verdict.
inline ColoredGaussDiagram lift_move(const ColoredGaussDiagram& d, const moves::MoveInstance& m,
                                     const core::CurveDiagram& before, const core::CurveDiagram& after) {
    if (m.kind != moves::MoveKind::r1a && m.kind != moves::MoveKind::r1b && m.kind != moves::MoveKind::r3)
        throw std::invalid_argument("lift_move: only moves 1a, 1b, and 3 are covered");
    if (before.n() == 0)
        throw std::invalid_argument("lift_move: the source has no chords");
    if (!(make_colored(before) == d))
        throw std::invalid_argument("lift_move: colored diagram does not match the source");
    const moves::MoveResult res = moves::apply(before, m);
    if (!detail::same_diagram(res.after, after))
        throw std::invalid_argument("lift_move: result does not match the move");
    if (after.n() == 0)
        throw std::invalid_argument("lift_move: the result has no chords");
    ColoredGaussDiagram lifted = make_colored(after);

    std::map<int, core::Color> pre(d.chords.begin(), d.chords.end());
    std::map<int, core::Color> post(lifted.chords.begin(), lifted.chords.end());
    if (m.kind == moves::MoveKind::r1b) {
        const int created = res.created_ids.at(0);
        const auto it = post.find(created);
        if (it == post.end() || it->second != core::Color::gray)
            throw std::logic_error("lift_move: inserted loop chord is not gray");
        std::vector<int> at;
        for (int p = 0; p < static_cast<int>(lifted.word.size()); ++p)
            if (lifted.word[static_cast<std::size_t>(p)] == created)
                at.push_back(p);
        const int gap = detail::wrap(at[1] - at[0], static_cast<int>(lifted.word.size()));
        if (gap != 1 && gap != static_cast<int>(lifted.word.size()) - 1)
            throw std::logic_error("lift_move: inserted loop chord is not a monogon");
        post.erase(created);
    }
    if (m.kind == moves::MoveKind::r1a)
        pre.erase(res.removed_ids.at(0));
    if (pre != post)
        throw std::logic_error("lift_move: chord colors were not carried by identity");
    return lifted;
}

} // namespace planaria::obstruction
