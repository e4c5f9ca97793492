#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace planaria::core {

// Darts are 0..4n-1; crossing k owns darts 4k..4k+3 in counterclockwise
// order around the crossing. Only the edge involution alpha is stored;
// the vertex rotation is implicit in the dart numbering.
using Dart = int;

enum class Color : std::uint8_t { black, gray };

class CurveDiagram {
public:
    std::vector<Dart> alpha;
    std::vector<int> ids;
    std::vector<Color> colors;
    // Meaningful only when n() == 0: ambient genus of the bare circle,
    // which an empty map cannot encode on its own.
    int circle_genus = 0;
    int next_id = 1;

    static CurveDiagram circle(int genus = 0) {
        if (genus < 0)
            throw std::invalid_argument("circle: negative genus");
        CurveDiagram c;
        c.circle_genus = genus;
        return c;
    }

    [[nodiscard]] int n() const { return static_cast<int>(ids.size()); }
    [[nodiscard]] int dart_count() const { return static_cast<int>(alpha.size()); }

    [[nodiscard]] static Dart sigma(Dart d) { return (d & ~3) | ((d + 1) & 3); }
    [[nodiscard]] static Dart sigma_inv(Dart d) { return (d & ~3) | ((d + 3) & 3); }
    [[nodiscard]] static Dart theta(Dart d) { return d ^ 2; }
    [[nodiscard]] static int vertex(Dart d) { return d >> 2; }

    // Next departure dart when travelling the curve: cross the edge, then
    // pass straight through the crossing.
    [[nodiscard]] Dart next_along(Dart d) const { return theta(alpha[d]); }

    [[nodiscard]] int id_of(int dense) const { return ids.at(dense); }

    [[nodiscard]] int dense_of(int id) const {
        for (int k = 0; k < n(); ++k)
            if (ids[k] == id)
                return k;
        throw std::out_of_range("dense_of: unknown crossing id " + std::to_string(id));
    }
};

struct Face {
    std::vector<Dart> boundary;
    [[nodiscard]] int sides() const { return static_cast<int>(boundary.size()); }
};

// Names the first violated structural invariant, or nullopt for a
// well-formed single-curve diagram.
inline std::optional<std::string> validate(const CurveDiagram& c) {
    const int n = c.n();
    if (c.alpha.size() != static_cast<std::size_t>(4 * n))
        return "alpha size is not 4n";
    if (c.colors.size() != static_cast<std::size_t>(n))
        return "colors size is not n";
    if (n == 0) {
        if (c.circle_genus < 0)
            return "negative circle genus";
        return std::nullopt;
    }
    for (Dart d = 0; d < 4 * n; ++d) {
        if (c.alpha[d] < 0 || c.alpha[d] >= 4 * n)
            return "alpha out of range at dart " + std::to_string(d);
        if (c.alpha[d] == d)
            return "alpha fixes dart " + std::to_string(d);
        if (c.alpha[c.alpha[d]] != d)
            return "alpha not an involution at dart " + std::to_string(d);
    }
    for (int k = 0; k < n; ++k) {
        if (c.ids[k] <= 0)
            return "nonpositive crossing id at index " + std::to_string(k);
        if (c.ids[k] >= c.next_id)
            return "crossing id " + std::to_string(c.ids[k]) + " not below next_id";
        for (int j = k + 1; j < n; ++j)
            if (c.ids[j] == c.ids[k])
                return "duplicate crossing id " + std::to_string(c.ids[k]);
    }
    // A single closed curve makes one directed circuit through all 2n
    // edges; the opposite direction is the theta-image of the first.
    std::vector<char> seen(static_cast<std::size_t>(4 * n), 0);
    Dart d = 0;
    int steps = 0;
    do {
        if (seen[static_cast<std::size_t>(d)])
            return "curve revisits dart " + std::to_string(d);
        if (seen[static_cast<std::size_t>(CurveDiagram::theta(d))])
            return "curve doubles back over dart " + std::to_string(d);
        seen[static_cast<std::size_t>(d)] = 1;
        d = c.next_along(d);
        ++steps;
    } while (d != 0 && steps <= 4 * n);
    if (steps != 2 * n)
        return "diagram is not a single closed curve";
    return std::nullopt;
}

// Departure darts of the curve walk from dart 0 (empty for a circle).
inline std::vector<Dart> traversal_sequence(const CurveDiagram& c) {
    std::vector<Dart> seq;
    if (c.n() == 0)
        return seq;
    seq.reserve(static_cast<std::size_t>(2 * c.n()));
    Dart d = 0;
    do {
        seq.push_back(d);
        d = c.next_along(d);
    } while (d != 0);
    return seq;
}

// Rank of every dart along the walk: step k departs with rank 2k and
// arrives with rank 2k+1.
inline std::vector<int> dart_order(const CurveDiagram& c) {
    std::vector<int> order(static_cast<std::size_t>(c.dart_count()), -1);
    const std::vector<Dart> seq = traversal_sequence(c);
    for (int k = 0; k < static_cast<int>(seq.size()); ++k) {
        order[static_cast<std::size_t>(seq[static_cast<std::size_t>(k)])] = 2 * k;
        order[static_cast<std::size_t>(c.alpha[seq[static_cast<std::size_t>(k)]])] = 2 * k + 1;
    }
    return order;
}

// Orbits of sigma(alpha(d)): the face to the right of travel d -> alpha(d).
// Each boundary starts at its lowest-ranked dart; faces sort the same way.
inline std::vector<Face> faces(const CurveDiagram& c) {
    std::vector<Face> fs;
    const int m = c.dart_count();
    if (m == 0)
        return fs;
    const std::vector<int> order = dart_order(c);
    std::vector<char> done(static_cast<std::size_t>(m), 0);
    for (Dart seed = 0; seed < m; ++seed) {
        if (done[static_cast<std::size_t>(seed)])
            continue;
        std::vector<Dart> orbit;
        Dart d = seed;
        do {
            done[static_cast<std::size_t>(d)] = 1;
            orbit.push_back(d);
            d = CurveDiagram::sigma(c.alpha[d]);
        } while (d != seed);
        auto best = std::min_element(orbit.begin(), orbit.end(), [&](Dart a, Dart b) {
            return order[static_cast<std::size_t>(a)] < order[static_cast<std::size_t>(b)];
        });
        std::rotate(orbit.begin(), best, orbit.end());
        fs.push_back(Face{std::move(orbit)});
    }
    std::sort(fs.begin(), fs.end(), [&](const Face& a, const Face& b) {
        return order[static_cast<std::size_t>(a.boundary[0])] <
               order[static_cast<std::size_t>(b.boundary[0])];
    });
    return fs;
}

// Dart -> index into faces(c).
inline std::vector<int> face_of_dart(const CurveDiagram& c, const std::vector<Face>& fs) {
    std::vector<int> fo(static_cast<std::size_t>(c.dart_count()), -1);
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        for (Dart d : fs[static_cast<std::size_t>(i)].boundary)
            fo[static_cast<std::size_t>(d)] = i;
    return fo;
}

inline int genus(const CurveDiagram& c) {
    if (c.n() == 0)
        return c.circle_genus;
    const int chi = c.n() - 2 * c.n() + static_cast<int>(faces(c).size());
    return (2 - chi) / 2;
}

// Stable crossing ids in visit order along the walk, 2n entries.
inline std::vector<int> curve_order(const CurveDiagram& c) {
    if (c.n() == 0)
        throw std::invalid_argument("curve_order: bare circle has no crossings");
    std::vector<int> out;
    for (Dart d : traversal_sequence(c))
        out.push_back(c.ids[static_cast<std::size_t>(CurveDiagram::vertex(d))]);
    return out;
}

// Winding number of the curve around a point in the chosen outer face,
// for the given travel direction. Signs are taken in passage order from
// a base edge bordering the outer face; the base term is +1 when the
// outer face lies to the left at the base edge.
inline int whitney_index(const CurveDiagram& c, int outer_face, bool reverse = false) {
    if (c.n() == 0)
        return reverse ? -1 : 1;
    const std::vector<Face> fs = faces(c);
    if (outer_face < 0 || outer_face >= static_cast<int>(fs.size()))
        throw std::out_of_range("whitney_index: no face " + std::to_string(outer_face));
    const std::vector<int> fo = face_of_dart(c, fs);
    std::vector<Dart> seq;
    Dart d = reverse ? CurveDiagram::theta(0) : 0;
    do {
        seq.push_back(d);
        d = c.next_along(d);
    } while (d != seq[0]);
    const int m = static_cast<int>(seq.size());
    int base = -1;
    for (int k = 0; k < m && base < 0; ++k) {
        const bool right = fo[static_cast<std::size_t>(seq[static_cast<std::size_t>(k)])] == outer_face;
        const bool left = fo[static_cast<std::size_t>(c.alpha[seq[static_cast<std::size_t>(k)]])] == outer_face;
        if (right != left)
            base = k;
    }
    if (base < 0) {
        for (int k = 0; k < m && base < 0; ++k)
            if (fo[static_cast<std::size_t>(seq[static_cast<std::size_t>(k)])] == outer_face ||
                fo[static_cast<std::size_t>(c.alpha[seq[static_cast<std::size_t>(k)]])] == outer_face)
                base = k;
    }
    if (base < 0)
        throw std::logic_error("whitney_index: outer face misses the curve");
    int w = fo[static_cast<std::size_t>(c.alpha[seq[static_cast<std::size_t>(base)]])] == outer_face ? 1 : -1;
    std::vector<Dart> first(static_cast<std::size_t>(c.n()), -1);
    for (int k = 0; k < m; ++k) {
        const Dart arrive = c.alpha[seq[static_cast<std::size_t>((base + k) % m)]];
        const int v = CurveDiagram::vertex(arrive);
        if (first[static_cast<std::size_t>(v)] < 0)
            first[static_cast<std::size_t>(v)] = arrive;
        else
            w += arrive == CurveDiagram::sigma(first[static_cast<std::size_t>(v)]) ? 1 : -1;
    }
    return w;
}

} // namespace planaria::core
