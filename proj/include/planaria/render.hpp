#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "planaria/core.hpp"

namespace planaria::render {

struct Drawing {
    std::vector<std::array<double, 2>> waypoints; // closed polyline, traversal order
    std::vector<std::array<double, 2>> centers;   // one per crossing, dense order
};

namespace detail {

// Node layout of the truncated map: one node per dart, arranged as a small
// quadrilateral around its crossing, plus two interior waypoints per edge
// so loops stay visibly open. Passages are drawn as quad diagonals, which
// meet transversally when the quad is convex.
inline constexpr int node_count(int n) { return 8 * n; }
inline constexpr int dart_node(core::Dart d) { return d; }
inline int mid_node(const core::CurveDiagram& c, core::Dart d) { return c.dart_count() + d; }

inline std::vector<std::vector<int>> adjacency(const core::CurveDiagram& c) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count(c.n())));
    for (core::Dart d = 0; d < c.dart_count(); ++d) {
        const core::Dart s = core::CurveDiagram::sigma(d);
        adj[static_cast<std::size_t>(dart_node(d))] = {
            dart_node(s), dart_node(core::CurveDiagram::sigma(core::CurveDiagram::sigma(s))),
            mid_node(c, d)};
        adj[static_cast<std::size_t>(mid_node(c, d))] = {
            dart_node(d), mid_node(c, c.alpha[static_cast<std::size_t>(d)])};
    }
    return adj;
}

// The outer boundary of the truncated map along one face walk: for each
// boundary dart the curve-side nodes, then the quad side to the next dart.
inline std::vector<int> boundary_cycle(const core::CurveDiagram& c, const core::Face& f) {
    std::vector<int> cycle;
    for (const core::Dart b : f.boundary) {
        const core::Dart arrive = c.alpha[static_cast<std::size_t>(b)];
        cycle.push_back(dart_node(b));
        cycle.push_back(mid_node(c, b));
        cycle.push_back(mid_node(c, arrive));
        cycle.push_back(dart_node(arrive));
    }
    return cycle;
}

inline bool repeats(const std::vector<int>& cycle) {
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

// Gaussian elimination with partial pivoting on a dense system; the node
// counts here stay in the hundreds, far below the point where sparsity
// would matter.
inline std::vector<std::array<double, 2>> solve_positions(
    const std::vector<std::vector<int>>& adj, const std::vector<int>& pinned,
    const std::vector<std::array<double, 2>>& pin_pos) {
    const int total = static_cast<int>(adj.size());
    std::vector<int> slot(static_cast<std::size_t>(total), -1);
    std::vector<std::array<double, 2>> out(static_cast<std::size_t>(total), {0.0, 0.0});
    std::vector<char> is_pinned(static_cast<std::size_t>(total), 0);
    for (std::size_t i = 0; i < pinned.size(); ++i) {
        is_pinned[static_cast<std::size_t>(pinned[i])] = 1;
        out[static_cast<std::size_t>(pinned[i])] = pin_pos[i];
    }
    std::vector<int> free_nodes;
    for (int v = 0; v < total; ++v)
        if (!is_pinned[static_cast<std::size_t>(v)]) {
            slot[static_cast<std::size_t>(v)] = static_cast<int>(free_nodes.size());
            free_nodes.push_back(v);
        }
    const int m = static_cast<int>(free_nodes.size());
    if (m == 0)
        return out;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m + 2), 0.0));
    for (int r = 0; r < m; ++r) {
        const int v = free_nodes[static_cast<std::size_t>(r)];
        const auto& nb = adj[static_cast<std::size_t>(v)];
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] =
            static_cast<double>(nb.size());
        for (const int w : nb) {
            if (is_pinned[static_cast<std::size_t>(w)]) {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(m)] +=
                    out[static_cast<std::size_t>(w)][0];
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(m + 1)] +=
                    out[static_cast<std::size_t>(w)][1];
            } else {
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(
                    slot[static_cast<std::size_t>(w)])] -= 1.0;
            }
        }
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
                pivot = r;
        std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(pivot)]);
        const double lead = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        if (std::abs(lead) < 1e-12)
            throw std::logic_error("render: layout system is singular");
        for (int r = 0; r < m; ++r) {
            if (r == col)
                continue;
            const double factor =
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / lead;
            if (factor == 0.0)
                continue;
            for (int k = col; k < m + 2; ++k)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
                    factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(k)];
        }
    }
    for (int r = 0; r < m; ++r) {
        const double lead = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
        out[static_cast<std::size_t>(free_nodes[static_cast<std::size_t>(r)])] = {
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(m)] / lead,
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(m + 1)] / lead};
    }
    return out;
}

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace detail

// Chooses the outer face: the given index, or the widest duplicate-free
// boundary when unspecified.
inline int pick_outer_face(const core::CurveDiagram& c, int outer_face) {
    const auto fs = core::faces(c);
    if (outer_face != -1) {
        if (outer_face < 0 || outer_face >= static_cast<int>(fs.size()))
            throw std::invalid_argument("render: outer face index out of range");
        if (detail::repeats(detail::boundary_cycle(c, fs[static_cast<std::size_t>(outer_face)])))
            throw std::invalid_argument("render: the chosen outer face pins a node twice");
        return outer_face;
    }
    int best = -1;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
        if (detail::repeats(detail::boundary_cycle(c, fs[static_cast<std::size_t>(i)])))
            continue;
        if (best < 0 || fs[static_cast<std::size_t>(i)].sides() > fs[static_cast<std::size_t>(best)].sides())
            best = i;
    }
    if (best < 0)
        throw std::invalid_argument("render: no usable outer face");
    return best;
}

inline Drawing layout(const core::CurveDiagram& c, int outer_face = -1) {
    if (core::genus(c) != 0)
        throw std::invalid_argument("render: the curve does not embed in the plane");
    Drawing d;
    if (c.n() == 0) {
        for (int i = 0; i < 24; ++i) {
            const double t = 2.0 * std::numbers::pi * i / 24.0;
            d.waypoints.push_back({300.0 + 250.0 * std::cos(t), 300.0 + 250.0 * std::sin(t)});
        }
        return d;
    }

    const auto fs = core::faces(c);
    const int outer = pick_outer_face(c, outer_face);
    const std::vector<int> cycle =
        detail::boundary_cycle(c, fs[static_cast<std::size_t>(outer)]);
    std::vector<std::array<double, 2>> pin_pos;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(cycle.size());
        pin_pos.push_back({300.0 + 250.0 * std::cos(t), 300.0 + 250.0 * std::sin(t)});
    }
    const auto pos = detail::solve_positions(detail::adjacency(c), cycle, pin_pos);

    for (const core::Dart dep : core::traversal_sequence(c)) {
        const core::Dart arr = c.alpha[static_cast<std::size_t>(dep)];
        d.waypoints.push_back(pos[static_cast<std::size_t>(detail::dart_node(dep))]);
        d.waypoints.push_back(pos[static_cast<std::size_t>(detail::mid_node(c, dep))]);
        d.waypoints.push_back(pos[static_cast<std::size_t>(detail::mid_node(c, arr))]);
        d.waypoints.push_back(pos[static_cast<std::size_t>(detail::dart_node(arr))]);
    }
    for (int k = 0; k < c.n(); ++k) {
        std::array<double, 2> center{0.0, 0.0};
        for (int j = 0; j < 4; ++j) {
            center[0] += pos[static_cast<std::size_t>(4 * k + j)][0] / 4.0;
            center[1] += pos[static_cast<std::size_t>(4 * k + j)][1] / 4.0;
        }
        d.centers.push_back(center);
    }
    return d;
}

inline std::string emit_svg(const core::CurveDiagram& c, int outer_face = -1) {
    const Drawing d = layout(c, outer_face);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
                      "viewBox=\"0 0 600 600\">\n";
    out += "<path d=\"";
    for (std::size_t i = 0; i < d.waypoints.size(); ++i) {
        out += i == 0 ? "M " : " L ";
        out += detail::fmt(d.waypoints[i][0]) + " " + detail::fmt(d.waypoints[i][1]);
    }
    out += " Z\" fill=\"none\" stroke=\"#111111\" stroke-width=\"1.5\" "
           "stroke-linejoin=\"round\"/>\n";
    out += "</svg>\n";
    return out;
}

inline std::string emit_dot(const core::CurveDiagram& c, int outer_face = -1) {
    const Drawing d = layout(c, outer_face);
    std::string out = "graph curve {\n";
    for (int k = 0; k < c.n(); ++k)
        out += "  c" + std::to_string(c.ids[static_cast<std::size_t>(k)]) +
               " [shape=point, pos=\"" + detail::fmt(d.centers[static_cast<std::size_t>(k)][0]) +
               "," + detail::fmt(d.centers[static_cast<std::size_t>(k)][1]) + "!\"];\n";
    for (core::Dart a = 0; a < c.dart_count(); ++a) {
        const core::Dart b = c.alpha[static_cast<std::size_t>(a)];
        if (a < b)
            out += "  c" +
                   std::to_string(
                       c.ids[static_cast<std::size_t>(core::CurveDiagram::vertex(a))]) +
                   " -- c" +
                   std::to_string(
                       c.ids[static_cast<std::size_t>(core::CurveDiagram::vertex(b))]) + ";\n";
    }
    out += "}\n";
    return out;
}

} // namespace planaria::render
