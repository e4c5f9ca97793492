#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planaria/core.hpp"

namespace planaria::codec {

using GaussCode = std::vector<int>;

struct CanonicalCode {
    std::string bytes;
    bool mirror_class = false;

    friend bool operator==(const CanonicalCode& a, const CanonicalCode& b) {
        return a.bytes == b.bytes && a.mirror_class == b.mirror_class;
    }
    friend bool operator!=(const CanonicalCode& a, const CanonicalCode& b) { return !(a == b); }
    friend bool operator<(const CanonicalCode& a, const CanonicalCode& b) {
        return a.bytes != b.bytes ? a.bytes < b.bytes : a.mirror_class < b.mirror_class;
    }
};

inline std::optional<std::string> gauss_error(const GaussCode& word) {
    if (word.empty())
        return "empty Gauss code";
    if (word.size() % 2 != 0)
        return "odd Gauss code length";
    std::map<int, int> count;
    for (int label : word) {
        if (label <= 0)
            return "nonpositive label " + std::to_string(label);
        ++count[label];
    }
    for (const auto& [label, c] : count)
        if (c != 2)
            return "label " + std::to_string(label) + " occurs " + std::to_string(c) + " times";
    return std::nullopt;
}

inline GaussCode parse_gauss(const std::string& text) {
    GaussCode word;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            std::size_t used = 0;
            int value = 0;
            try {
                value = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw std::runtime_error("gauss: non-integer token '" + tok + "'");
            }
            if (used != tok.size())
                throw std::runtime_error("gauss: non-integer token '" + tok + "'");
            word.push_back(value);
        }
    }
    if (auto err = gauss_error(word))
        throw std::runtime_error("gauss: " + *err);
    return word;
}

inline std::string emit_gauss(const GaussCode& word) {
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(word[i]);
    }
    out += '\n';
    return out;
}

// Relabels 1..n in order of first occurrence.
inline GaussCode normalize_labels(const GaussCode& word) {
    std::map<int, int> relabel;
    GaussCode out;
    out.reserve(word.size());
    for (int label : word) {
        auto [it, fresh] = relabel.emplace(label, static_cast<int>(relabel.size()) + 1);
        (void)fresh;
        out.push_back(it->second);
    }
    return out;
}

// Class representative of a cyclic double-occurrence word under rotation,
// reversal, and relabeling.
inline GaussCode canonical_word(const GaussCode& word) {
    const int m = static_cast<int>(word.size());
    if (m == 0)
        return {};
    GaussCode best;
    for (int dir = 0; dir < 2; ++dir) {
        for (int rot = 0; rot < m; ++rot) {
            GaussCode cand(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                const int src = dir == 0 ? (rot + i) % m : (rot - i % m + m) % m;
                cand[static_cast<std::size_t>(i)] = word[static_cast<std::size_t>(src)];
            }
            cand = normalize_labels(cand);
            if (best.empty() || cand < best)
                best = std::move(cand);
        }
    }
    return best;
}

namespace detail {

inline std::pair<std::vector<int>, std::vector<std::uint8_t>> start_code(const core::CurveDiagram& c,
                                                                         core::Dart start) {
    const int n = c.n();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<core::Dart> first_dep(static_cast<std::size_t>(n), -1);
    std::vector<int> word;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    word.reserve(static_cast<std::size_t>(2 * n));
    int next = 0;
    core::Dart d = start;
    do {
        const int v = core::CurveDiagram::vertex(d);
        if (label[static_cast<std::size_t>(v)] < 0) {
            label[static_cast<std::size_t>(v)] = next++;
            first_dep[static_cast<std::size_t>(v)] = d;
        } else {
            bits[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] =
                d == core::CurveDiagram::sigma(first_dep[static_cast<std::size_t>(v)]) ? 1 : 0;
        }
        word.push_back(label[static_cast<std::size_t>(v)]);
        d = c.next_along(d);
    } while (d != start);
    return {std::move(word), std::move(bits)};
}

} // namespace detail

// Minimum over all start darts (both travel directions are covered, since
// every dart is a departure dart of exactly one direction) of the relabeled
// visit word plus per-crossing chirality bits; the mirrored map contributes
// the same words with flipped bits. Equal codes mean isomorphic diagrams.
inline CanonicalCode canonical(const core::CurveDiagram& c, bool include_mirror = false) {
    CanonicalCode out;
    out.mirror_class = include_mirror;
    if (c.n() == 0) {
        out.bytes = "O:g" + std::to_string(c.circle_genus);
        return out;
    }
    std::vector<int> best_word;
    std::vector<std::uint8_t> best_bits;
    auto consider = [&](const std::vector<int>& w, const std::vector<std::uint8_t>& b) {
        if (best_word.empty() || w < best_word || (w == best_word && b < best_bits)) {
            best_word = w;
            best_bits = b;
        }
    };
    for (core::Dart s = 0; s < c.dart_count(); ++s) {
        auto [word, bits] = detail::start_code(c, s);
        consider(word, bits);
        if (include_mirror) {
            std::vector<std::uint8_t> flipped(bits.size());
            for (std::size_t i = 0; i < bits.size(); ++i)
                flipped[i] = bits[i] ? 0 : 1;
            consider(word, flipped);
        }
    }
    std::string bytes;
    if (include_mirror)
        bytes += "M:";
    for (std::size_t i = 0; i < best_word.size(); ++i) {
        if (i)
            bytes += ' ';
        bytes += std::to_string(best_word[i] + 1);
    }
    bytes += '/';
    for (std::uint8_t b : best_bits)
        bytes += b ? '1' : '0';
    out.bytes = std::move(bytes);
    return out;
}

// All genus-0 embeddings of the word, one per rotation assignment that
// closes up planar, deduplicated by canonical code. Crossing ids are the
// input labels.
inline std::vector<core::CurveDiagram> realize_all(const GaussCode& word) {
    if (auto err = gauss_error(word); err && !word.empty())
        throw std::invalid_argument("realize: " + *err);
    std::vector<core::CurveDiagram> out;
    if (word.empty()) {
        out.push_back(core::CurveDiagram::circle(0));
        return out;
    }
    const int steps = static_cast<int>(word.size());
    const int n = steps / 2;

    std::vector<int> dense_of_pos(static_cast<std::size_t>(steps), -1);
    std::vector<int> occ_of_pos(static_cast<std::size_t>(steps), 0);
    std::vector<int> ids;
    std::map<int, int> dense;
    for (int t = 0; t < steps; ++t) {
        auto [it, fresh] = dense.emplace(word[static_cast<std::size_t>(t)], static_cast<int>(ids.size()));
        if (fresh)
            ids.push_back(word[static_cast<std::size_t>(t)]);
        dense_of_pos[static_cast<std::size_t>(t)] = it->second;
        occ_of_pos[static_cast<std::size_t>(t)] = fresh ? 0 : 1;
    }

    std::vector<std::string> seen;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        core::CurveDiagram c;
        c.ids = ids;
        c.colors.assign(static_cast<std::size_t>(n), core::Color::black);
        c.next_id = *std::max_element(ids.begin(), ids.end()) + 1;
        c.alpha.assign(static_cast<std::size_t>(4 * n), -1);
        for (int t = 0; t < steps; ++t) {
            const int k = dense_of_pos[static_cast<std::size_t>(t)];
            const int k2 = dense_of_pos[static_cast<std::size_t>((t + 1) % steps)];
            const int s = (mask >> k) & 1 ? 3 : 1;
            const int s2 = (mask >> k2) & 1 ? 3 : 1;
            const core::Dart out_dart =
                4 * k + (occ_of_pos[static_cast<std::size_t>(t)] == 0 ? 2 : (s + 2) & 3);
            const core::Dart in_dart =
                4 * k2 + (occ_of_pos[static_cast<std::size_t>((t + 1) % steps)] == 0 ? 0 : s2);
            c.alpha[static_cast<std::size_t>(out_dart)] = in_dart;
            c.alpha[static_cast<std::size_t>(in_dart)] = out_dart;
        }
        if (core::genus(c) != 0)
            continue;
        std::string key = canonical(c).bytes;
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(std::move(key));
            out.push_back(std::move(c));
        }
    }
    return out;
}

// Planar embedding of the word, or nullopt when none exists. Among the
// genus-0 realizations of an ambiguous word the canonically smallest one is
// returned; that choice keeps nested pairs read as clasps (a bigon between
// the paired crossings) rather than stacked curls.
inline std::optional<core::CurveDiagram> realize(const GaussCode& word) {
    std::vector<core::CurveDiagram> all = realize_all(word);
    if (all.empty())
        return std::nullopt;
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
        if (canonical(all[i]).bytes < canonical(all[best]).bytes)
            best = i;
    return std::move(all[best]);
}

inline std::string emit_quad(const core::CurveDiagram& c) {
    if (c.n() == 0)
        return "O " + std::to_string(c.circle_genus) + "\n";
    std::vector<int> order(static_cast<std::size_t>(c.n()));
    for (int k = 0; k < c.n(); ++k)
        order[static_cast<std::size_t>(k)] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.ids[static_cast<std::size_t>(a)] < c.ids[static_cast<std::size_t>(b)];
    });
    std::vector<int> edge_label(static_cast<std::size_t>(c.dart_count()), 0);
    int next = 1;
    std::string out;
    for (int k : order) {
        out += "X " + std::to_string(c.ids[static_cast<std::size_t>(k)]) + ":";
        for (int j = 0; j < 4; ++j) {
            const core::Dart d = 4 * k + j;
            if (edge_label[static_cast<std::size_t>(d)] == 0) {
                edge_label[static_cast<std::size_t>(d)] = next;
                edge_label[static_cast<std::size_t>(c.alpha[static_cast<std::size_t>(d)])] = next;
                ++next;
            }
            out += ' ' + std::to_string(edge_label[static_cast<std::size_t>(d)]);
        }
        out += '\n';
    }
    return out;
}

inline core::CurveDiagram parse_quad(const std::string& text) {
    std::vector<std::pair<int, std::array<int, 4>>> rows;
    std::optional<int> circle_genus;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::string head;
        if (!(tokens >> head))
            continue;
        if (head == "O") {
            int g = -1;
            if (!(tokens >> g) || g < 0)
                throw std::runtime_error("quad: bad circle record");
            std::string extra;
            if (tokens >> extra)
                throw std::runtime_error("quad: trailing token '" + extra + "'");
            circle_genus = g;
            continue;
        }
        if (head != "X")
            throw std::runtime_error("quad: unexpected token '" + head + "'");
        std::string id_tok;
        if (!(tokens >> id_tok) || id_tok.size() < 2 || id_tok.back() != ':')
            throw std::runtime_error("quad: malformed crossing header");
        int id = 0;
        try {
            id = std::stoi(id_tok.substr(0, id_tok.size() - 1));
        } catch (const std::exception&) {
            throw std::runtime_error("quad: bad crossing id '" + id_tok + "'");
        }
        std::array<int, 4> ends{};
        for (int j = 0; j < 4; ++j)
            if (!(tokens >> ends[static_cast<std::size_t>(j)]))
                throw std::runtime_error("quad: crossing " + std::to_string(id) +
                                         " does not list 4 edge ends");
        std::string extra;
        if (tokens >> extra)
            throw std::runtime_error("quad: crossing " + std::to_string(id) + " lists extra end '" +
                                     extra + "'");
        rows.emplace_back(id, ends);
    }
    if (circle_genus) {
        if (!rows.empty())
            throw std::runtime_error("quad: circle record mixed with crossings");
        return core::CurveDiagram::circle(*circle_genus);
    }
    if (rows.empty())
        throw std::runtime_error("quad: empty input");

    core::CurveDiagram c;
    const int n = static_cast<int>(rows.size());
    c.alpha.assign(static_cast<std::size_t>(4 * n), -1);
    std::map<int, std::vector<core::Dart>> ends_of_label;
    for (int k = 0; k < n; ++k) {
        c.ids.push_back(rows[static_cast<std::size_t>(k)].first);
        c.colors.push_back(core::Color::black);
        for (int j = 0; j < 4; ++j)
            ends_of_label[rows[static_cast<std::size_t>(k)].second[static_cast<std::size_t>(j)]]
                .push_back(4 * k + j);
    }
    c.next_id = *std::max_element(c.ids.begin(), c.ids.end()) + 1;
    for (const auto& [label, darts] : ends_of_label) {
        if (darts.size() != 2)
            throw std::runtime_error("quad: edge end " + std::to_string(label) + " appears " +
                                     std::to_string(darts.size()) + " times");
        c.alpha[static_cast<std::size_t>(darts[0])] = darts[1];
        c.alpha[static_cast<std::size_t>(darts[1])] = darts[0];
    }
    if (auto err = core::validate(c))
        throw std::runtime_error("quad: " + *err);
    return c;
}

} // namespace planaria::codec
