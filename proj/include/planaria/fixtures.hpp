#pragma once

#include <array>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"
#include "planaria/obstruction.hpp"
#include "planaria/search.hpp"
#include "planaria/transforms.hpp"

namespace planaria::fixtures {

// The sixteen-crossing curve is a necklace of eight two-crossing beads; box k
// holds crossings 2k+1 and 2k+2, and the strand visits bead k+1 before
// closing bead k.
inline codec::GaussCode necklace_word() {
    codec::GaussCode w;
    for (int k = 0; k < 8; ++k) {
        const int up = (k + 1) % 8;
        w.push_back(2 * up + 1);
        w.push_back(2 * up + 2);
        w.push_back(2 * k + 2);
        w.push_back(2 * k + 1);
    }
    return w;
}

inline std::array<std::vector<int>, 8> necklace_boxes() {
    std::array<std::vector<int>, 8> boxes;
    for (int k = 0; k < 8; ++k)
        boxes[static_cast<std::size_t>(k)] = {2 * k + 1, 2 * k + 2};
    return boxes;
}

inline core::CurveDiagram main_curve() {
    for (core::CurveDiagram& c : codec::realize_all(necklace_word())) {
        const auto cert = obstruction::derive_certificate(c, necklace_boxes());
        if (cert && !obstruction::check_certificate(c, *cert))
            return std::move(c);
    }
    throw std::logic_error("fixtures: no certified realization of the necklace word");
}

// Two crossings on the torus whose complement is a single genus-one face.
inline core::CurveDiagram torus_clasp() {
    core::CurveDiagram c;
    c.alpha = {7, 6, 4, 5, 2, 3, 1, 0};
    c.ids = {1, 2};
    c.colors = {core::Color::black, core::Color::black};
    c.next_id = 3;
    return c;
}

struct Bundle {
    std::vector<std::pair<std::string, core::CurveDiagram>> diagrams;
    std::vector<std::pair<std::string, std::vector<std::string>>> sequences;
    std::string certificate;

    [[nodiscard]] const core::CurveDiagram& diagram(const std::string& name) const {
        for (const auto& [key, value] : diagrams)
            if (key == name)
                return value;
        throw std::out_of_range("fixtures: no diagram named " + name);
    }

    [[nodiscard]] const std::vector<std::string>& sequence(const std::string& name) const {
        for (const auto& [key, value] : sequences)
            if (key == name)
                return value;
        throw std::out_of_range("fixtures: no sequence named " + name);
    }
};

namespace detail {

inline std::vector<std::string> serialize_sequence(const core::CurveDiagram& start,
                                                   const std::vector<moves::MoveInstance>& seq) {
    std::vector<std::string> out;
    out.reserve(seq.size());
    core::CurveDiagram cur = start;
    for (const moves::MoveInstance& m : seq) {
        out.push_back(moves::serialize(m, cur));
        cur = moves::apply(cur, m).after;
    }
    return out;
}

inline std::vector<moves::MoveInstance> monogon_cascade(const core::CurveDiagram& start) {
    std::vector<moves::MoveInstance> out;
    core::CurveDiagram cur = start;
    while (cur.n() > 0) {
        const auto ms = moves::enumerate(cur, {moves::MoveKind::r1a});
        if (ms.empty())
            throw std::logic_error("fixtures: the seed stopped cascading");
        out.push_back(ms.front());
        cur = moves::apply(cur, ms.front()).after;
    }
    return out;
}

} // namespace detail

inline Bundle generate() {
    const auto realized = [](const codec::GaussCode& word) {
        auto c = codec::realize(word);
        if (!c)
            throw std::logic_error("fixtures: unrealizable seed word");
        return *c;
    };

    const core::CurveDiagram kink = realized({1, 1});
    const core::CurveDiagram seed = realized({1, 1, 2, 2});
    const core::CurveDiagram trefoil = realized({1, 2, 3, 1, 2, 3});

    Bundle b;

    const transforms::Lemma6Sequence l6 = transforms::lemma6_sequence();
    b.diagrams.emplace_back("lemma6.left", l6.start);
    b.diagrams.emplace_back("lemma6.right", search::replay(l6.start, l6.moves));
    b.sequences.emplace_back("lemma6.left", detail::serialize_sequence(l6.start, l6.moves));

    b.diagrams.emplace_back("tangle.double_bigon", transforms::expand_double_bigon(kink, 1));

    // The monogon-removal substitute, demonstrated in situ: expand one
    // crossing of the double curl and transport its cascade across.
    const core::CurveDiagram sub1a = transforms::expand_many(seed, {2});
    const auto carried =
        transforms::transport_sequence(detail::monogon_cascade(seed), seed, sub1a, {2});
    b.diagrams.emplace_back("theorem3.sub1a", sub1a);
    b.sequences.emplace_back("theorem3.sub1a", detail::serialize_sequence(sub1a, carried));

    // The triangle-slide substitute site: a strand crossing the expanded box.
    b.diagrams.emplace_back("theorem3.sub3", transforms::expand_many(trefoil, {1}));

    // The certificate names star faces by index, so the curve is pinned to
    // the representation the bundle file reconstructs.
    const core::CurveDiagram fig3 = codec::parse_quad(codec::emit_quad(main_curve()));
    b.diagrams.emplace_back("fig3.main", fig3);
    b.diagrams.emplace_back("fig4.expanded", transforms::expand_all(seed));
    b.diagrams.emplace_back("small.seed", seed);
    b.diagrams.emplace_back("torus.left", core::CurveDiagram::circle(1));
    b.diagrams.emplace_back("torus.right", torus_clasp());

    const auto cert = obstruction::derive_certificate(fig3, necklace_boxes());
    if (!cert)
        throw std::logic_error("fixtures: the main curve lost its certificate");
    b.certificate = obstruction::emit_certificate(*cert);
    return b;
}

inline std::string bundle_text(const Bundle& b) {
    std::string out = "# Curve fixtures. Regenerate with make_fixtures; the test suite fails on drift.\n";
    for (const auto& [name, diagram] : b.diagrams) {
        out += "= " + name + "\n";
        out += codec::emit_quad(diagram);
    }
    for (const auto& [name, seq] : b.sequences) {
        out += "S " + name + ":";
        for (const std::string& step : seq)
            out += " " + step;
        out += "\n";
    }
    return out;
}

inline Bundle parse_bundle(const std::string& text) {
    Bundle b;
    std::string name;
    std::string body;
    const auto flush = [&] {
        if (name.empty()) {
            if (body.find_first_not_of(" \t\r\n") != std::string::npos)
                throw std::runtime_error("fixtures: content before the first section");
            return;
        }
        b.diagrams.emplace_back(name, codec::parse_quad(body));
        name.clear();
        body.clear();
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (name.empty() && !line.empty() && line[0] == '#')
            continue;
        if (line.rfind("= ", 0) == 0) {
            flush();
            name = line.substr(2);
            if (name.empty())
                throw std::runtime_error("fixtures: empty section name");
        } else if (line.rfind("S ", 0) == 0) {
            flush();
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                throw std::runtime_error("fixtures: malformed sequence line: " + line);
            std::vector<std::string> steps;
            std::istringstream rest(line.substr(colon + 1));
            std::string step;
            while (rest >> step)
                steps.push_back(step);
            b.sequences.emplace_back(line.substr(2, colon - 2), std::move(steps));
        } else {
            body += line;
            body += '\n';
        }
    }
    flush();
    return b;
}

inline std::string fixtures_dir() {
    if (const char* env = std::getenv("PLANARIA_FIXTURES"); env && *env)
        return env;
    return "fixtures";
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("fixtures: cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

inline Bundle load(const std::string& dir) {
    Bundle b = parse_bundle(detail::read_file(dir + "/fixtures.quad"));
    std::ifstream cert(dir + "/fig3.cert", std::ios::binary);
    if (cert) {
        std::ostringstream buf;
        buf << cert.rdbuf();
        b.certificate = buf.str();
    }
    return b;
}

} // namespace planaria::fixtures
