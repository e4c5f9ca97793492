#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planaria/core.hpp"
#include "planaria/moves.hpp"
#include "planaria/obstruction.hpp"
#include "planaria/search.hpp"

namespace planaria::verify {

enum class Mechanism { cert, gauss, both };

inline Mechanism parse_mechanism(const std::string& name) {
    if (name == "cert")
        return Mechanism::cert;
    if (name == "gauss")
        return Mechanism::gauss;
    if (name == "both")
        return Mechanism::both;
    throw std::invalid_argument("verify: unknown mechanism " + name);
}

struct MainReport {
    search::StatusKind status = search::StatusKind::exhausted;
    int cap = 0;
    int min_crossings = 0;
    long long states = 0;
    long long edges = 0;
    long long violation_count = 0;
    std::vector<std::string> violations; // first few, in discovery order

    [[nodiscard]] bool verified() const {
        return violation_count == 0 && min_crossings == 16 &&
               status != search::StatusKind::cap_hit;
    }
};

// Explores the start curve under {R1a,R1b,R3} up to the crossing cap and
// runs the selected obstruction mechanisms at every state and discovery
// edge: the box certificate is transported along each move and re-checked,
// and the colored chord diagram is lifted and tested against the necklace
// predicate. Every breach is recorded; the sabotage switch corrupts loop
// removal transports so the fault path stays demonstrably live.
inline MainReport verify_main(const core::CurveDiagram& start,
                              const obstruction::BoxCertificate& cert,
                              const search::SearchConfig& cfg, Mechanism mech,
                              bool sabotage = false) {
    MainReport rep;
    rep.cap = cfg.max_crossings;
    const bool use_cert = mech != Mechanism::gauss;
    const bool use_gauss = mech != Mechanism::cert;

    if (use_cert)
        if (auto v = obstruction::check_certificate(start, cert))
            throw std::invalid_argument("verify_main: start certificate is invalid: " +
                                        v->property + " at " + v->location);

    search::SearchConfig run = cfg;
    run.kinds = {moves::MoveKind::r1a, moves::MoveKind::r1b, moves::MoveKind::r3};

    const auto report = [&rep](std::string text) {
        if (rep.violations.size() < 16)
            rep.violations.push_back(std::move(text));
        ++rep.violation_count;
    };

    std::vector<std::optional<obstruction::BoxCertificate>> cert_of;
    if (use_cert)
        cert_of.push_back(cert);

    const search::SearchResult res = search::explore(
        start, run,
        [&](long long idx, const core::CurveDiagram& s, int) {
            if (s.n() < 16)
                report("state " + std::to_string(idx) + " has " + std::to_string(s.n()) +
                       " crossings");
            if (use_cert) {
                const auto& held = cert_of.at(static_cast<std::size_t>(idx));
                if (held) {
                    if (auto v = obstruction::check_certificate(s, *held))
                        report("certificate broke " + v->property + " at " + v->location +
                               " on state " + std::to_string(idx));
                }
            }
            if (use_gauss) {
                try {
                    if (auto v = obstruction::check_gauss_predicate(obstruction::make_colored(s)))
                        report("chord predicate broke " + v->property + " at " + v->location +
                               " on state " + std::to_string(idx));
                } catch (const std::exception& e) {
                    report(std::string("chord predicate failed on state ") +
                           std::to_string(idx) + ": " + e.what());
                }
            }
        },
        [&](const search::EdgeEvent& ev) {
            if (!ev.fresh || ev.child < 0)
                return;
            if (use_cert) {
                if (static_cast<long long>(cert_of.size()) != ev.child)
                    throw std::logic_error("verify_main: discovery edges arrived out of order");
                const auto& held = cert_of.at(static_cast<std::size_t>(ev.parent));
                std::optional<obstruction::BoxCertificate> carried;
                if (held) {
                    obstruction::TransportResult tr = obstruction::transport(
                        ev.before, *held, ev.move, ev.result.after, sabotage);
                    if (tr.cert)
                        carried = std::move(tr.cert);
                    else
                        report("transport failed into state " + std::to_string(ev.child) +
                               ": " + tr.failure);
                }
                cert_of.push_back(std::move(carried));
            }
            if (use_gauss) {
                try {
                    (void)obstruction::lift_move(obstruction::make_colored(ev.before), ev.move,
                                                 ev.before, ev.result.after);
                } catch (const std::exception& e) {
                    report("chord lift failed into state " + std::to_string(ev.child) + ": " +
                           e.what());
                }
            }
        });

    rep.status = res.status;
    rep.min_crossings = res.min_crossings;
    rep.states = res.visited;
    rep.edges = res.edges;
    if (res.status == search::StatusKind::simplified)
        report("reached an embedded state");
    return rep;
}

} // namespace planaria::verify
