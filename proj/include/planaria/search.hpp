#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "planaria/codec.hpp"
#include "planaria/core.hpp"
#include "planaria/moves.hpp"

namespace planaria::search {

enum class Strategy : std::uint8_t { bfs, priority };
enum class StatusKind : std::uint8_t { simplified, exhausted, cap_hit };

inline std::string status_name(StatusKind s) {
    switch (s) {
    case StatusKind::simplified: return "simplified";
    case StatusKind::exhausted: return "exhausted";
    case StatusKind::cap_hit: return "cap_hit";
    }
    return {};
}

struct SearchConfig {
    std::vector<moves::MoveKind> kinds{moves::MoveKind::r1a, moves::MoveKind::r1b,
                                       moves::MoveKind::r2a, moves::MoveKind::r2b,
                                       moves::MoveKind::r3};
    int max_crossings = 0;
    long long max_states = -1; // unlimited when negative
    int max_depth = -1;        // unlimited when negative
    Strategy strategy = Strategy::bfs;
    bool mirror_quotient = false;
    int threads = 1;
    // Keep expanding after a 0-crossing state instead of returning early;
    // counting oracles need the full reachable set. Off by default so a run
    // reports `simplified` the moment an unknot presentation appears.
    bool exhaustive = false;
    // Performance lever, honored only together with max_depth; never used by
    // verification runs. Drops loop-insertion instances on a bare circle.
    bool restrict_r1b = false;
};

struct EdgeEvent {
    long long parent;
    const core::CurveDiagram& before;
    const moves::MoveInstance& move;
    const moves::MoveResult& result;
    long long child; // index of the reached state, -1 when beyond the crossing cap
    bool fresh;      // this edge discovered the child
};

struct SearchResult {
    StatusKind status = StatusKind::exhausted;
    std::string cap;       // "states" or "depth" when status == cap_hit
    int min_crossings = 0;
    long long visited = 0;
    long long edges = 0;
    long long frontier_peak = 0;
    std::vector<std::string> sequence; // serialized moves, start to goal
    std::optional<core::CurveDiagram> witness;
};

using StateVisitor = std::function<void(long long index, const core::CurveDiagram&, int depth)>;
using EdgeVisitor = std::function<void(const EdgeEvent&)>;

namespace detail {

struct StateRec {
    core::CurveDiagram diagram;
    long long parent = -1;
    moves::MoveInstance from;
    int depth = 0;
};

struct Job {
    long long parent;
    moves::MoveInstance move;
};

struct Expansion {
    moves::MoveResult result;
    std::string key;
};

inline std::vector<moves::MoveInstance> instances(const core::CurveDiagram& c,
                                                  const SearchConfig& cfg) {
    auto out = moves::enumerate(c, cfg.kinds);
    if (cfg.restrict_r1b && cfg.max_depth >= 0 && c.n() == 0)
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const moves::MoveInstance& m) {
                                     return m.kind == moves::MoveKind::r1b;
                                 }),
                  out.end());
    return out;
}

inline void expand_jobs(const std::vector<StateRec>& states, const std::vector<Job>& jobs,
                        std::vector<Expansion>& slots, bool mirror, int threads) {
    auto work = [&](std::size_t first, std::size_t step) {
        for (std::size_t j = first; j < jobs.size(); j += step) {
            slots[j].result = moves::apply(states[static_cast<std::size_t>(jobs[j].parent)].diagram,
                                           jobs[j].move);
            slots[j].key = codec::canonical(slots[j].result.after, mirror).bytes;
        }
    };
    if (threads <= 1 || jobs.size() < 2) {
        work(0, 1);
        return;
    }
    const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), jobs.size());
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        pool.emplace_back(work, i, t);
    for (auto& th : pool)
        th.join();
}

} // namespace detail

// Bounded reachability over the move graph, deduplicated by canonical code.
// Visit order, counters, and status are deterministic for a fixed config;
// `on_edge` fires for every applied move (before the child's `on_state` when
// the edge discovers a new state).
inline SearchResult explore(const core::CurveDiagram& start, const SearchConfig& cfg,
                            const StateVisitor& on_state = {}, const EdgeVisitor& on_edge = {}) {
    if (auto err = core::validate(start))
        throw std::invalid_argument("explore: invalid start: " + *err);
    if (cfg.max_crossings < start.n())
        throw std::invalid_argument("explore: start exceeds the crossing cap");
    if (cfg.max_states == 0)
        throw std::invalid_argument("explore: state cap must be positive");
    if (cfg.threads < 1)
        throw std::invalid_argument("explore: thread count must be positive");

    std::vector<detail::StateRec> states;
    std::unordered_map<std::string, long long> seen;
    SearchResult res;
    res.min_crossings = start.n();
    long long min_holder = 0;
    bool depth_pruned = false;

    states.push_back({start, -1, {}, 0});
    seen.emplace(codec::canonical(start, cfg.mirror_quotient).bytes, 0);
    res.visited = 1;
    if (on_state)
        on_state(0, states[0].diagram, 0);

    auto finish_simplified = [&](long long goal) {
        res.status = StatusKind::simplified;
        std::vector<long long> chain;
        for (long long i = goal; i >= 0; i = states[static_cast<std::size_t>(i)].parent)
            chain.push_back(i);
        std::reverse(chain.begin(), chain.end());
        for (std::size_t i = 1; i < chain.size(); ++i)
            res.sequence.push_back(moves::serialize(
                states[static_cast<std::size_t>(chain[i])].from,
                states[static_cast<std::size_t>(chain[i - 1])].diagram));
        res.witness = states[static_cast<std::size_t>(goal)].diagram;
    };

    if (start.n() == 0 && !cfg.exhaustive) {
        finish_simplified(0);
        return res;
    }

    // Ready states in expansion order: a FIFO level queue for breadth-first,
    // a (crossings, canonical, insertion) min-heap for priority order.
    std::vector<long long> fifo{0};
    std::size_t fifo_head = 0;
    using HeapItem = std::tuple<int, std::string, long long>;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>> heap;
    if (cfg.strategy == Strategy::priority)
        heap.emplace(start.n(), codec::canonical(start, cfg.mirror_quotient).bytes, 0);

    auto pending = [&]() {
        return cfg.strategy == Strategy::bfs ? fifo.size() - fifo_head : heap.size();
    };

    while (pending() > 0) {
        res.frontier_peak = std::max(res.frontier_peak, static_cast<long long>(pending()));
        std::vector<long long> batch;
        if (cfg.strategy == Strategy::bfs) {
            while (fifo_head < fifo.size())
                batch.push_back(fifo[fifo_head++]);
            fifo.clear();
            fifo_head = 0;
        } else {
            batch.push_back(std::get<2>(heap.top()));
            heap.pop();
        }

        std::vector<detail::Job> jobs;
        std::vector<char> probe_only;
        for (long long s : batch) {
            const auto& rec = states[static_cast<std::size_t>(s)];
            const bool at_depth = cfg.max_depth >= 0 && rec.depth >= cfg.max_depth;
            for (const auto& m : detail::instances(rec.diagram, cfg)) {
                jobs.push_back({s, m});
                probe_only.push_back(at_depth ? 1 : 0);
            }
        }
        if (jobs.empty())
            continue;

        std::vector<detail::Expansion> slots(jobs.size());
        detail::expand_jobs(states, jobs, slots, cfg.mirror_quotient, cfg.threads);

        for (std::size_t j = 0; j < jobs.size(); ++j) {
            ++res.edges;
            const auto& parent_rec = states[static_cast<std::size_t>(jobs[j].parent)];
            const core::CurveDiagram& child = slots[j].result.after;
            if (child.n() > cfg.max_crossings) {
                if (on_edge && !probe_only[j])
                    on_edge({jobs[j].parent, parent_rec.diagram, jobs[j].move, slots[j].result,
                             -1, false});
                continue;
            }
            const auto hit = seen.find(slots[j].key);
            if (probe_only[j]) {
                if (hit == seen.end())
                    depth_pruned = true;
                continue;
            }
            if (hit != seen.end()) {
                if (on_edge)
                    on_edge({jobs[j].parent, parent_rec.diagram, jobs[j].move, slots[j].result,
                             hit->second, false});
                continue;
            }
            if (cfg.max_states > 0 && res.visited >= cfg.max_states) {
                res.status = StatusKind::cap_hit;
                res.cap = "states";
                res.witness = states[static_cast<std::size_t>(min_holder)].diagram;
                return res;
            }
            const long long idx = static_cast<long long>(states.size());
            states.push_back({child, jobs[j].parent, jobs[j].move, parent_rec.depth + 1});
            seen.emplace(slots[j].key, idx);
            ++res.visited;
            if (child.n() < res.min_crossings) {
                res.min_crossings = child.n();
                min_holder = idx;
            }
            if (on_edge)
                on_edge({jobs[j].parent, states[static_cast<std::size_t>(jobs[j].parent)].diagram,
                         jobs[j].move, slots[j].result, idx, true});
            if (on_state)
                on_state(idx, states[static_cast<std::size_t>(idx)].diagram,
                         states[static_cast<std::size_t>(idx)].depth);
            if (child.n() == 0 && !cfg.exhaustive) {
                finish_simplified(idx);
                return res;
            }
            if (cfg.strategy == Strategy::bfs)
                fifo.push_back(idx);
            else
                heap.emplace(child.n(), slots[j].key, idx);
        }
    }

    if (depth_pruned) {
        res.status = StatusKind::cap_hit;
        res.cap = "depth";
    } else {
        res.status = StatusKind::exhausted;
    }
    res.witness = states[static_cast<std::size_t>(min_holder)].diagram;
    return res;
}

// Folds moves over the start diagram; failures name the offending step.
inline core::CurveDiagram replay(const core::CurveDiagram& start,
                                 const std::vector<moves::MoveInstance>& sequence) {
    core::CurveDiagram cur = start;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        try {
            cur = moves::apply(cur, sequence[i]).after;
        } catch (const std::exception& e) {
            throw std::invalid_argument("replay: step " + std::to_string(i) + ": " + e.what());
        }
    }
    return cur;
}

// Serialized form: each line is parsed against the diagram it applies to.
inline std::vector<moves::MoveInstance> parse_sequence(const core::CurveDiagram& start,
                                                       const std::vector<std::string>& sequence) {
    std::vector<moves::MoveInstance> out;
    out.reserve(sequence.size());
    core::CurveDiagram cur = start;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        try {
            const moves::MoveInstance m = moves::parse_move(sequence[i], cur);
            cur = moves::apply(cur, m).after;
            out.push_back(m);
        } catch (const std::exception& e) {
            throw std::invalid_argument("replay: step " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

inline core::CurveDiagram replay(const core::CurveDiagram& start,
                                 const std::vector<std::string>& sequence) {
    core::CurveDiagram cur = start;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        try {
            cur = moves::apply(cur, moves::parse_move(sequence[i], cur)).after;
        } catch (const std::exception& e) {
            throw std::invalid_argument("replay: step " + std::to_string(i) + ": " + e.what());
        }
    }
    return cur;
}

} // namespace planaria::search
