#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "zdf/fountain.hpp"
#include "zdf/ternary_word.hpp"

namespace zdf {

// Budget value treated as "no deadline" by the scheduled decoder.
inline constexpr std::int64_t kUnlimited = std::numeric_limits<std::int64_t>::max() / 4;

// The factor graph after packet-wise peeling: released variables are
// absorbed into the memories and removed from the neighbor lists, so the
// lists only reference unresolved-at-peel-time variables.
struct ResidualGraph {
    int n = 0;
    int ell = 0;
    int max_shift = 0;
    std::vector<std::vector<FactorGraph::Edge>> factors;
    std::vector<TernaryWord> memories;
    std::vector<TernaryWord> vars;
    std::vector<char> resolved_by_peeling;
    std::size_t edge_count = 0;
};

struct IterationRecord {
    std::int64_t iteration;   // tau
    int stage;                // 0 = original sweep, 1..3 = scheduled stages
    std::size_t processes;    // factor-node updates executed
    std::size_t updating;     // updates that recovered at least one bit
    std::size_t active;       // distinct edges that ever updated, cumulative
};

struct DecodeReport {
    bool success = false;
    std::size_t packet_stage_resolved = 0;
    std::int64_t bitwise_iterations = 0;
    std::size_t total_processes = 0;
    int restarts = 0;  // scheduled decoder returns to stage 1
    std::vector<IterationRecord> iterations;
    double decode_seconds = 0.0;  // bit-wise stage only
};

// Packet-wise peeling: any factor with a single unresolved neighbor
// releases it through its own window; the released packet is absorbed
// into every adjacent memory. Throws std::runtime_error when a memory is
// nonzero outside the release window (corrupted input).
ResidualGraph packet_wise_pa(const FactorGraph& g);

struct BitwiseResult {
    std::vector<TernaryWord> vars;
    DecodeReport report;
};

// Full-sweep bit-wise peeling: repeats factor-node processing over every
// residual edge in factor order until a sweep changes nothing.
BitwiseResult bitwise_original(const ResidualGraph& r);

// Three-stage scheduled bit-wise peeling. Stage 1 sweeps everything and
// collects first-time contributing edges into the duplicate-free list
// L^A; stage 2 replays L^A for up to t_b iterations recording every
// contribution into L^B (duplicates allowed); stage 3 replays L^B,
// dropping entries that stop contributing, and restarts stage 1 if
// unresolved variables remain at its fixed point.
BitwiseResult bitwise_scheduled(const ResidualGraph& r, std::int64_t t_a, std::int64_t t_b);

enum class Algorithm { original, scheduled };

struct DecodeOutcome {
    std::vector<TernaryWord> packets;
    DecodeReport report;
};

// Two-stage pipeline: packet-wise peeling, then the selected bit-wise
// algorithm if unresolved variables remain. Success iff all n precoded
// packets end fully known.
DecodeOutcome decode(const FactorGraph& g, Algorithm algo, std::int64_t t_a = kUnlimited,
                     std::int64_t t_b = 20);

}  // namespace zdf
