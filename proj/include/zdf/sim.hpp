#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "zdf/decoder.hpp"
#include "zdf/distributions.hpp"
#include "zdf/fountain.hpp"
#include "zdf/precode.hpp"

namespace zdf::sim {

// Stage-1 budget rule for the scheduled decoder: an explicit iteration
// count, 6/alpha rounded up, or no deadline.
struct TaRule {
    enum class Kind { explicit_value, six_over_alpha, infinite };
    Kind kind = Kind::infinite;
    std::int64_t value = 0;

    static TaRule parse(const std::string& text);  // "<int>" | "6/alpha" | "inf"
    std::int64_t resolve(double alpha) const;
    std::string describe() const;
};

struct ExperimentConfig {
    int n = 1000;
    int ell = 100;
    std::vector<double> alphas;
    int trials = 1;
    std::string algo = "both";  // original | scheduled | both
    TaRule t_a;
    std::int64_t t_b = 20;
    std::uint64_t seed = 1;
    int workers = 1;
    std::int64_t per_iteration_trial = -1;  // trial id to dump, -1 = none
    std::string omega_preset = "zdf-paper-omega";
    std::string delta_preset = "zdf-paper-delta";
    std::string out_dir = ".";
};

void validate_config(const ExperimentConfig& cfg);  // throws std::invalid_argument

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int k_prime = 0;
    bool success = false;
    std::size_t packet_stage_resolved = 0;
    std::int64_t bitwise_iterations = 0;
    std::size_t total_processes = 0;
    double decode_seconds = 0.0;
    double build_seconds = 0.0;
    std::vector<IterationRecord> iterations;  // kept only when requested
};

// Precode fixed across the trials of one experiment.
struct CodeContext {
    ParityCheck h;
    EncoderPlan plan;
    int k = 0;
};

// Builds the (3,30)-regular precode for the seed, retrying with derived
// seeds if Gaussian elimination finds the matrix rank deficient.
CodeContext make_code_context(int n, std::uint64_t seed);

// One seeded end-to-end trial: random sources, precode, k' = ceil(k(1+a))
// output packets, graph build, decode, ground-truth verification. A
// success that does not reproduce the sources exactly throws.
TrialRecord run_trial(const CodeContext& code, const DegreeDistribution& omega,
                      const ShiftDistribution& delta, int ell, double alpha, Algorithm algo,
                      std::int64_t t_a, std::int64_t t_b, int trial_id, std::uint64_t trial_seed,
                      bool keep_iterations);

struct AggregateRow {
    double alpha = 0.0;
    std::string algo;
    int trials = 0;
    int failures = 0;
    double der = 0.0;
    double der_ci_lo = 0.0;
    double der_ci_hi = 0.0;
    double mean_processes = 0.0;
    double mean_bitwise_iters = 0.0;
    double mean_decode_ms = 0.0;
};

// Wilson 95% binomial interval.
std::pair<double, double> binomial_ci95(int failures, int trials);

AggregateRow aggregate(double alpha, const std::string& algo,
                       const std::vector<TrialRecord>& records);

// Runs the full grid and writes aggregate.csv (plus per-iteration CSVs
// when requested) under cfg.out_dir. Returns the aggregate rows.
std::vector<AggregateRow> run_experiment(const ExperimentConfig& cfg);

void write_aggregate_csv(std::ostream& out, const ExperimentConfig& cfg, int k,
                         const std::vector<AggregateRow>& rows);
void write_iteration_csv(std::ostream& out, const std::vector<IterationRecord>& records);

// Reshapes an aggregate CSV into two-column gnuplot files per algorithm
// (alpha vs DER, mean processes, mean decode time) under out_dir.
void emit_plotdata(std::istream& aggregate_csv, const std::string& out_dir);

// Drops the stage column of a per-iteration CSV, yielding the
// (iteration, processes, updating, active) curves of the figures.
void emit_iteration_plotdata(std::istream& per_iteration_csv, std::ostream& out);

}  // namespace zdf::sim
