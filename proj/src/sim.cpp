#include "zdf/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zdf/rng.hpp"

namespace zdf::sim {

TaRule TaRule::parse(const std::string& text) {
    TaRule rule;
    if (text == "inf" || text == "infinite") {
        rule.kind = Kind::infinite;
    } else if (text == "6/alpha") {
        rule.kind = Kind::six_over_alpha;
    } else {
        rule.kind = Kind::explicit_value;
        try {
            rule.value = std::stoll(text);
        } catch (const std::exception&) {
            throw std::invalid_argument("t_a rule must be <int>, 6/alpha or inf: " + text);
        }
        if (rule.value < 1) throw std::invalid_argument("t_a must be >= 1");
    }
    return rule;
}

std::int64_t TaRule::resolve(double alpha) const {
    switch (kind) {
        case Kind::explicit_value: return value;
        case Kind::six_over_alpha: return static_cast<std::int64_t>(std::ceil(6.0 / alpha));
        case Kind::infinite: return kUnlimited;
    }
    return kUnlimited;
}

std::string TaRule::describe() const {
    switch (kind) {
        case Kind::explicit_value: return std::to_string(value);
        case Kind::six_over_alpha: return "6/alpha";
        case Kind::infinite: return "inf";
    }
    return "inf";
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.alphas.empty()) throw std::invalid_argument("config: alpha list is empty");
    for (double a : cfg.alphas) {
        if (a <= 0.0) throw std::invalid_argument("config: alpha must be > 0");
    }
    if (cfg.trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.n < 1 || cfg.ell < 1) throw std::invalid_argument("config: n and ell must be >= 1");
    if (cfg.workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    if (cfg.t_b < 1) throw std::invalid_argument("config: t_b must be >= 1");
    if (cfg.algo != "original" && cfg.algo != "scheduled" && cfg.algo != "both") {
        throw std::invalid_argument("config: algo must be original, scheduled or both");
    }
    degree_preset(cfg.omega_preset);
    shift_preset(cfg.delta_preset);
}

CodeContext make_code_context(int n, std::uint64_t seed) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        const std::uint64_t s = attempt == 0 ? seed : splitmix64(seed + static_cast<std::uint64_t>(attempt));
        ParityCheck h = build_regular_ldpc(n, 3, 30, s);
        try {
            EncoderPlan plan = make_encoder(h);
            const int k = static_cast<int>(plan.systematic.size());
            return {std::move(h), std::move(plan), k};
        } catch (const std::runtime_error&) {
            // rank deficient, rebuild with a derived seed
        }
    }
    throw std::runtime_error("make_code_context: no full-rank precode found");
}

namespace {

TernaryWord random_packet(int ell, Rng& rng) {
    TernaryWord w(static_cast<std::size_t>(ell));
    std::uint64_t bits = 0;
    for (int p = 0; p < ell; ++p) {
        if (p % 64 == 0) bits = rng();
        w.set_bit(static_cast<std::size_t>(p), static_cast<int>((bits >> (p % 64)) & 1));
    }
    return w;
}

}  // namespace

TrialRecord run_trial(const CodeContext& code, const DegreeDistribution& omega,
                      const ShiftDistribution& delta, int ell, double alpha, Algorithm algo,
                      std::int64_t t_a, std::int64_t t_b, int trial_id, std::uint64_t trial_seed,
                      bool keep_iterations) {
    TrialRecord rec;
    rec.trial = trial_id;
    rec.seed = trial_seed;
    rec.k_prime = static_cast<int>(std::ceil(code.k * (1.0 + alpha)));

    Rng rng(trial_seed);
    std::vector<TernaryWord> source;
    source.reserve(static_cast<std::size_t>(code.k));
    for (int i = 0; i < code.k; ++i) source.push_back(random_packet(ell, rng));
    const std::uint64_t encoder_seed = rng();

    const auto build_start = std::chrono::steady_clock::now();
    const std::vector<TernaryWord> precoded = precode_packets(code.plan, code.h, source);
    FountainEncoder encoder(precoded, omega, delta, encoder_seed);
    std::vector<OutputPacket> received;
    received.reserve(static_cast<std::size_t>(rec.k_prime));
    for (int t = 0; t < rec.k_prime; ++t) received.push_back(encoder.next());
    const FactorGraph g = build_factor_graph(code.h, received, ell, delta.max_shift());
    rec.build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - build_start).count();

    DecodeOutcome outcome = decode(g, algo, t_a, t_b);
    rec.success = outcome.report.success;
    rec.packet_stage_resolved = outcome.report.packet_stage_resolved;
    rec.bitwise_iterations = outcome.report.bitwise_iterations;
    rec.total_processes = outcome.report.total_processes;
    rec.decode_seconds = outcome.report.decode_seconds;
    if (keep_iterations) rec.iterations = std::move(outcome.report.iterations);

    if (rec.success && outcome.packets != precoded) {
        throw std::runtime_error("run_trial: decode reported success but packets differ from truth");
    }
    return rec;
}

std::pair<double, double> binomial_ci95(int failures, int trials) {
    constexpr double z = 1.959963984540054;
    const double t = trials;
    const double phat = failures / t;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / t;
    const double center = (phat + z2 / (2.0 * t)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / t + z2 / (4.0 * t * t)) / denom;
    const double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

AggregateRow aggregate(double alpha, const std::string& algo,
                       const std::vector<TrialRecord>& records) {
    AggregateRow row;
    row.alpha = alpha;
    row.algo = algo;
    row.trials = static_cast<int>(records.size());
    double processes = 0.0, iters = 0.0, ms = 0.0;
    for (const auto& r : records) {
        if (!r.success) ++row.failures;
        processes += static_cast<double>(r.total_processes);
        iters += static_cast<double>(r.bitwise_iterations);
        ms += r.decode_seconds * 1e3;
    }
    row.der = static_cast<double>(row.failures) / row.trials;
    std::tie(row.der_ci_lo, row.der_ci_hi) = binomial_ci95(row.failures, row.trials);
    row.mean_processes = processes / row.trials;
    row.mean_bitwise_iters = iters / row.trials;
    row.mean_decode_ms = ms / row.trials;
    return row;
}

namespace {

std::vector<TrialRecord> run_point(const CodeContext& code, const ExperimentConfig& cfg,
                                   const DegreeDistribution& omega, const ShiftDistribution& delta,
                                   double alpha, std::size_t alpha_index, Algorithm algo,
                                   std::int64_t t_a) {
    std::vector<TrialRecord> records(static_cast<std::size_t>(cfg.trials));
    std::atomic<int> next{0};
    auto worker = [&] {
        while (true) {
            const int t = next.fetch_add(1);
            if (t >= cfg.trials) return;
            const std::uint64_t seed =
                derive_trial_seed(cfg.seed, alpha_index, static_cast<std::uint64_t>(t));
            records[static_cast<std::size_t>(t)] =
                run_trial(code, omega, delta, cfg.ell, alpha, algo, t_a, cfg.t_b, t, seed,
                          cfg.per_iteration_trial == t);
        }
    };
    // Timing comparisons need exclusive use of the core; only fan out when
    // asked.
    if (cfg.workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return records;
}

std::string format_alpha(double alpha) {
    std::ostringstream s;
    s << alpha;
    return s.str();
}

}  // namespace

void write_aggregate_csv(std::ostream& out, const ExperimentConfig& cfg, int k,
                         const std::vector<AggregateRow>& rows) {
    out << "# rng=" << kRngAlgorithm << " seed=" << cfg.seed << " n=" << cfg.n << " k=" << k
        << " ell=" << cfg.ell << " t_a=" << cfg.t_a.describe() << " t_b=" << cfg.t_b
        << " omega=" << cfg.omega_preset << " delta=" << cfg.delta_preset << '\n';
    out << "alpha,algo,trials,failures,der,der_ci_lo,der_ci_hi,mean_processes,"
           "mean_bitwise_iters,mean_decode_ms\n";
    out << std::setprecision(10);
    for (const auto& r : rows) {
        out << r.alpha << ',' << r.algo << ',' << r.trials << ',' << r.failures << ',' << r.der
            << ',' << r.der_ci_lo << ',' << r.der_ci_hi << ',' << r.mean_processes << ','
            << r.mean_bitwise_iters << ',' << r.mean_decode_ms << '\n';
    }
}

void write_iteration_csv(std::ostream& out, const std::vector<IterationRecord>& records) {
    out << "iteration,stage,processes,updating,active\n";
    for (const auto& r : records) {
        out << r.iteration << ',' << r.stage << ',' << r.processes << ',' << r.updating << ','
            << r.active << '\n';
    }
}

std::vector<AggregateRow> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const DegreeDistribution omega = degree_preset(cfg.omega_preset);
    const ShiftDistribution delta = shift_preset(cfg.delta_preset);
    const CodeContext code = make_code_context(cfg.n, cfg.seed);

    std::vector<std::string> algos;
    if (cfg.algo == "original" || cfg.algo == "both") algos.push_back("original");
    if (cfg.algo == "scheduled" || cfg.algo == "both") algos.push_back("scheduled");

    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);

    std::vector<AggregateRow> rows;
    for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai) {
        const double alpha = cfg.alphas[ai];
        for (const auto& name : algos) {
            const Algorithm algo =
                name == "original" ? Algorithm::original : Algorithm::scheduled;
            const std::int64_t t_a =
                algo == Algorithm::original ? kUnlimited : cfg.t_a.resolve(alpha);
            const auto records = run_point(code, cfg, omega, delta, alpha, ai, algo, t_a);
            rows.push_back(aggregate(alpha, name, records));

            if (cfg.per_iteration_trial >= 0 && cfg.per_iteration_trial < cfg.trials) {
                const auto& rec = records[static_cast<std::size_t>(cfg.per_iteration_trial)];
                std::ofstream f(fs::path(cfg.out_dir) /
                                ("per_iteration_" + name + "_alpha" + format_alpha(alpha) +
                                 "_trial" + std::to_string(rec.trial) + ".csv"));
                write_iteration_csv(f, rec.iterations);
            }
        }
    }

    std::ofstream agg(fs::path(cfg.out_dir) / "aggregate.csv");
    if (!agg) throw std::runtime_error("run_experiment: cannot write aggregate.csv");
    write_aggregate_csv(agg, cfg, code.k, rows);
    return rows;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

void emit_plotdata(std::istream& aggregate_csv, const std::string& out_dir) {
    std::string line;
    std::vector<std::string> header;
    while (std::getline(aggregate_csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv(line);
        break;
    }
    auto col = [&header](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw std::runtime_error("emit_plotdata: missing column " + name);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_alpha = col("alpha");
    const std::size_t c_algo = col("algo");
    const std::map<std::string, std::size_t> metrics = {
        {"der", col("der")},
        {"processes", col("mean_processes")},
        {"time_ms", col("mean_decode_ms")},
    };

    std::map<std::string, std::ostringstream> files;  // metric_algo -> rows
    while (std::getline(aggregate_csv, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split_csv(line);
        if (cells.size() < header.size()) throw std::runtime_error("emit_plotdata: short row");
        for (const auto& [metric, ci] : metrics) {
            files[metric + "_" + cells[c_algo]] << cells[c_alpha] << ' ' << cells[ci] << '\n';
        }
    }
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (const auto& [name, body] : files) {
        std::ofstream f(fs::path(out_dir) / ("plot_" + name + ".dat"));
        f << "# alpha value\n" << body.str();
    }
}

void emit_iteration_plotdata(std::istream& per_iteration_csv, std::ostream& out) {
    std::string line;
    if (!std::getline(per_iteration_csv, line)) {
        throw std::runtime_error("emit_iteration_plotdata: empty input");
    }
    const auto header = split_csv(line);
    const std::vector<std::string> wanted = {"iteration", "processes", "updating", "active"};
    std::vector<std::size_t> idx;
    for (const auto& name : wanted) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("emit_iteration_plotdata: missing column " + name);
        }
        idx.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    out << "# iteration processes updating active\n";
    while (std::getline(per_iteration_csv, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            out << cells[idx[i]] << (i + 1 < idx.size() ? ' ' : '\n');
        }
    }
}

}  // namespace zdf::sim
