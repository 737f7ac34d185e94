#include "zdf/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zdf {

namespace {

std::vector<DegreeEntry> drop_zero_entries(std::vector<DegreeEntry> entries) {
    std::vector<DegreeEntry> kept;
    kept.reserve(entries.size());
    for (const auto& e : entries) {
        if (e.probability != 0.0) kept.push_back(e);
    }
    return kept;
}

}  // namespace

std::optional<std::string> validate_degree_entries(const std::vector<DegreeEntry>& entries) {
    if (entries.empty()) return "degree distribution has no entries";
    double sum = 0.0;
    int prev = 0;
    for (const auto& e : entries) {
        if (e.degree < 1) return "degree below 1";
        if (e.degree <= prev) return "degrees not strictly increasing";
        if (e.probability <= 0.0 || e.probability > 1.0) return "probability outside (0,1]";
        prev = e.degree;
        sum += e.probability;
    }
    if (std::abs(sum - 1.0) > kDistributionSumTolerance) return "probabilities do not sum to 1";
    return std::nullopt;
}

std::optional<std::string> validate_shift_probs(const std::vector<double>& probs) {
    if (probs.empty()) return "shift distribution has no entries";
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || p > 1.0) return "probability outside [0,1]";
        sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionSumTolerance) return "probabilities do not sum to 1";
    return std::nullopt;
}

DegreeDistribution::DegreeDistribution(std::vector<DegreeEntry> entries)
    : entries_(drop_zero_entries(std::move(entries))) {
    if (auto err = validate_degree_entries(entries_)) {
        throw std::invalid_argument("DegreeDistribution: " + *err);
    }
    cdf_.reserve(entries_.size());
    double acc = 0.0;
    for (const auto& e : entries_) {
        acc += e.probability;
        cdf_.push_back(acc);
    }
}

int DegreeDistribution::sample(double u) const {
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
        if (cdf_[i] > u) return entries_[i].degree;
    }
    return entries_.back().degree;
}

ShiftDistribution::ShiftDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (auto err = validate_shift_probs(probs_)) {
        throw std::invalid_argument("ShiftDistribution: " + *err);
    }
    cdf_.reserve(probs_.size());
    double acc = 0.0;
    for (double p : probs_) {
        acc += p;
        cdf_.push_back(acc);
    }
}

int ShiftDistribution::sample_one(double u) const {
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
        if (cdf_[i] > u) return static_cast<int>(i);
    }
    return max_shift();
}

namespace {

std::vector<std::pair<int, double>> parse_table(std::istream& in) {
    std::vector<std::pair<int, double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("distribution table: missing ':' in line \"" + line + "\"");
        }
        try {
            rows.emplace_back(std::stoi(line.substr(0, colon)), std::stod(line.substr(colon + 1)));
        } catch (const std::exception&) {
            throw std::invalid_argument("distribution table: bad number in line \"" + line + "\"");
        }
    }
    return rows;
}

}  // namespace

DegreeDistribution load_degree_distribution(std::istream& in) {
    std::vector<DegreeEntry> entries;
    for (const auto& [d, p] : parse_table(in)) entries.push_back({d, p});
    return DegreeDistribution(std::move(entries));
}

ShiftDistribution load_shift_distribution(std::istream& in) {
    const auto rows = parse_table(in);
    int max_shift = -1;
    for (const auto& [s, p] : rows) {
        if (s < 0) throw std::invalid_argument("shift distribution: negative shift");
        if (s > max_shift) max_shift = s;
    }
    std::vector<double> probs(static_cast<std::size_t>(max_shift + 1), 0.0);
    for (const auto& [s, p] : rows) probs[static_cast<std::size_t>(s)] += p;
    return ShiftDistribution(std::move(probs));
}

DegreeDistribution degree_preset(std::string_view name) {
    if (name == "zdf-paper-omega") {
        return DegreeDistribution({{1, 0.007969},
                                   {2, 0.493570},
                                   {3, 0.166220},
                                   {4, 0.072646},
                                   {5, 0.082558},
                                   {8, 0.056058},
                                   {9, 0.037229},
                                   {19, 0.055590},
                                   {65, 0.025023},
                                   {66, 0.003135}});
    }
    throw std::invalid_argument("unknown degree preset: " + std::string(name));
}

ShiftDistribution shift_preset(std::string_view name) {
    if (name == "zdf-paper-delta") {
        return ShiftDistribution({0.5, 0.5});
    }
    throw std::invalid_argument("unknown shift preset: " + std::string(name));
}

}  // namespace zdf
