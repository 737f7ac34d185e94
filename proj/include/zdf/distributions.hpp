#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace zdf {

// Sum-to-one tolerance for distribution validation. The published ZDF
// output-degree table sums to 0.999998, so anything tighter rejects it.
inline constexpr double kDistributionSumTolerance = 1e-5;

struct DegreeEntry {
    int degree;
    double probability;
};

// Output-degree distribution Omega(x) as an explicit table with a
// precomputed CDF. Immutable after construction; construction validates
// (degrees >= 1, strictly increasing, probabilities in (0,1], sum within
// tolerance of 1) and throws std::invalid_argument naming the failed
// invariant. Zero-probability entries are dropped, not stored.
class DegreeDistribution {
public:
    explicit DegreeDistribution(std::vector<DegreeEntry> entries);

    const std::vector<DegreeEntry>& entries() const { return entries_; }
    int max_degree() const { return entries_.back().degree; }
    double cdf(std::size_t i) const { return cdf_[i]; }

    // Inverse-CDF sampling: the smallest degree whose cumulative
    // probability exceeds u. u at or beyond the total mass yields the
    // largest degree.
    int sample(double u) const;

    template <class Rng>
    int sample_rng(Rng& rng) const {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        return sample(uni(rng));
    }

private:
    std::vector<DegreeEntry> entries_;
    std::vector<double> cdf_;
};

// Shift distribution Delta(x) over shift amounts 0..D.
class ShiftDistribution {
public:
    explicit ShiftDistribution(std::vector<double> probs);

    int max_shift() const { return static_cast<int>(probs_.size()) - 1; }
    const std::vector<double>& probs() const { return probs_; }

    // Smallest shift whose cumulative probability exceeds u.
    int sample_one(double u) const;

    // Draws d shifts i.i.d. and subtracts the minimum, so the output
    // always contains a 0.
    template <class Rng>
    std::vector<int> sample_shifts(int d, Rng& rng) const {
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<int> shifts(static_cast<std::size_t>(d));
        int mn = max_shift();
        for (auto& s : shifts) {
            s = sample_one(uni(rng));
            if (s < mn) mn = s;
        }
        for (auto& s : shifts) s -= mn;
        return shifts;
    }

private:
    std::vector<double> probs_;
    std::vector<double> cdf_;
};

// Validation helpers behind the constructors; return the failed invariant
// or nullopt when valid.
std::optional<std::string> validate_degree_entries(const std::vector<DegreeEntry>& entries);
std::optional<std::string> validate_shift_probs(const std::vector<double>& probs);

// Plain-text table: one "degree:probability" pair per line; blank lines
// and lines starting with '#' are skipped.
DegreeDistribution load_degree_distribution(std::istream& in);
ShiftDistribution load_shift_distribution(std::istream& in);

// Named presets: "zdf-paper-omega" and "zdf-paper-delta".
DegreeDistribution degree_preset(std::string_view name);
ShiftDistribution shift_preset(std::string_view name);

}  // namespace zdf
