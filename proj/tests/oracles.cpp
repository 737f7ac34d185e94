#include "oracles.hpp"

#include <stdexcept>

namespace zdf::test {

namespace {

struct UnknownBit {
    std::size_t word;
    std::size_t pos;
};

std::vector<UnknownBit> collect_unknowns(const std::vector<TernaryWord>& words) {
    std::vector<UnknownBit> u;
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (std::size_t p = 0; p < words[w].length(); ++p) {
            if (!words[w].known_at(p)) u.push_back({w, p});
        }
    }
    return u;
}

// XOR of shifted fully-known words, bit by bit.
TernaryWord combine_shifted(const std::vector<std::pair<int, const TernaryWord*>>& terms,
                            std::size_t out_len) {
    TernaryWord out = TernaryWord::make_known(std::vector<int>(out_len, 0));
    for (const auto& [shift, w] : terms) {
        for (std::size_t p = 0; p < w->length(); ++p) {
            const std::size_t q = p + static_cast<std::size_t>(shift);
            out.set_bit(q, out.bit_at(q) ^ w->bit_at(p));
        }
    }
    return out;
}

// Projects the surviving completions of `words` onto per-word consensus
// values. `satisfied` is evaluated with words temporarily completed.
template <class Check>
std::optional<std::vector<TernaryWord>> project_solutions(std::vector<TernaryWord> words,
                                                          Check satisfied) {
    const auto unknowns = collect_unknowns(words);
    if (unknowns.size() > 24) throw std::runtime_error("oracle: instance too large");

    std::vector<TernaryWord> consensus;
    bool any_solution = false;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << unknowns.size()); ++mask) {
        for (std::size_t i = 0; i < unknowns.size(); ++i) {
            words[unknowns[i].word].set_bit(unknowns[i].pos, static_cast<int>((mask >> i) & 1));
        }
        if (!satisfied(words)) continue;
        if (!any_solution) {
            consensus = words;
            any_solution = true;
        } else {
            for (std::size_t w = 0; w < words.size(); ++w) {
                for (std::size_t p = 0; p < words[w].length(); ++p) {
                    if (consensus[w].known_at(p) && consensus[w].bit_at(p) != words[w].bit_at(p)) {
                        consensus[w] = [&] {
                            TernaryWord masked(consensus[w].length());
                            for (std::size_t q = 0; q < consensus[w].length(); ++q) {
                                if (q != p && consensus[w].known_at(q)) {
                                    masked.set_bit(q, consensus[w].bit_at(q));
                                }
                            }
                            return masked;
                        }();
                    }
                }
            }
        }
    }
    if (!any_solution) return std::nullopt;
    return consensus;
}

}  // namespace

std::optional<TernaryWord> brute_force_factor_update(
    const TernaryWord& memory, int target_shift, const TernaryWord& target,
    const std::vector<std::pair<int, TernaryWord>>& others) {
    std::vector<TernaryWord> words{target};
    std::vector<int> shifts{target_shift};
    for (const auto& [k, w] : others) {
        words.push_back(w);
        shifts.push_back(k);
    }
    auto satisfied = [&](const std::vector<TernaryWord>& completed) {
        std::vector<std::pair<int, const TernaryWord*>> terms;
        for (std::size_t i = 0; i < completed.size(); ++i) terms.emplace_back(shifts[i], &completed[i]);
        return combine_shifted(terms, memory.length()) == memory;
    };
    auto sol = project_solutions(words, satisfied);
    if (!sol) return std::nullopt;
    return (*sol)[0];
}

std::optional<std::vector<TernaryWord>> brute_force_joint_solve(const ResidualGraph& r) {
    auto satisfied = [&](const std::vector<TernaryWord>& vars) {
        for (std::size_t f = 0; f < r.factors.size(); ++f) {
            std::vector<std::pair<int, const TernaryWord*>> terms;
            for (const auto& e : r.factors[f]) {
                terms.emplace_back(e.shift, &vars[static_cast<std::size_t>(e.var)]);
            }
            if (!(combine_shifted(terms, r.memories[f].length()) == r.memories[f])) return false;
        }
        return true;
    };
    return project_solutions(r.vars, satisfied);
}

bool syndrome_zero(const ParityCheck& h, std::span<const TernaryWord> packets) {
    for (const auto& row : h.rows) {
        for (std::size_t p = 0; p < packets[0].length(); ++p) {
            int acc = 0;
            for (int c : row) acc ^= packets[static_cast<std::size_t>(c)].bit_at(p);
            if (acc != 0) return false;
        }
    }
    return true;
}

TernaryWord polynomial_combine(const std::vector<std::pair<int, TernaryWord>>& terms,
                               std::size_t payload_len) {
    std::vector<std::pair<int, const TernaryWord*>> ptrs;
    for (const auto& [k, w] : terms) ptrs.emplace_back(k, &w);
    return combine_shifted(ptrs, payload_len);
}

}  // namespace zdf::test
