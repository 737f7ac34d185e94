#include "zdf/precode.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zdf/rng.hpp"

namespace zdf {

ParityCheck build_regular_ldpc(int n, int var_degree, int check_degree, std::uint64_t seed) {
    if (n <= 0 || var_degree <= 0 || check_degree <= 0) {
        throw std::invalid_argument("build_regular_ldpc: nonpositive parameter");
    }
    if ((static_cast<long long>(n) * var_degree) % check_degree != 0) {
        throw std::invalid_argument("build_regular_ldpc: n*d_v not divisible by d_c");
    }
    const int m = static_cast<int>(static_cast<long long>(n) * var_degree / check_degree);
    if (check_degree > n) {
        throw std::invalid_argument("build_regular_ldpc: check degree exceeds n");
    }

    // Configuration model: deal the n*d_v variable sockets into checks,
    // then repair parallel edges by swapping a duplicated socket with a
    // socket from another row. A swap is accepted only when it introduces
    // no new duplicate, so the number of conflicts strictly decreases.
    Rng rng(seed);
    std::vector<int> sockets(static_cast<std::size_t>(n) * var_degree);
    for (int v = 0; v < n; ++v) {
        for (int d = 0; d < var_degree; ++d) {
            sockets[static_cast<std::size_t>(v * var_degree + d)] = v;
        }
    }
    std::shuffle(sockets.begin(), sockets.end(), rng);

    std::vector<int> count(static_cast<std::size_t>(m) * n, 0);
    auto cnt = [&count, n, check_degree](std::size_t socket_idx, int col) -> int& {
        const std::size_t row = socket_idx / static_cast<std::size_t>(check_degree);
        return count[row * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)];
    };
    for (std::size_t i = 0; i < sockets.size(); ++i) ++cnt(i, sockets[i]);

    std::vector<std::size_t> conflicts;
    for (std::size_t i = 0; i < sockets.size(); ++i) {
        if (cnt(i, sockets[i]) > 1) conflicts.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> pick(0, sockets.size() - 1);
    long long attempts = 0;
    const long long budget = 1000LL * static_cast<long long>(sockets.size());
    while (!conflicts.empty()) {
        if (++attempts > budget) {
            throw std::runtime_error("build_regular_ldpc: repair budget exhausted");
        }
        const std::size_t i = conflicts.back();
        if (cnt(i, sockets[i]) <= 1) {  // fixed as a side effect of an earlier swap
            conflicts.pop_back();
            continue;
        }
        const std::size_t j = pick(rng);
        if (i / static_cast<std::size_t>(check_degree) == j / static_cast<std::size_t>(check_degree)) continue;
        const int ci = sockets[i], cj = sockets[j];
        if (ci == cj || cnt(i, cj) > 0 || cnt(j, ci) > 0) continue;
        --cnt(i, ci);
        --cnt(j, cj);
        std::swap(sockets[i], sockets[j]);
        ++cnt(i, cj);
        ++cnt(j, ci);
    }

    ParityCheck h;
    h.n = n;
    h.m = m;
    h.rows.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        auto& row = h.rows[static_cast<std::size_t>(r)];
        row.assign(sockets.begin() + static_cast<std::ptrdiff_t>(r) * check_degree,
                   sockets.begin() + static_cast<std::ptrdiff_t>(r + 1) * check_degree);
        std::sort(row.begin(), row.end());
    }
    return h;
}

void validate_regular(const ParityCheck& h, int var_degree, int check_degree) {
    std::vector<int> col_weight(static_cast<std::size_t>(h.n), 0);
    if (static_cast<int>(h.rows.size()) != h.m) {
        throw std::invalid_argument("ParityCheck: row count mismatch");
    }
    for (const auto& row : h.rows) {
        if (static_cast<int>(row.size()) != check_degree) {
            throw std::invalid_argument("ParityCheck: row weight != d_c");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (row[i] < 0 || row[i] >= h.n) throw std::invalid_argument("ParityCheck: column out of range");
            if (i > 0 && row[i] == row[i - 1]) throw std::invalid_argument("ParityCheck: duplicate entry");
            ++col_weight[static_cast<std::size_t>(row[i])];
        }
    }
    for (int w : col_weight) {
        if (w != var_degree) throw std::invalid_argument("ParityCheck: column weight != d_v");
    }
}

std::string to_alist(const ParityCheck& h) {
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(h.n));
    for (int r = 0; r < h.m; ++r) {
        for (int c : h.rows[static_cast<std::size_t>(r)]) cols[static_cast<std::size_t>(c)].push_back(r);
    }
    std::size_t max_col = 0, max_row = 0;
    for (const auto& c : cols) max_col = std::max(max_col, c.size());
    for (const auto& r : h.rows) max_row = std::max(max_row, r.size());

    std::ostringstream out;
    out << h.n << ' ' << h.m << '\n' << max_col << ' ' << max_row << '\n';
    for (std::size_t i = 0; i < cols.size(); ++i) out << cols[i].size() << (i + 1 < cols.size() ? ' ' : '\n');
    for (std::size_t i = 0; i < h.rows.size(); ++i) out << h.rows[i].size() << (i + 1 < h.rows.size() ? ' ' : '\n');
    for (const auto& c : cols) {
        for (std::size_t i = 0; i < c.size(); ++i) out << c[i] + 1 << (i + 1 < c.size() ? ' ' : '\n');
        if (c.empty()) out << '\n';
    }
    for (const auto& r : h.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << r[i] + 1 << (i + 1 < r.size() ? ' ' : '\n');
        if (r.empty()) out << '\n';
    }
    return out.str();
}

ParityCheck from_alist(std::istream& in) {
    auto next = [&in]() {
        long long v;
        if (!(in >> v)) throw std::runtime_error("from_alist: truncated input");
        return v;
    };
    ParityCheck h;
    h.n = static_cast<int>(next());
    h.m = static_cast<int>(next());
    if (h.n <= 0 || h.m <= 0) throw std::runtime_error("from_alist: bad dimensions");
    next();  // max column weight, unused
    next();  // max row weight, unused
    std::vector<int> col_w(static_cast<std::size_t>(h.n));
    std::vector<int> row_w(static_cast<std::size_t>(h.m));
    for (auto& w : col_w) w = static_cast<int>(next());
    for (auto& w : row_w) w = static_cast<int>(next());
    for (int c = 0; c < h.n; ++c) {
        for (int i = 0; i < col_w[static_cast<std::size_t>(c)]; ++i) next();  // column lists, redundant
    }
    h.rows.resize(static_cast<std::size_t>(h.m));
    for (int r = 0; r < h.m; ++r) {
        auto& row = h.rows[static_cast<std::size_t>(r)];
        for (int i = 0; i < row_w[static_cast<std::size_t>(r)]; ++i) {
            const long long c = next();
            if (c < 1 || c > h.n) throw std::runtime_error("from_alist: column index out of range");
            row.push_back(static_cast<int>(c - 1));
        }
        std::sort(row.begin(), row.end());
    }
    return h;
}

EncoderPlan make_encoder(const ParityCheck& h) {
    const std::size_t words = (static_cast<std::size_t>(h.n) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(
        static_cast<std::size_t>(h.m), std::vector<std::uint64_t>(words, 0));
    for (int r = 0; r < h.m; ++r) {
        for (int c : h.rows[static_cast<std::size_t>(r)]) {
            rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) / 64] ^=
                std::uint64_t{1} << (c % 64);
        }
    }
    auto bit = [&rows](int r, int c) {
        return (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c) / 64] >> (c % 64)) & 1;
    };

    // Reduced row echelon form with pivots taken from the right, so the
    // leading k columns stay systematic whenever possible.
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = h.n - 1; col >= 0 && rank < h.m; --col) {
        int src = -1;
        for (int r = rank; r < h.m; ++r) {
            if (bit(r, col)) { src = r; break; }
        }
        if (src < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(src)]);
        for (int r = 0; r < h.m; ++r) {
            if (r != rank && bit(r, col)) {
                for (std::size_t w = 0; w < words; ++w) {
                    rows[static_cast<std::size_t>(r)][w] ^= rows[static_cast<std::size_t>(rank)][w];
                }
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank < h.m) throw std::runtime_error("make_encoder: parity-check matrix is rank deficient");

    EncoderPlan plan;
    plan.parity_cols = pivot_col;
    std::vector<char> is_pivot(static_cast<std::size_t>(h.n), 0);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = 1;
    for (int c = 0; c < h.n; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) plan.systematic.push_back(c);
    }
    plan.parity_sources.resize(static_cast<std::size_t>(h.m));
    for (int r = 0; r < h.m; ++r) {
        for (int c : plan.systematic) {
            if (bit(r, c)) plan.parity_sources[static_cast<std::size_t>(r)].push_back(c);
        }
    }
    return plan;
}

std::vector<TernaryWord> precode_packets(const EncoderPlan& plan, const ParityCheck& h,
                                         std::span<const TernaryWord> source) {
    const std::size_t k = plan.systematic.size();
    if (source.size() != k) throw std::invalid_argument("precode_packets: expected k source packets");
    const std::size_t ell = source.empty() ? 0 : source[0].length();
    for (const auto& a : source) {
        if (a.length() != ell) throw std::invalid_argument("precode_packets: length mismatch");
        if (!a.fully_known()) throw std::invalid_argument("precode_packets: unresolved source bits");
    }

    std::vector<TernaryWord> packets(static_cast<std::size_t>(h.n));
    for (std::size_t i = 0; i < k; ++i) {
        packets[static_cast<std::size_t>(plan.systematic[i])] = source[i];
    }
    const TernaryWord zero = TernaryWord::make_known(std::vector<int>(ell, 0));
    for (int r = 0; r < h.m; ++r) {
        TernaryWord acc = zero;
        for (int c : plan.parity_sources[static_cast<std::size_t>(r)]) {
            acc = xor_merge({acc, packets[static_cast<std::size_t>(c)]});
        }
        packets[static_cast<std::size_t>(plan.parity_cols[static_cast<std::size_t>(r)])] = acc;
    }
    return packets;
}

}  // namespace zdf
