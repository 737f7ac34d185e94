#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "zdf/ternary_word.hpp"

namespace zdf {

// Sparse binary parity-check matrix, rows as sorted column-index lists.
// Column indices are 0-based internally.
struct ParityCheck {
    int n = 0;  // code length (number of precoded packets)
    int m = 0;  // number of checks, n - k
    std::vector<std::vector<int>> rows;
};

// (d_v, d_c)-regular construction via the configuration model: variable
// sockets are shuffled into check sockets, then parallel edges are
// repaired by random socket swaps. Deterministic in `seed`. Throws on an
// infeasible n (n * d_v not divisible by d_c) or when the repair budget
// runs out.
ParityCheck build_regular_ldpc(int n, int var_degree, int check_degree, std::uint64_t seed);

// Checks the regular-code invariants (every column weight d_v, every row
// weight d_c, no duplicate entries); throws std::invalid_argument.
void validate_regular(const ParityCheck& h, int var_degree, int check_degree);

// alist text interchange (column lists then row lists, 1-based).
std::string to_alist(const ParityCheck& h);
ParityCheck from_alist(std::istream& in);

// Systematic encoding plan from one-time Gaussian elimination over GF(2).
// Pivots are chosen from the rightmost columns, so for a full-rank
// parity part the source packets occupy the leading positions. The plan
// is a pure function of the matrix; regenerating it is deterministic.
struct EncoderPlan {
    std::vector<int> systematic;                   // k source positions, ascending
    std::vector<int> parity_cols;                  // solved column per reduced row
    std::vector<std::vector<int>> parity_sources;  // reduced row -> systematic columns
};

// Throws std::runtime_error when the matrix is rank deficient (the caller
// rebuilds the code with a fresh seed).
EncoderPlan make_encoder(const ParityCheck& h);

// Bit-position-wise systematic encoding: k fully-known source packets of
// equal length to n precoded packets. At every bit position the n-vector
// of packet bits is a codeword of h.
std::vector<TernaryWord> precode_packets(const EncoderPlan& plan, const ParityCheck& h,
                                         std::span<const TernaryWord> source);

}  // namespace zdf
