#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zdf/distributions.hpp"
#include "zdf/precode.hpp"
#include "zdf/rng.hpp"
#include "zdf/ternary_word.hpp"

namespace zdf {

// Wire metadata of one output packet. Indices are 0-based in memory and
// 1-based on the wire.
struct OutputPacketHeader {
    std::uint32_t t = 0;        // output sequence number
    std::vector<int> indices;   // distinct precoded-packet indices
    std::vector<int> shifts;    // normalized, min == 0

    int degree() const { return static_cast<int>(indices.size()); }
    int max_shift() const;
};

struct OutputPacket {
    OutputPacketHeader header;
    TernaryWord payload;  // fully known, length ell + max_shift
};

// Throws std::invalid_argument on a malformed header (empty, duplicate
// indices, min shift != 0, index out of [0,n)).
void validate_header(const OutputPacketHeader& h, int n, int max_shift);

// Inner-code output packet generator over fixed precoded packets.
class FountainEncoder {
public:
    FountainEncoder(std::span<const TernaryWord> precoded, DegreeDistribution omega,
                    ShiftDistribution delta, std::uint64_t seed);

    // Samples degree, shifts and indices and XORs the shifted packets.
    OutputPacket next();

    // Deterministic core with a forced header, shared with next() and the
    // tests' trace examples.
    OutputPacket make_packet(std::uint32_t t, std::vector<int> indices,
                             std::vector<int> shifts) const;

private:
    std::span<const TernaryWord> precoded_;
    DegreeDistribution omega_;
    ShiftDistribution delta_;
    Rng rng_;
    std::uint32_t next_t_ = 1;
};

// Bit-exact wire format:
//   "ZDF1", u32 t, u16 d, u16 ell, u8 D, then d records of (u32 index,
//   u8 shift), then the payload packed MSB-first and zero-filled to whole
//   bytes. All integers big-endian, indices 1-based.
std::vector<std::uint8_t> serialize_packet(const OutputPacket& p, int ell, int max_shift);

struct WirePacket {
    OutputPacket packet;
    int ell = 0;
    int max_shift = 0;  // the distribution bound D, not this packet's shift
};

// Throws std::runtime_error on truncation, bad magic or violated header
// invariants.
WirePacket deserialize_packet(std::span<const std::uint8_t> bytes);

// Bipartite labeled factor graph a receiver builds from the precode and
// its received packets. Factors 0..m-1 are precode checks (labels 0,
// all-zero memories); factor m+i holds received packet i, its payload
// zero-extended into the fixed-length memory. Received-packet variable
// nodes are absorbed into that memory initialization rather than stored.
struct FactorGraph {
    struct Edge {
        int var;
        int shift;
    };

    int n = 0;
    int m = 0;
    int k_prime = 0;
    int ell = 0;
    int max_shift = 0;
    std::vector<std::vector<Edge>> factors;  // size m + k_prime
    std::vector<TernaryWord> memories;       // fully known, length ell + max_shift
    std::vector<TernaryWord> vars;           // length ell, all erased initially
};

FactorGraph build_factor_graph(const ParityCheck& h, std::span<const OutputPacket> received,
                               int ell, int max_shift);

}  // namespace zdf
