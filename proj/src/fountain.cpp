#include "zdf/fountain.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace zdf {

int OutputPacketHeader::max_shift() const {
    int mx = 0;
    for (int s : shifts) mx = std::max(mx, s);
    return mx;
}

void validate_header(const OutputPacketHeader& h, int n, int max_shift) {
    if (h.indices.empty()) throw std::invalid_argument("header: degree must be >= 1");
    if (h.indices.size() != h.shifts.size()) {
        throw std::invalid_argument("header: index/shift arity mismatch");
    }
    int mn = max_shift;
    for (std::size_t i = 0; i < h.indices.size(); ++i) {
        if (h.indices[i] < 0 || h.indices[i] >= n) {
            throw std::invalid_argument("header: packet index out of range");
        }
        if (h.shifts[i] < 0 || h.shifts[i] > max_shift) {
            throw std::invalid_argument("header: shift outside [0,D]");
        }
        mn = std::min(mn, h.shifts[i]);
        for (std::size_t j = i + 1; j < h.indices.size(); ++j) {
            if (h.indices[i] == h.indices[j]) {
                throw std::invalid_argument("header: duplicate packet index");
            }
        }
    }
    if (mn != 0) throw std::invalid_argument("header: minimum shift must be 0");
}

FountainEncoder::FountainEncoder(std::span<const TernaryWord> precoded, DegreeDistribution omega,
                                 ShiftDistribution delta, std::uint64_t seed)
    : precoded_(precoded), omega_(std::move(omega)), delta_(std::move(delta)), rng_(seed) {
    if (precoded_.empty()) throw std::invalid_argument("FountainEncoder: no precoded packets");
    for (const auto& b : precoded_) {
        if (!b.fully_known() || b.length() != precoded_[0].length()) {
            throw std::invalid_argument("FountainEncoder: precoded packets must be fully known and equal length");
        }
    }
}

OutputPacket FountainEncoder::make_packet(std::uint32_t t, std::vector<int> indices,
                                          std::vector<int> shifts) const {
    OutputPacketHeader header{t, std::move(indices), std::move(shifts)};
    validate_header(header, static_cast<int>(precoded_.size()), delta_.max_shift());

    const int mx = header.max_shift();
    std::vector<TernaryWord> terms;
    terms.reserve(header.indices.size());
    for (std::size_t i = 0; i < header.indices.size(); ++i) {
        terms.push_back(shift_pad(header.shifts[i],
                                  precoded_[static_cast<std::size_t>(header.indices[i])], mx));
    }
    return {std::move(header), xor_merge(terms)};
}

OutputPacket FountainEncoder::next() {
    const int n = static_cast<int>(precoded_.size());
    // Degrees above n cannot pick distinct packets; clamp.
    const int d = std::min(omega_.sample_rng(rng_), n);

    std::vector<int> indices;
    indices.reserve(static_cast<std::size_t>(d));
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (static_cast<int>(indices.size()) < d) {
        const int j = pick(rng_);
        if (std::find(indices.begin(), indices.end(), j) == indices.end()) indices.push_back(j);
    }
    std::vector<int> shifts = delta_.sample_shifts(d, rng_);
    return make_packet(next_t_++, std::move(indices), std::move(shifts));
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        if (pos_ >= bytes_.size()) throw std::runtime_error("deserialize_packet: truncated");
        return bytes_[pos_++];
    }
    std::uint16_t u16() { return static_cast<std::uint16_t>((u8() << 8) | u8()); }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = (v << 8) | u8();
        return v;
    }
    bool done() const { return pos_ == bytes_.size(); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

constexpr std::uint8_t kMagic[4] = {'Z', 'D', 'F', '1'};

}  // namespace

std::vector<std::uint8_t> serialize_packet(const OutputPacket& p, int ell, int max_shift) {
    validate_header(p.header, 1 << 30, max_shift);
    const std::size_t payload_len = static_cast<std::size_t>(ell) + p.header.max_shift();
    if (p.payload.length() != payload_len || !p.payload.fully_known()) {
        throw std::invalid_argument("serialize_packet: bad payload");
    }

    std::vector<std::uint8_t> out(kMagic, kMagic + 4);
    put_u32(out, p.header.t);
    put_u16(out, static_cast<std::uint16_t>(p.header.degree()));
    put_u16(out, static_cast<std::uint16_t>(ell));
    out.push_back(static_cast<std::uint8_t>(max_shift));
    for (int i = 0; i < p.header.degree(); ++i) {
        put_u32(out, static_cast<std::uint32_t>(p.header.indices[static_cast<std::size_t>(i)] + 1));
        out.push_back(static_cast<std::uint8_t>(p.header.shifts[static_cast<std::size_t>(i)]));
    }
    std::uint8_t acc = 0;
    for (std::size_t b = 0; b < payload_len; ++b) {
        acc = static_cast<std::uint8_t>(acc | (p.payload.bit_at(b) << (7 - b % 8)));
        if (b % 8 == 7) {
            out.push_back(acc);
            acc = 0;
        }
    }
    if (payload_len % 8 != 0) out.push_back(acc);
    return out;
}

WirePacket deserialize_packet(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    for (std::uint8_t c : kMagic) {
        if (r.u8() != c) throw std::runtime_error("deserialize_packet: bad magic");
    }
    WirePacket wp;
    wp.packet.header.t = r.u32();
    const int d = r.u16();
    wp.ell = r.u16();
    wp.max_shift = r.u8();
    if (d < 1) throw std::runtime_error("deserialize_packet: degree must be >= 1");
    for (int i = 0; i < d; ++i) {
        const std::uint32_t j = r.u32();
        if (j < 1) throw std::runtime_error("deserialize_packet: index must be >= 1");
        wp.packet.header.indices.push_back(static_cast<int>(j - 1));
        wp.packet.header.shifts.push_back(r.u8());
    }
    try {
        validate_header(wp.packet.header, 1 << 30, wp.max_shift);
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("deserialize_packet: ") + e.what());
    }
    const std::size_t payload_len =
        static_cast<std::size_t>(wp.ell) + wp.packet.header.max_shift();
    TernaryWord payload(payload_len);
    std::uint8_t cur = 0;
    for (std::size_t b = 0; b < payload_len; ++b) {
        if (b % 8 == 0) cur = r.u8();
        payload.set_bit(b, (cur >> (7 - b % 8)) & 1);
    }
    if (!r.done()) throw std::runtime_error("deserialize_packet: trailing bytes");
    wp.packet.payload = std::move(payload);
    return wp;
}

FactorGraph build_factor_graph(const ParityCheck& h, std::span<const OutputPacket> received,
                               int ell, int max_shift) {
    FactorGraph g;
    g.n = h.n;
    g.m = h.m;
    g.k_prime = static_cast<int>(received.size());
    g.ell = ell;
    g.max_shift = max_shift;

    const std::size_t mem_len = static_cast<std::size_t>(ell + max_shift);
    const TernaryWord zero_mem = TernaryWord::make_known(std::vector<int>(mem_len, 0));

    g.factors.reserve(static_cast<std::size_t>(g.m + g.k_prime));
    g.memories.reserve(static_cast<std::size_t>(g.m + g.k_prime));
    for (int r = 0; r < h.m; ++r) {
        std::vector<FactorGraph::Edge> edges;
        edges.reserve(h.rows[static_cast<std::size_t>(r)].size());
        for (int c : h.rows[static_cast<std::size_t>(r)]) edges.push_back({c, 0});
        g.factors.push_back(std::move(edges));
        g.memories.push_back(zero_mem);
    }
    for (const auto& p : received) {
        validate_header(p.header, h.n, max_shift);
        const std::size_t payload_len = static_cast<std::size_t>(ell) + p.header.max_shift();
        if (p.payload.length() != payload_len || !p.payload.fully_known()) {
            throw std::invalid_argument("build_factor_graph: bad payload");
        }
        std::vector<FactorGraph::Edge> edges;
        edges.reserve(p.header.indices.size());
        for (std::size_t i = 0; i < p.header.indices.size(); ++i) {
            edges.push_back({p.header.indices[i], p.header.shifts[i]});
        }
        g.factors.push_back(std::move(edges));
        // Zero-extend the wire payload to the fixed memory length.
        TernaryWord mem = zero_mem;
        for (std::size_t b = 0; b < payload_len; ++b) mem.set_bit(b, p.payload.bit_at(b));
        g.memories.push_back(std::move(mem));
    }
    g.vars.assign(static_cast<std::size_t>(h.n), TernaryWord::make_erased(static_cast<std::size_t>(ell)));
    return g;
}

}  // namespace zdf
