#include "zdf/ternary_word.hpp"

#include <algorithm>
#include <stdexcept>

namespace zdf {

namespace {

// Shift a packed bit vector left by k (towards higher positions).
void shl_into(std::span<const std::uint64_t> src, std::size_t k,
              std::vector<std::uint64_t>& out, std::size_t out_words) {
    out.assign(out_words, 0);
    const std::size_t ws = k / 64;
    const std::size_t bs = k % 64;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i] == 0) continue;
        if (i + ws < out_words) {
            out[i + ws] |= src[i] << bs;
        }
        if (bs != 0 && i + ws + 1 < out_words) {
            out[i + ws + 1] |= src[i] >> (64 - bs);
        }
    }
}

std::vector<std::uint64_t> shl(std::span<const std::uint64_t> src, std::size_t k,
                               std::size_t out_words) {
    std::vector<std::uint64_t> out;
    shl_into(src, k, out, out_words);
    return out;
}

void or_range(std::vector<std::uint64_t>& v, std::size_t from, std::size_t to) {
    for (std::size_t p = from; p < to; ++p) {
        v[p / 64] |= std::uint64_t{1} << (p % 64);
    }
}

}  // namespace

void TernaryWord::trim() {
    if (len_ % 64 != 0 && !known_.empty()) {
        const std::uint64_t tail = (std::uint64_t{1} << (len_ % 64)) - 1;
        known_.back() &= tail;
    }
    for (std::size_t i = 0; i < known_.size(); ++i) {
        value_[i] &= known_[i];
    }
}

TernaryWord TernaryWord::make_known(std::span<const int> bits) {
    TernaryWord w(bits.size());
    for (std::size_t p = 0; p < bits.size(); ++p) {
        w.set_bit(p, bits[p]);
    }
    return w;
}

TernaryWord TernaryWord::make_known(std::initializer_list<int> bits) {
    return make_known(std::span<const int>(bits.begin(), bits.size()));
}

TernaryWord TernaryWord::from_string(std::string_view s) {
    TernaryWord w(s.size());
    for (std::size_t p = 0; p < s.size(); ++p) {
        switch (s[p]) {
            case '0': w.set_bit(p, 0); break;
            case '1': w.set_bit(p, 1); break;
            case '*': break;
            default: throw std::invalid_argument("TernaryWord::from_string: bad character");
        }
    }
    return w;
}

std::string TernaryWord::to_string() const {
    std::string s(len_, '*');
    for (std::size_t p = 0; p < len_; ++p) {
        if (known_at(p)) s[p] = bit_at(p) ? '1' : '0';
    }
    return s;
}

bool TernaryWord::known_at(std::size_t pos) const {
    return (known_[pos / 64] >> (pos % 64)) & 1;
}

int TernaryWord::bit_at(std::size_t pos) const {
    return static_cast<int>((value_[pos / 64] >> (pos % 64)) & 1);
}

void TernaryWord::set_bit(std::size_t pos, int bit) {
    if (pos >= len_) throw std::out_of_range("TernaryWord::set_bit");
    const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
    known_[pos / 64] |= mask;
    if (bit) {
        value_[pos / 64] |= mask;
    } else {
        value_[pos / 64] &= ~mask;
    }
}

bool TernaryWord::fully_known() const {
    return known_count() == len_;
}

std::size_t TernaryWord::known_count() const {
    std::size_t c = 0;
    for (std::uint64_t w : known_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

TernaryWord shift_pad(int k, const TernaryWord& w, int max_shift) {
    if (k < 0 || k > max_shift) throw std::invalid_argument("shift_pad: shift outside [0,D]");
    TernaryWord out(w.len_ + static_cast<std::size_t>(max_shift));
    out.known_ = shl(w.known_, static_cast<std::size_t>(k), out.known_.size());
    out.value_ = shl(w.value_, static_cast<std::size_t>(k), out.value_.size());
    or_range(out.known_, 0, static_cast<std::size_t>(k));
    or_range(out.known_, static_cast<std::size_t>(k) + w.len_, out.len_);
    out.trim();
    return out;
}

TernaryWord xor_merge(std::span<const TernaryWord> words) {
    if (words.empty()) throw std::invalid_argument("xor_merge: needs at least one word");
    TernaryWord out = words[0];
    for (std::size_t i = 1; i < words.size(); ++i) {
        if (words[i].len_ != out.len_) throw std::invalid_argument("xor_merge: length mismatch");
        for (std::size_t j = 0; j < out.known_.size(); ++j) {
            out.known_[j] &= words[i].known_[j];
            out.value_[j] ^= words[i].value_[j];
        }
    }
    out.trim();
    return out;
}

TernaryWord xor_merge(std::initializer_list<TernaryWord> words) {
    return xor_merge(std::span<const TernaryWord>(words.begin(), words.size()));
}

TernaryWord window(int k, const TernaryWord& w, std::size_t payload_len) {
    if (k < 0 || static_cast<std::size_t>(k) + payload_len > w.len_) {
        throw std::invalid_argument("window: shift outside [0,D]");
    }
    TernaryWord out(payload_len);
    const std::size_t ws = static_cast<std::size_t>(k) / 64;
    const std::size_t bs = static_cast<std::size_t>(k) % 64;
    for (std::size_t j = 0; j < out.known_.size(); ++j) {
        std::uint64_t kn = w.known_[j + ws] >> bs;
        std::uint64_t va = w.value_[j + ws] >> bs;
        if (bs != 0 && j + ws + 1 < w.known_.size()) {
            kn |= w.known_[j + ws + 1] << (64 - bs);
            va |= w.value_[j + ws + 1] << (64 - bs);
        }
        out.known_[j] = kn;
        out.value_[j] = va;
    }
    out.trim();
    return out;
}

TernaryWord fill(const TernaryWord& w1, const TernaryWord& w2) {
    if (w1.len_ != w2.len_) throw std::invalid_argument("fill: length mismatch");
    TernaryWord out = w1;
    for (std::size_t j = 0; j < out.known_.size(); ++j) {
        out.value_[j] = w1.value_[j] | (w2.value_[j] & ~w1.known_[j]);
        out.known_[j] = w1.known_[j] | w2.known_[j];
    }
    return out;
}

TernaryWord factor_update(
    const TernaryWord& memory, int target_shift, const TernaryWord& target,
    std::span<const std::pair<int, const TernaryWord*>> others) {
    const std::size_t ell = target.len_;
    if (memory.len_ < ell) throw std::invalid_argument("factor_update: memory shorter than target");
    const int max_shift = static_cast<int>(memory.len_ - ell);
    if (!memory.fully_known()) throw std::invalid_argument("factor_update: memory not fully known");
    if (target_shift < 0 || target_shift > max_shift) {
        throw std::invalid_argument("factor_update: target shift outside [0,D]");
    }

    // Phi over the memory and the shifted neighbour words. The pad
    // positions of S(k, w) are known zeros, so a neighbour only gates
    // `known` inside its copy window and only contributes value there.
    TernaryWord acc(memory.len_);
    std::fill(acc.known_.begin(), acc.known_.end(), ~std::uint64_t{0});
    acc.value_ = memory.value_;
    std::vector<std::uint64_t> gate, val;
    for (const auto& [k, wp] : others) {
        const TernaryWord& w = *wp;
        if (w.len_ != ell) throw std::invalid_argument("factor_update: word length mismatch");
        if (k < 0 || k > max_shift) throw std::invalid_argument("factor_update: shift outside [0,D]");
        shl_into(w.known_, static_cast<std::size_t>(k), gate, acc.known_.size());
        or_range(gate, 0, static_cast<std::size_t>(k));
        or_range(gate, static_cast<std::size_t>(k) + ell, acc.len_);
        shl_into(w.value_, static_cast<std::size_t>(k), val, acc.value_.size());
        for (std::size_t j = 0; j < acc.known_.size(); ++j) {
            acc.known_[j] &= gate[j];
            acc.value_[j] ^= val[j];
        }
    }
    acc.trim();
    return fill(target, window(target_shift, acc, ell));
}

}  // namespace zdf
