#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zdf {

// A fixed-length word over {0,1,*}, the value type of bit-wise erasure
// decoding. Stored as two packed bit masks: `known` marks positions that
// hold a real bit, `value` holds the bit where known. Canonical form keeps
// value zero wherever known is zero, so equality is plain mask equality
// and the erasure mappings below are word-parallel mask operations.
class TernaryWord {
public:
    TernaryWord() = default;

    // All positions unknown (*).
    explicit TernaryWord(std::size_t length)
        : len_(length), known_(word_count(length), 0), value_(word_count(length), 0) {}

    static TernaryWord make_known(std::span<const int> bits);
    static TernaryWord make_known(std::initializer_list<int> bits);
    static TernaryWord make_erased(std::size_t length) { return TernaryWord(length); }

    // Parses a string of '0', '1' and '*'.
    static TernaryWord from_string(std::string_view s);
    std::string to_string() const;

    std::size_t length() const { return len_; }

    bool known_at(std::size_t pos) const;
    int bit_at(std::size_t pos) const;        // 0 if unknown (canonical form)
    void set_bit(std::size_t pos, int bit);   // marks the position known

    bool fully_known() const;
    // The resolution test T: 0 iff every position is known.
    int unresolved_flag() const { return fully_known() ? 0 : 1; }
    std::size_t known_count() const;

    friend bool operator==(const TernaryWord&, const TernaryWord&) = default;

    std::span<const std::uint64_t> known_words() const { return known_; }
    std::span<const std::uint64_t> value_words() const { return value_; }

    friend TernaryWord shift_pad(int k, const TernaryWord& w, int max_shift);
    friend TernaryWord xor_merge(std::span<const TernaryWord> words);
    friend TernaryWord window(int k, const TernaryWord& w, std::size_t payload_len);
    friend TernaryWord fill(const TernaryWord& w1, const TernaryWord& w2);
    friend TernaryWord factor_update(
        const TernaryWord& memory, int target_shift, const TernaryWord& target,
        std::span<const std::pair<int, const TernaryWord*>> others);

private:
    static std::size_t word_count(std::size_t len) { return (len + 63) / 64; }
    void trim();

    std::size_t len_ = 0;
    std::vector<std::uint64_t> known_;
    std::vector<std::uint64_t> value_;
};

// Mapping S: prepend k known zeros and append max_shift-k known zeros.
// Output length is w.length() + max_shift. Throws if k is outside
// [0, max_shift].
TernaryWord shift_pad(int k, const TernaryWord& w, int max_shift);

// Mapping Phi: position-wise XOR where every input is known, * otherwise.
// Requires at least one word, all of equal length.
TernaryWord xor_merge(std::span<const TernaryWord> words);
TernaryWord xor_merge(std::initializer_list<TernaryWord> words);

// Mapping S+: extract payload_len positions starting at offset k.
TernaryWord window(int k, const TernaryWord& w, std::size_t payload_len);

// Mapping Psi: keep w1's bit where known, take w2's entry otherwise.
TernaryWord fill(const TernaryWord& w1, const TernaryWord& w2);

// Factor node processing Phi': Psi(target, S+(target_shift,
// Phi(memory, {S(shift_t, word_t)}))). `memory` must be fully known with
// length target.length() + D; every shift must lie in [0, D]. The result
// never loses a known bit of `target`.
TernaryWord factor_update(
    const TernaryWord& memory, int target_shift, const TernaryWord& target,
    std::span<const std::pair<int, const TernaryWord*>> others);

}  // namespace zdf
