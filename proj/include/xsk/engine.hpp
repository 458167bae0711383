#pragma once

// The parameterized xorshift core. State is r words of w bits plus a
// rotation pointer; one step transforms the oldest word with the (a, b)
// shift pair, folds in the previous word with the c shift, and scrambles
// the output with +, * or nothing. With w = 64, r = 2 this is bit for bit
// the classic two-word xorshift128 update; with r = 16 the rotating
// pointer form. Words narrower than 64 bits are kept right-aligned in
// uint64_t and masked after every shift and add, so the same code path
// drives 3-bit toys, 32-bit variants and the 64-bit generators.

#include "xsk/gf2poly.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace xsk {

enum class Scrambler { none, plus, star };

// marsaglia: the low-order block of the transition feeds the previous word
// through I + R^c (a right shift). xsadd_like: that block is I + L^c
// instead, the layout used by the 32-bit add-scrambled family. Shift
// constants for the latter are configuration, not built in.
enum class UpdateKind { marsaglia, xsadd_like };

struct ShiftTriple {
    unsigned a = 0, b = 0, c = 0;
    friend bool operator==(const ShiftTriple&, const ShiftTriple&) = default;
};

struct GeneratorConfig {
    unsigned word_bits = 64;  // w, 3..64
    unsigned word_count = 2;  // r, power of two in {2,4,8,16}
    ShiftTriple shifts{};
    Scrambler scrambler = Scrambler::plus;
    uint64_t star_multiplier = 0x2545f4914f6cdd1dull; // any odd constant
    UpdateKind update = UpdateKind::marsaglia;

    unsigned state_bits() const { return word_bits * word_count; }

    uint64_t word_mask() const {
        return word_bits == 64 ? ~uint64_t(0) : (uint64_t(1) << word_bits) - 1;
    }

    void validate() const {
        if (word_bits < 3 || word_bits > 64)
            throw std::invalid_argument("word_bits must be in [3, 64]");
        if (word_count < 2 || word_count > 16 || (word_count & (word_count - 1)))
            throw std::invalid_argument("word_count must be a power of two in {2,4,8,16}");
        if (shifts.a == 0 || shifts.b == 0 || shifts.c == 0 ||
            shifts.a >= word_bits || shifts.b >= word_bits || shifts.c >= word_bits)
            throw std::invalid_argument("shift amounts must satisfy 1 <= a,b,c < word_bits");
        if (scrambler == Scrambler::star && (star_multiplier & 1) == 0)
            throw std::invalid_argument("star multiplier must be odd");
    }

    friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

struct GeneratorState {
    std::vector<uint64_t> words;
    unsigned ptr = 0;

    bool all_zero() const {
        for (uint64_t w : words)
            if (w) return false;
        return true;
    }

    // Word k steps behind the pointer in rotation order. logical_word(0) is
    // the most recently updated word.
    uint64_t logical_word(unsigned k) const {
        return words[(ptr + k) % words.size()];
    }

    friend bool operator==(const GeneratorState&, const GeneratorState&) = default;
};

// Two states drive all future outputs identically iff their words agree
// frame-aligned; the pointer itself is just a labeling.
inline bool logically_equal(const GeneratorState& a, const GeneratorState& b) {
    if (a.words.size() != b.words.size()) return false;
    for (unsigned k = 0; k < a.words.size(); ++k)
        if (a.logical_word(k) != b.logical_word(k)) return false;
    return true;
}

inline GeneratorState make_state(std::vector<uint64_t> words, unsigned ptr, const GeneratorConfig& cfg) {
    cfg.validate();
    if (words.size() != cfg.word_count)
        throw std::invalid_argument("state word count does not match config");
    for (uint64_t w : words)
        if (w & ~cfg.word_mask()) throw std::invalid_argument("state word exceeds word_bits");
    if (ptr >= cfg.word_count) throw std::invalid_argument("state pointer out of range");
    GeneratorState s{std::move(words), ptr};
    if (s.all_zero()) throw std::invalid_argument("all-zero state is a fixed point and is rejected");
    return s;
}

namespace detail {

// One state transition, scrambler ignored. Linear over Z/2Z; the all-zero
// state maps to itself, which is why next() rejects it.
inline uint64_t step_words(GeneratorState& s, const GeneratorConfig& cfg) {
    const uint64_t mask = cfg.word_mask();
    const uint64_t s0 = s.words[s.ptr];
    s.ptr = (s.ptr + 1) % cfg.word_count;
    const uint64_t s1 = s.words[s.ptr];
    const uint64_t t = (s1 ^ (s1 << cfg.shifts.a)) & mask;
    uint64_t fold;
    if (cfg.update == UpdateKind::marsaglia)
        fold = s0 ^ (s0 >> cfg.shifts.c);
    else
        fold = (s0 ^ (s0 << cfg.shifts.c)) & mask;
    s.words[s.ptr] = t ^ (t >> cfg.shifts.b) ^ fold;
    return s0;
}

} // namespace detail

inline uint64_t next(GeneratorState& state, const GeneratorConfig& cfg) {
    if (state.all_zero()) throw std::invalid_argument("cannot step the all-zero state");
    const uint64_t s0 = detail::step_words(state, cfg);
    const uint64_t updated = state.words[state.ptr];
    switch (cfg.scrambler) {
        case Scrambler::plus: return (updated + s0) & cfg.word_mask();
        case Scrambler::star: return (updated * cfg.star_multiplier) & cfg.word_mask();
        case Scrambler::none: return updated;
    }
    return updated;
}

// Deterministic seed expansion: iterate the splitmix64 sequence (golden
// gamma 0x9e3779b97f4a7c15, finalizer multipliers 0xbf58476d1ce4e5b9 and
// 0x94d049bb133111eb with shifts 30/27/31) and truncate each mixed word to
// w bits. An all-zero expansion gets word 0 replaced by 1. Pointer = 0.
inline GeneratorState seed_from_u64(uint64_t seed, const GeneratorConfig& cfg) {
    cfg.validate();
    GeneratorState s;
    s.words.resize(cfg.word_count);
    s.ptr = 0;
    uint64_t z = seed;
    for (auto& word : s.words) {
        z += 0x9e3779b97f4a7c15ull;
        uint64_t m = z;
        m = (m ^ (m >> 30)) * 0xbf58476d1ce4e5b9ull;
        m = (m ^ (m >> 27)) * 0x94d049bb133111ebull;
        m ^= m >> 31;
        word = m & cfg.word_mask();
    }
    if (s.all_zero()) s.words[0] = 1;
    return s;
}

// Bit i of the result is bit (w-1-i) of x.
inline uint64_t reverse_output(uint64_t x, unsigned word_bits) {
    uint64_t r = 0;
    for (unsigned i = 0; i < word_bits; ++i)
        r |= ((x >> i) & 1u) << (word_bits - 1 - i);
    return r;
}

// Bit 0 of each successive output, scrambler applied.
inline std::vector<uint8_t> lowest_bit_stream(const GeneratorConfig& cfg, GeneratorState state, size_t len) {
    if (len == 0) throw std::invalid_argument("lowest_bit_stream: len must be >= 1");
    std::vector<uint8_t> bits(len);
    for (auto& b : bits) b = static_cast<uint8_t>(next(state, cfg) & 1u);
    return bits;
}

struct CharpolyResult {
    Gf2Poly poly;            // characteristic polynomial when full_degree
    bool full_degree = false; // false: recurrence collapsed below n ("reducible or degenerate")
    unsigned recurrence_length = 0;
};

// Characteristic polynomial of the state transition, recovered by running
// Berlekamp-Massey over 2n+64 low bits of the unscrambled generator. The
// emitted polynomial is the reciprocal of the recovered connection
// polynomial, i.e. the orientation P with P(transition) = 0; that is the
// convention the jump machinery depends on. Weight is the same either way.
inline CharpolyResult charpoly(GeneratorConfig cfg) {
    cfg.scrambler = Scrambler::none;
    cfg.validate();
    const unsigned n = cfg.state_bits();
    const auto bits = lowest_bit_stream(cfg, seed_from_u64(1, cfg), 2 * size_t(n) + 64);
    const auto bm = berlekamp_massey(bits);
    CharpolyResult res;
    res.recurrence_length = bm.length;
    res.poly = reciprocal(bm.connection, bm.length);
    res.full_degree = (bm.length == n) && (bm.connection.degree() == static_cast<int>(n));
    return res;
}

// Named configurations.
inline GeneratorConfig xorshift128plus_config() {
    GeneratorConfig cfg;
    cfg.word_bits = 64; cfg.word_count = 2; cfg.shifts = {23, 18, 5};
    cfg.scrambler = Scrambler::plus;
    return cfg;
}
inline GeneratorConfig xorshift1024plus_config() {
    GeneratorConfig cfg;
    cfg.word_bits = 64; cfg.word_count = 16; cfg.shifts = {31, 11, 30};
    cfg.scrambler = Scrambler::plus;
    return cfg;
}
inline GeneratorConfig xorshift128star_config() {
    GeneratorConfig cfg;
    cfg.word_bits = 64; cfg.word_count = 2; cfg.shifts = {49, 5, 26};
    cfg.scrambler = Scrambler::star;
    return cfg;
}
inline GeneratorConfig xorshift1024star_config() {
    GeneratorConfig cfg;
    cfg.word_bits = 64; cfg.word_count = 16; cfg.shifts = {31, 11, 30};
    cfg.scrambler = Scrambler::star;
    cfg.star_multiplier = 1181783497276652981ull;
    return cfg;
}
// The full-period 6-bit toy: 3-bit words, shifts (1, 2, 1).
inline GeneratorConfig toy6_config(Scrambler scr = Scrambler::none) {
    GeneratorConfig cfg;
    cfg.word_bits = 3; cfg.word_count = 2; cfg.shifts = {1, 2, 1};
    cfg.scrambler = scr;
    return cfg;
}

} // namespace xsk
