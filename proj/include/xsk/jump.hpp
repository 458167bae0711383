#pragma once

// Polynomial jump-ahead. Advancing a state by j steps is the linear map
// T^j, and T^j = Q(T) for Q(x) = x^j mod P(x), so it suffices to step the
// generator n times while xor-accumulating the states at which Q has a set
// coefficient. Masks pack the coefficients of Q 64 per word, bit b of
// words[i] being coefficient 64*i + b.

#include "xsk/engine.hpp"
#include "xsk/factor_table.hpp"
#include "xsk/gf2poly.hpp"

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xsk {

// A config whose transition has been certified full period; the jump
// algebra needs deg Q < deg P to reach every state offset.
struct FullPeriodCert {
    GeneratorConfig cfg;
    Gf2Poly poly; // primitive characteristic polynomial, degree n
};

inline FullPeriodCert certify_full_period(const GeneratorConfig& cfg, const FactorTable& table) {
    const auto cp = charpoly(cfg);
    if (!cp.full_degree)
        throw std::invalid_argument("config is not full period: characteristic recurrence has degree " +
                                    std::to_string(cp.recurrence_length) + " < " +
                                    std::to_string(cfg.state_bits()));
    if (!is_primitive(cp.poly, table))
        throw std::invalid_argument("config is not full period: characteristic polynomial is not primitive");
    return {cfg, cp.poly};
}

inline FullPeriodCert certify_full_period(const GeneratorConfig& cfg) {
    return certify_full_period(cfg, builtin_factor_table(cfg.state_bits()));
}

struct JumpMask {
    std::vector<uint64_t> words; // ceil(n/64) words, Fig.-style packing
    BigUint step_count;          // j
    GeneratorConfig config;      // fingerprint: masks only apply to their own generator

    friend bool operator==(const JumpMask&, const JumpMask&) = default;
};

inline JumpMask jump_poly(const FullPeriodCert& cert, const BigUint& j) {
    const unsigned n = cert.cfg.state_bits();
    const Gf2Poly q = poly_powmod(Gf2Poly::x(), j, cert.poly);
    JumpMask mask;
    mask.words.assign((n + 63) / 64, 0);
    const auto qwords = q.words();
    for (size_t i = 0; i < qwords.size(); ++i) mask.words[i] = qwords[i];
    mask.step_count = j;
    mask.config = cert.cfg;
    return mask;
}

// Advances state by mask.step_count steps. Walks the generator n times,
// xor-accumulating the pointer-aligned words wherever the corresponding
// coefficient of Q is set; n is a multiple of r, so the pointer is back at
// its starting slot when the accumulator is written back.
inline void apply_jump(GeneratorState& state, const JumpMask& mask, const GeneratorConfig& cfg) {
    if (!(mask.config == cfg))
        throw std::invalid_argument("jump mask was computed for a different generator config");
    if (state.words.size() != cfg.word_count)
        throw std::invalid_argument("state does not match config");
    if (mask.words.size() != (cfg.state_bits() + 63) / 64)
        throw std::invalid_argument("jump mask word count does not match config");
    const unsigned n = cfg.state_bits();
    const unsigned r = cfg.word_count;
    std::vector<uint64_t> acc(r, 0);
    for (unsigned i = 0; i < n; ++i) {
        if ((mask.words[i / 64] >> (i % 64)) & 1u)
            for (unsigned k = 0; k < r; ++k)
                acc[k] ^= state.logical_word(k);
        next(state, cfg);
    }
    for (unsigned k = 0; k < r; ++k)
        state.words[(state.ptr + k) % r] = acc[k];
}

// "0x…, 0x…" in mask word order, the form a jump table is pasted into code.
inline std::string format_jump_words(const JumpMask& mask) {
    std::ostringstream out;
    for (size_t i = 0; i < mask.words.size(); ++i) {
        if (i) out << ", ";
        out << "0x" << std::hex << mask.words[i];
    }
    return out.str();
}

} // namespace xsk
