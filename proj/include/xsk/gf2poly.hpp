#pragma once

// Dense polynomials over Z/2Z. Coefficients are a bit vector: bit i of the
// word array is the coefficient of x^i. Everything the generator machinery
// needs lives here: carry-less multiply, modular reduction, square-and-
// multiply exponentiation with arbitrary-precision exponents, and the
// Berlekamp-Massey recurrence solver used to recover characteristic
// polynomials from output streams.

#include "xsk/bignum.hpp"

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace xsk {

class Gf2Poly {
public:
    Gf2Poly() = default;

    static Gf2Poly zero() { return Gf2Poly{}; }
    static Gf2Poly one() { return from_coeff_word(1); }
    static Gf2Poly x() { return from_coeff_word(2); }

    // Low 64 coefficients from a word (bit i -> x^i).
    static Gf2Poly from_coeff_word(uint64_t w) {
        Gf2Poly p;
        if (w) p.words_.push_back(w);
        return p;
    }

    static Gf2Poly from_words(std::span<const uint64_t> words) {
        Gf2Poly p;
        p.words_.assign(words.begin(), words.end());
        p.normalize();
        return p;
    }

    bool is_zero() const { return words_.empty(); }

    // Degree of the zero polynomial is reported as -1.
    int degree() const {
        if (words_.empty()) return -1;
        return static_cast<int>((words_.size() - 1) * 64 + std::bit_width(words_.back()) - 1);
    }

    bool coeff(size_t i) const {
        const size_t w = i / 64;
        return w < words_.size() && ((words_[w] >> (i % 64)) & 1u);
    }

    void set_coeff(size_t i, bool v) {
        const size_t w = i / 64;
        if (v) {
            if (w >= words_.size()) words_.resize(w + 1, 0);
            words_[w] |= uint64_t(1) << (i % 64);
        } else if (w < words_.size()) {
            words_[w] &= ~(uint64_t(1) << (i % 64));
            normalize();
        }
    }

    std::span<const uint64_t> words() const { return words_; }

    Gf2Poly& operator^=(const Gf2Poly& o) {
        if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
        for (size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
        normalize();
        return *this;
    }

    friend Gf2Poly operator^(Gf2Poly a, const Gf2Poly& b) { return a ^= b; }

    // Multiplication by x^k.
    Gf2Poly shifted_left(size_t k) const {
        if (is_zero() || k == 0) {
            Gf2Poly r = *this;
            return r;
        }
        const size_t wordshift = k / 64, bitshift = k % 64;
        Gf2Poly r;
        r.words_.assign(words_.size() + wordshift + 1, 0);
        for (size_t i = 0; i < words_.size(); ++i) {
            r.words_[i + wordshift] ^= words_[i] << bitshift;
            if (bitshift) r.words_[i + wordshift + 1] ^= words_[i] >> (64 - bitshift);
        }
        r.normalize();
        return r;
    }

    friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

    // "deg=<d>;<hex>", most significant coefficient first, zero-padded to
    // ceil((d+1)/4) digits. The zero polynomial serializes as "deg=-1;0".
    std::string to_hex() const;
    static Gf2Poly from_hex(std::string_view text);

private:
    void normalize() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<uint64_t> words_;
};

inline std::string Gf2Poly::to_hex() const {
    const int d = degree();
    if (d < 0) return "deg=-1;0";
    const size_t digits = (static_cast<size_t>(d) + 1 + 3) / 4;
    std::string hex(digits, '0');
    static const char* alphabet = "0123456789abcdef";
    for (size_t i = 0; i < digits; ++i) {
        unsigned nibble = 0;
        for (unsigned b = 0; b < 4; ++b)
            nibble |= static_cast<unsigned>(coeff(4 * i + b)) << b;
        hex[digits - 1 - i] = alphabet[nibble];
    }
    return "deg=" + std::to_string(d) + ";" + hex;
}

inline Gf2Poly Gf2Poly::from_hex(std::string_view text) {
    if (text.rfind("deg=", 0) != 0) throw std::invalid_argument("polynomial literal must start with deg=");
    const size_t semi = text.find(';');
    if (semi == std::string_view::npos) throw std::invalid_argument("polynomial literal missing ';'");
    const std::string degstr(text.substr(4, semi - 4));
    const std::string_view hex = text.substr(semi + 1);
    const long d = std::stol(degstr);
    if (d < 0) {
        if (hex != "0") throw std::invalid_argument("zero polynomial must serialize as deg=-1;0");
        return Gf2Poly{};
    }
    const size_t digits = (static_cast<size_t>(d) + 1 + 3) / 4;
    if (hex.size() != digits)
        throw std::invalid_argument("polynomial hex length does not match degree");
    Gf2Poly p;
    for (size_t i = 0; i < digits; ++i) {
        const char ch = hex[digits - 1 - i];
        unsigned nibble;
        if (ch >= '0' && ch <= '9') nibble = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f') nibble = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F') nibble = static_cast<unsigned>(ch - 'A' + 10);
        else throw std::invalid_argument("bad hex digit in polynomial literal");
        for (unsigned b = 0; b < 4; ++b)
            if (nibble & (1u << b)) p.set_coeff(4 * i + b, true);
    }
    if (p.degree() != d) throw std::invalid_argument("polynomial degree header does not match coefficients");
    return p;
}

// Number of nonzero coefficients.
inline unsigned weight(const Gf2Poly& p) {
    unsigned w = 0;
    for (uint64_t word : p.words()) w += static_cast<unsigned>(std::popcount(word));
    return w;
}

// x^len * p(1/x): coefficient i moves to len - i. Degrees above len are
// rejected; callers pass the recurrence length, which may exceed deg p.
inline Gf2Poly reciprocal(const Gf2Poly& p, unsigned len) {
    if (p.degree() > static_cast<int>(len))
        throw std::invalid_argument("reciprocal length below polynomial degree");
    Gf2Poly r;
    for (unsigned i = 0; i <= len; ++i)
        if (p.coeff(i)) r.set_coeff(len - i, true);
    return r;
}

// Carry-less schoolbook product.
inline Gf2Poly poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
    if (a.is_zero() || b.is_zero()) return Gf2Poly::zero();
    std::vector<uint64_t> acc(a.words().size() + b.words().size(), 0);
    for (size_t ai = 0; ai < a.words().size(); ++ai) {
        uint64_t w = a.words()[ai];
        while (w) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(w));
            w &= w - 1;
            const size_t shift = ai * 64 + bit;
            const size_t ws = shift / 64, bs = shift % 64;
            for (size_t bi = 0; bi < b.words().size(); ++bi) {
                acc[bi + ws] ^= b.words()[bi] << bs;
                if (bs) acc[bi + ws + 1] ^= b.words()[bi] >> (64 - bs);
            }
        }
    }
    return Gf2Poly::from_words(acc);
}

inline void check_modulus(const Gf2Poly& m) {
    if (m.degree() < 1) throw std::invalid_argument("modulus must have degree >= 1");
}

// Remainder of long division by m.
inline Gf2Poly poly_mod(Gf2Poly a, const Gf2Poly& m) {
    check_modulus(m);
    const int dm = m.degree();
    int da = a.degree();
    while (da >= dm) {
        a ^= m.shifted_left(static_cast<size_t>(da - dm));
        da = a.degree();
    }
    return a;
}

inline Gf2Poly poly_mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
    check_modulus(m);
    return poly_mod(poly_mul(a, b), m);
}

// base^e mod m by square-and-multiply, msb first. e = 0 yields 1.
inline Gf2Poly poly_powmod(const Gf2Poly& base, const BigUint& e, const Gf2Poly& m) {
    check_modulus(m);
    if (e.is_zero()) return poly_mod(Gf2Poly::one(), m);
    Gf2Poly result = poly_mod(Gf2Poly::one(), m);
    const Gf2Poly b = poly_mod(base, m);
    for (unsigned i = bit_length(e); i-- > 0;) {
        result = poly_mulmod(result, result, m);
        if (bit_test(e, i)) result = poly_mulmod(result, b, m);
    }
    return result;
}

struct BerlekampMasseyResult {
    Gf2Poly connection; // C(x), C(0) = 1; s_t = sum_{i=1..length} C_i s_{t-i}
    unsigned length = 0; // shortest LFSR length L; deg C <= L
};

// Shortest linear recurrence satisfied by a bit sequence.
inline BerlekampMasseyResult berlekamp_massey(std::span<const uint8_t> bits) {
    if (bits.empty()) throw std::invalid_argument("berlekamp_massey: empty sequence");
    Gf2Poly c = Gf2Poly::one();
    Gf2Poly b = Gf2Poly::one();
    unsigned L = 0, m = 1;
    for (size_t n = 0; n < bits.size(); ++n) {
        unsigned d = bits[n] & 1u;
        for (unsigned i = 1; i <= L; ++i)
            if (c.coeff(i)) d ^= bits[n - i] & 1u;
        if (d == 0) {
            ++m;
        } else if (2 * L <= n) {
            Gf2Poly t = c;
            c ^= b.shifted_left(m);
            L = static_cast<unsigned>(n) + 1 - L;
            b = t;
            m = 1;
        } else {
            c ^= b.shifted_left(m);
            ++m;
        }
    }
    return {c, L};
}

} // namespace xsk
