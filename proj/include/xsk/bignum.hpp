#pragma once

// Arbitrary-precision unsigned integers for exponents, periods and factor
// tables. Thin layer over boost::multiprecision; nothing here assumes a
// fixed word width, so 2^1024 - 1 is as comfortable as 63.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <boost/random/mersenne_twister.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace xsk {

using BigUint = boost::multiprecision::cpp_int;

inline BigUint big_pow2(unsigned k) { return BigUint(1) << k; }

// Accepts a decimal literal or the shorthand "2^k".
inline BigUint parse_big(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty integer literal");
    if (text.rfind("2^", 0) == 0) {
        const std::string exp(text.substr(2));
        if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed 2^k literal: " + std::string(text));
        return big_pow2(static_cast<unsigned>(std::stoul(exp)));
    }
    if (text.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("malformed integer literal: " + std::string(text));
    return BigUint(std::string(text));
}

inline std::string to_decimal(const BigUint& v) { return v.str(); }

inline unsigned bit_length(const BigUint& v) {
    return v.is_zero() ? 0u : static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
}

inline bool bit_test(const BigUint& v, unsigned i) {
    return boost::multiprecision::bit_test(v, i);
}

// Probabilistic primality, >= 40 Miller-Rabin rounds. The witness generator
// is seeded from the candidate so results are reproducible run to run.
inline bool is_probable_prime(const BigUint& n, unsigned rounds = 40) {
    if (n < 2) return false;
    boost::mt19937_64 gen(0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(n % 0xffffffffffffffc5ull));
    return boost::multiprecision::miller_rabin_test(n, rounds, gen);
}

} // namespace xsk
