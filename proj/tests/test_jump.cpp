#include "xsk/jump.hpp"

#include <catch2/catch.hpp>

#include <random>
#include <set>

using xsk::BigUint;
using xsk::GeneratorState;
using xsk::JumpMask;

namespace {

GeneratorState stepped(GeneratorState s, const xsk::GeneratorConfig& cfg, uint64_t n) {
    for (uint64_t i = 0; i < n; ++i) xsk::next(s, cfg);
    return s;
}

} // namespace

TEST_CASE("certification gates the jump machinery", "[jump]") {
    auto bad = xsk::xorshift128plus_config();
    bad.shifts = {1, 1, 1};
    CHECK_THROWS_AS(xsk::certify_full_period(bad), std::invalid_argument);

    const auto cert = xsk::certify_full_period(xsk::toy6_config());
    CHECK(cert.poly.degree() == 6);
}

TEST_CASE("masks for tiny step counts", "[jump]") {
    const auto cert = xsk::certify_full_period(xsk::xorshift128plus_config());

    const JumpMask m0 = xsk::jump_poly(cert, 0);
    CHECK(m0.words == std::vector<uint64_t>{1, 0}); // the constant 1
    const JumpMask m1 = xsk::jump_poly(cert, 1);
    CHECK(m1.words == std::vector<uint64_t>{2, 0}); // the monomial x

    GeneratorState s = xsk::seed_from_u64(3, cert.cfg);
    GeneratorState j0 = s;
    xsk::apply_jump(j0, m0, cert.cfg);
    CHECK(xsk::logically_equal(j0, s));
    CHECK(j0 == s); // pointer also unchanged: n is a multiple of r
}

TEST_CASE("the 2^64 mask reproduces the published constants", "[jump]") {
    const auto cert = xsk::certify_full_period(xsk::xorshift128plus_config());
    const JumpMask mask = xsk::jump_poly(cert, xsk::big_pow2(64));
    CHECK(mask.words == std::vector<uint64_t>{0x8a5cd789635d2dffull, 0x121fd2155c472f96ull});
    CHECK(xsk::format_jump_words(mask) == "0x8a5cd789635d2dff, 0x121fd2155c472f96");
}

TEST_CASE("apply_jump equals sequential stepping", "[jump][oracle]") {
    const auto cert = xsk::certify_full_period(xsk::xorshift128plus_config());
    std::mt19937_64 rng(211);
    for (uint64_t j : {uint64_t(1), uint64_t(2), uint64_t(5), uint64_t(129), uint64_t(1000)}) {
        const JumpMask mask = xsk::jump_poly(cert, j);
        for (int trial = 0; trial < 3; ++trial) {
            GeneratorState s = xsk::seed_from_u64(rng(), cert.cfg);
            GeneratorState direct = stepped(s, cert.cfg, j);
            xsk::apply_jump(s, mask, cert.cfg);
            REQUIRE(xsk::logically_equal(s, direct));
        }
    }
}

TEST_CASE("toy jumps wrap the 63-cycle", "[jump][oracle]") {
    const auto cert = xsk::certify_full_period(xsk::toy6_config());
    const JumpMask mask = xsk::jump_poly(cert, 10000);
    for (uint64_t seed : {1ull, 2ull, 3ull, 42ull}) {
        GeneratorState s = xsk::seed_from_u64(seed, cert.cfg);
        GeneratorState direct = stepped(s, cert.cfg, 10000 % 63);
        xsk::apply_jump(s, mask, cert.cfg);
        REQUIRE(xsk::logically_equal(s, direct));
    }
}

TEST_CASE("jump masks compose additively", "[jump][property]") {
    const auto cert = xsk::certify_full_period(xsk::toy6_config());
    std::mt19937_64 rng(223);
    for (int trial = 0; trial < 10; ++trial) {
        const uint64_t j1 = rng() % (1u << 20), j2 = rng() % (1u << 20);
        GeneratorState a = xsk::seed_from_u64(trial + 1, cert.cfg);
        GeneratorState b = a;
        xsk::apply_jump(a, xsk::jump_poly(cert, j1), cert.cfg);
        xsk::apply_jump(a, xsk::jump_poly(cert, j2), cert.cfg);
        xsk::apply_jump(b, xsk::jump_poly(cert, BigUint(j1) + j2), cert.cfg);
        REQUIRE(xsk::logically_equal(a, b));
    }

    const auto cert128 = xsk::certify_full_period(xsk::xorshift128plus_config());
    for (int trial = 0; trial < 3; ++trial) {
        const uint64_t j1 = rng() % (1u << 20), j2 = rng() % (1u << 20);
        GeneratorState a = xsk::seed_from_u64(trial + 7, cert128.cfg);
        GeneratorState b = a;
        xsk::apply_jump(a, xsk::jump_poly(cert128, j1), cert128.cfg);
        xsk::apply_jump(a, xsk::jump_poly(cert128, j2), cert128.cfg);
        xsk::apply_jump(b, xsk::jump_poly(cert128, BigUint(j1) + j2), cert128.cfg);
        REQUIRE(xsk::logically_equal(a, b));
    }
}

TEST_CASE("composition also holds symbolically at 2^64", "[jump]") {
    const auto cert = xsk::certify_full_period(xsk::xorshift128plus_config());
    const xsk::Gf2Poly q64 = xsk::poly_powmod(xsk::Gf2Poly::x(), xsk::big_pow2(64), cert.poly);
    const xsk::Gf2Poly q65 = xsk::poly_powmod(xsk::Gf2Poly::x(), xsk::big_pow2(65), cert.poly);
    CHECK(xsk::poly_mulmod(q64, q64, cert.poly) == q65);
}

TEST_CASE("a jump of 2^3 tiles the toy cycle", "[jump][oracle]") {
    // 2^3 jumps of length 2^3 cover the 63-cycle with the final
    // subsequence one element short: 64 visited states, one revisit.
    const auto cert = xsk::certify_full_period(xsk::toy6_config());
    const JumpMask mask = xsk::jump_poly(cert, 8);
    GeneratorState block_start = xsk::seed_from_u64(1, cert.cfg);
    std::set<std::pair<uint64_t, uint64_t>> visited;
    unsigned revisits = 0;
    for (int block = 0; block < 8; ++block) {
        GeneratorState s = block_start;
        for (int i = 0; i < 8; ++i) {
            const auto key = std::pair{s.logical_word(0), s.logical_word(1)};
            if (!visited.insert(key).second) ++revisits;
            xsk::next(s, cert.cfg);
        }
        xsk::apply_jump(block_start, mask, cert.cfg);
    }
    CHECK(visited.size() == 63);
    CHECK(revisits == 1);
    // 63 jumps advance 8 * 63 = 504 = 0 (mod 63) steps: back at the origin
    const GeneratorState origin = xsk::seed_from_u64(1, cert.cfg);
    GeneratorState wrapped = origin;
    for (int block = 0; block < 63; ++block) xsk::apply_jump(wrapped, mask, cert.cfg);
    CHECK(xsk::logically_equal(wrapped, origin));
}

TEST_CASE("masks carry their configuration", "[jump]") {
    const auto cert128 = xsk::certify_full_period(xsk::xorshift128plus_config());
    const auto cert_toy = xsk::certify_full_period(xsk::toy6_config());
    const JumpMask mask = xsk::jump_poly(cert128, 5);
    GeneratorState s = xsk::seed_from_u64(1, cert_toy.cfg);
    CHECK_THROWS_AS(xsk::apply_jump(s, mask, cert_toy.cfg), std::invalid_argument);

    std::mt19937_64 rng(227);
    for (int i = 0; i < 20; ++i) {
        const JumpMask m = xsk::jump_poly(cert128, rng());
        REQUIRE(m.words.size() == 2); // always ceil(n/64) words, deg Q < n
    }
}
