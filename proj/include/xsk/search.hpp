#pragma once

// Enumeration and certification of full-period shift triples. A candidate
// is kept when Berlekamp-Massey on its low-bit stream reaches the full
// state size (anything less means a reducible or degenerate transition)
// and the recovered polynomial is primitive. The cheap degree check runs
// first; the order tests dominate the cost of survivors.

#include "xsk/engine.hpp"
#include "xsk/factor_table.hpp"
#include "xsk/gf2poly.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace xsk {

struct TripleCertificate {
    ShiftTriple triple;
    Gf2Poly poly; // full characteristic polynomial, or the partial recurrence on failure
    unsigned poly_weight = 0;
    bool full_degree = false;
    bool primitive = false;
};

// Canonical (w, r) decomposition for a state size: 64-bit words once the
// state is large enough, a two-word toy otherwise.
inline GeneratorConfig config_for_bits(unsigned n, ShiftTriple triple, Scrambler scr = Scrambler::none) {
    GeneratorConfig cfg;
    if (n >= 128) {
        if (n % 64) throw std::invalid_argument("state bits must be a multiple of 64");
        cfg.word_bits = 64;
        cfg.word_count = n / 64;
    } else {
        if (n % 2) throw std::invalid_argument("toy state bits must be even");
        cfg.word_bits = n / 2;
        cfg.word_count = 2;
    }
    cfg.shifts = triple;
    cfg.scrambler = scr;
    cfg.validate();
    return cfg;
}

inline TripleCertificate certify_triple(unsigned n, ShiftTriple triple, const FactorTable& table) {
    if (table.n != n) throw std::invalid_argument("factor table does not match state bits");
    TripleCertificate cert;
    cert.triple = triple;
    const auto cp = charpoly(config_for_bits(n, triple));
    cert.poly = cp.poly;
    cert.poly_weight = weight(cp.poly);
    cert.full_degree = cp.full_degree;
    cert.primitive = cp.full_degree && is_primitive(cp.poly, table);
    return cert;
}

inline TripleCertificate certify_triple(unsigned n, ShiftTriple triple) {
    return certify_triple(n, triple, builtin_factor_table(n));
}

struct TripleResult {
    ShiftTriple triple;
    unsigned poly_weight = 0;
};

// Search domain: a, b >= 1, gcd(a, b) = 1, a + b <= max_ab, 1 <= c <= c_max.
// The c range is an assumption of this toolkit, not a given; it is a
// parameter so alternative readings can be re-run.
struct TripleDomain {
    unsigned max_ab = 64;
    unsigned c_max = 63;
};

inline std::vector<ShiftTriple> domain_candidates(const TripleDomain& domain) {
    std::vector<ShiftTriple> out;
    for (unsigned a = 1; a < domain.max_ab; ++a)
        for (unsigned b = 1; a + b <= domain.max_ab; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (unsigned c = 1; c <= domain.c_max; ++c) out.push_back({a, b, c});
        }
    return out;
}

// Candidates are independent; they are sharded across threads and the
// result re-sorted, so the output is a pure function of (n, candidates).
inline std::vector<TripleResult> enumerate_candidates(unsigned n,
                                                      const std::vector<ShiftTriple>& candidates,
                                                      const FactorTable& table) {
    if (table.n != n) throw std::invalid_argument("factor table does not match state bits");
    const auto report = validate_factor_table(table);
    if (!report.ok()) throw std::invalid_argument("invalid factor table: " + report.describe());

    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<std::vector<TripleResult>>> futures;
    for (unsigned shard = 0; shard < workers; ++shard) {
        futures.push_back(std::async(std::launch::async, [&, shard] {
            std::vector<TripleResult> kept;
            for (size_t i = shard; i < candidates.size(); i += workers) {
                const auto cert = certify_triple(n, candidates[i], table);
                if (cert.primitive) kept.push_back({candidates[i], cert.poly_weight});
            }
            return kept;
        }));
    }
    std::vector<TripleResult> out;
    for (auto& f : futures) {
        auto part = f.get();
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end(), [](const TripleResult& x, const TripleResult& y) {
        return std::tie(x.triple.a, x.triple.b, x.triple.c) < std::tie(y.triple.a, y.triple.b, y.triple.c);
    });
    return out;
}

inline std::vector<TripleResult> enumerate_full_period_triples(unsigned n,
                                                               const TripleDomain& domain,
                                                               const FactorTable& table) {
    return enumerate_candidates(n, domain_candidates(domain), table);
}

inline std::vector<TripleResult> enumerate_full_period_triples(unsigned n,
                                                               const TripleDomain& domain = {}) {
    return enumerate_full_period_triples(n, domain, builtin_factor_table(n));
}

} // namespace xsk
