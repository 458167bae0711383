#pragma once

// Desk-scale structural and statistical analyses: exhaustive
// equidistribution censuses on toy-sized generators, per-bit period
// measurement, escape-from-zeroland curves, linear-complexity probes, and
// a small smoke battery with the usual p-value plumbing.

#include "xsk/engine.hpp"
#include "xsk/gf2poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace xsk {

namespace detail {

// Walks the state orbit from a canonical seed and returns its outputs,
// checking that the orbit is the full 2^n - 1 cycle.
inline std::vector<uint64_t> full_period_outputs(const GeneratorConfig& cfg) {
    cfg.validate();
    const unsigned n = cfg.state_bits();
    if (n > 24) throw std::invalid_argument("exhaustive walk requires state bits <= 24");
    const uint64_t period = (uint64_t(1) << n) - 1;
    GeneratorState state = make_state([&] {
        std::vector<uint64_t> w(cfg.word_count, 0);
        w[0] = 1;
        return w;
    }(), 0, cfg);
    const GeneratorState start = state;
    std::vector<uint64_t> outputs;
    outputs.reserve(period);
    for (uint64_t i = 0; i < period; ++i) {
        outputs.push_back(next(state, cfg));
        if (logically_equal(state, start) && i + 1 != period)
            throw std::invalid_argument("config is not full period: orbit length " + std::to_string(i + 1));
    }
    if (!logically_equal(state, start))
        throw std::invalid_argument("config is not full period: orbit exceeds state count");
    return outputs;
}

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, Lentz
// continued fraction otherwise.
inline double igamc(double a, double x) {
    if (x < 0 || a <= 0) throw std::invalid_argument("igamc domain");
    if (x == 0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1) {
        double sum = 1.0 / a, term = sum, aa = a;
        for (int i = 0; i < 500; ++i) {
            aa += 1.0;
            term *= x / aa;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
    }
    double b = x + 1 - a, cden = 1e300, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        cden = b + an / cden;
        if (std::fabs(cden) < 1e-300) cden = 1e-300;
        d = 1 / d;
        const double delta = d * cden;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

inline double chi2_sf(double x, double dof) { return igamc(dof / 2.0, x / 2.0); }

} // namespace detail

// ---------------------------------------------------------------------------
// Equidistribution census (exhaustive, toy scale)

struct EquidistCensus {
    unsigned k = 0;                        // tuple length counted
    std::map<uint64_t, uint64_t> counts;   // packed k-tuple -> occurrences over one period
    unsigned verdict = 0;                  // max k' <= k with k'-dimensional equidistribution
    unsigned word_bits = 0;
    uint64_t period = 0;

    // Tuples are packed oldest-output-first into the high bits:
    // pack(o_q, .., o_{q+k-1}) = o_q << (k-1)w | ... | o_{q+k-1}.
    static uint64_t pack(std::span<const uint64_t> tuple, unsigned w) {
        uint64_t key = 0;
        for (uint64_t v : tuple) key = (key << w) | v;
        return key;
    }
};

namespace detail {

// k'-dimensional equidistribution over one full period: every k'-tuple of
// outputs appears 2^(n - t k') times, the zero tuple once fewer.
inline bool equidist_holds(const std::map<uint64_t, uint64_t>& counts, unsigned k, unsigned n,
                           unsigned t) {
    if (static_cast<uint64_t>(t) * k > n) return false;
    const uint64_t expected = uint64_t(1) << (n - t * k);
    const uint64_t tuple_space = uint64_t(1) << (t * k);
    for (uint64_t key = 0; key < tuple_space; ++key) {
        const auto it = counts.find(key);
        const uint64_t count = it == counts.end() ? 0 : it->second;
        if (count != (key == 0 ? expected - 1 : expected)) return false;
    }
    return true;
}

inline std::map<uint64_t, uint64_t> marginalize(const std::map<uint64_t, uint64_t>& counts,
                                                unsigned from_k, unsigned to_k, unsigned w) {
    std::map<uint64_t, uint64_t> out;
    const unsigned drop = (from_k - to_k) * w;
    for (const auto& [key, cnt] : counts) out[key >> drop] += cnt;
    return out;
}

} // namespace detail

// Counts all cyclic k-windows of outputs over one full period (so counts
// sum to exactly 2^n - 1) and reports the largest k' <= k for which
// k'-dimensional equidistribution holds.
inline EquidistCensus equidist_census(const GeneratorConfig& cfg, unsigned k) {
    if (k == 0) throw std::invalid_argument("census requires k >= 1");
    if (static_cast<uint64_t>(k) * cfg.word_bits > 64)
        throw std::invalid_argument("census requires k * word_bits <= 64");
    const auto outputs = detail::full_period_outputs(cfg);
    EquidistCensus census;
    census.k = k;
    census.word_bits = cfg.word_bits;
    census.period = outputs.size();
    std::vector<uint64_t> window(k);
    for (size_t q = 0; q < outputs.size(); ++q) {
        for (unsigned i = 0; i < k; ++i) window[i] = outputs[(q + i) % outputs.size()];
        ++census.counts[EquidistCensus::pack(window, cfg.word_bits)];
    }
    const unsigned n = cfg.state_bits();
    census.verdict = 0;
    auto level = census.counts;
    for (unsigned kk = k; kk >= 1; --kk) {
        if (kk < k) level = detail::marginalize(census.counts, k, kk, cfg.word_bits);
        if (detail::equidist_holds(level, kk, n, cfg.word_bits)) {
            census.verdict = kk;
            break;
        }
    }
    return census;
}

// Least period of a bit sequence that is exactly one cycle long.
inline uint64_t least_period(std::span<const uint8_t> bits) {
    if (bits.empty()) throw std::invalid_argument("least_period: empty sequence");
    bool any = false;
    for (uint8_t b : bits) any |= (b & 1u);
    if (!any) throw std::domain_error("least_period: constant-zero sequence");
    const uint64_t len = bits.size();
    for (uint64_t d = 1; d <= len; ++d) {
        if (len % d) continue;
        bool ok = true;
        for (uint64_t i = 0; i < len && ok; ++i) ok = (bits[i] & 1u) == (bits[(i + d) % len] & 1u);
        if (ok) return d;
    }
    return len;
}

// Period of a single output bit over the full cycle.
inline uint64_t bit_period(const GeneratorConfig& cfg, unsigned bit) {
    if (bit >= cfg.word_bits) throw std::out_of_range("bit index exceeds word_bits");
    const auto outputs = detail::full_period_outputs(cfg);
    std::vector<uint8_t> bits(outputs.size());
    for (size_t i = 0; i < outputs.size(); ++i) bits[i] = static_cast<uint8_t>((outputs[i] >> bit) & 1u);
    return least_period(bits);
}

// ---------------------------------------------------------------------------
// Escape from zeroland

struct ZerolandReport {
    std::vector<double> curve; // mean ones-fraction per window position
    double mean = 0;
    double stddev = 0; // population standard deviation over the curve
};

// Ones-fraction in a window of 4 consecutive outputs sliding over the
// first 1000 outputs (positions 0..996), averaged over the n single-bit
// starting states. Deterministic: fixed seed order, fixed-order reduction.
inline ZerolandReport zeroland_curve(const GeneratorConfig& cfg) {
    cfg.validate();
    constexpr size_t kOutputs = 1000, kWindow = 4;
    const size_t positions = kOutputs - kWindow + 1;
    const unsigned n = cfg.state_bits();
    const unsigned w = cfg.word_bits;
    ZerolandReport report;
    report.curve.assign(positions, 0.0);
    std::vector<unsigned> popcounts(kOutputs);
    for (unsigned bitpos = 0; bitpos < n; ++bitpos) {
        GeneratorState state;
        state.words.assign(cfg.word_count, 0);
        state.words[bitpos / w] = uint64_t(1) << (bitpos % w);
        state.ptr = 0;
        for (size_t i = 0; i < kOutputs; ++i)
            popcounts[i] = static_cast<unsigned>(std::popcount(next(state, cfg)));
        unsigned window_ones = popcounts[0] + popcounts[1] + popcounts[2] + popcounts[3];
        for (size_t q = 0;; ++q) {
            report.curve[q] += double(window_ones) / double(kWindow * w);
            if (q + 1 == positions) break;
            window_ones += popcounts[q + kWindow] - popcounts[q];
        }
    }
    double sum = 0;
    for (auto& v : report.curve) {
        v /= n;
        sum += v;
    }
    report.mean = sum / double(positions);
    double var = 0;
    for (double v : report.curve) var += (v - report.mean) * (v - report.mean);
    report.stddev = std::sqrt(var / double(positions));
    return report;
}

// ---------------------------------------------------------------------------
// Linear complexity and seeds

// Length of the shortest linear recurrence satisfied by the sequence.
inline unsigned linear_complexity(std::span<const uint8_t> bits) {
    if (bits.size() < 64) throw std::invalid_argument("linear_complexity requires >= 64 bits");
    return berlekamp_massey(bits).length;
}

// seed_i = 1 + i * floor(2^64 / count), the equispaced-in-state-space
// seeding convention. Wider states expand each value via seed_from_u64.
inline std::vector<uint64_t> equispaced_seeds(unsigned count) {
    if (count == 0) throw std::invalid_argument("equispaced_seeds requires count >= 1");
    const uint64_t all = ~uint64_t(0);
    uint64_t stride = all / count;
    if (all % count == count - 1) ++stride; // exact floor(2^64 / count)
    std::vector<uint64_t> seeds(count);
    for (unsigned i = 0; i < count; ++i) seeds[i] = 1 + uint64_t(i) * stride;
    return seeds;
}

// ---------------------------------------------------------------------------
// Smoke battery

struct CheckResult {
    std::string name;
    std::vector<double> p_values; // one per seed
    unsigned failures = 0;        // p outside [0.001, 0.999]
    bool systematic = false;      // every seed failed
};

struct SmokeReport {
    std::vector<CheckResult> forward;
    std::vector<CheckResult> reversed;
    unsigned seed_count = 0;
    size_t outputs_per_seed = 0;

    static bool has_systematic(const std::vector<CheckResult>& checks,
                               std::initializer_list<const char*> names) {
        for (const auto& c : checks)
            for (const char* n : names)
                if (c.name == n && c.systematic) return true;
        return false;
    }
};

namespace detail {

inline double monobit_p(std::span<const uint64_t> outputs, unsigned w) {
    uint64_t ones = 0;
    for (uint64_t v : outputs) ones += static_cast<unsigned>(std::popcount(v));
    const double nbits = double(outputs.size()) * w;
    const double z = (2.0 * double(ones) - nbits) / std::sqrt(nbits);
    return normal_cdf(z);
}

inline double byte_freq_p(std::span<const uint64_t> outputs, unsigned w) {
    const unsigned bytes_per_word = (w + 7) / 8;
    std::array<uint64_t, 256> bins{};
    for (uint64_t v : outputs)
        for (unsigned b = 0; b < bytes_per_word; ++b) bins[(v >> (8 * b)) & 0xff]++;
    const double total = double(outputs.size()) * bytes_per_word;
    const double expected = total / 256.0;
    double chi2 = 0;
    for (uint64_t c : bins) {
        const double d = double(c) - expected;
        chi2 += d * d / expected;
    }
    return chi2_sf(chi2, 255.0);
}

// One-sided structural probe: how surprising is finding a recurrence
// shorter than the random expectation of len/2. The statistic is discrete,
// so the p-value is capped below the 0.999 failure bound and the check can
// only fire on the short side.
inline double lincomp_p(std::span<const uint8_t> bits) {
    const unsigned L = linear_complexity(bits);
    const double dev = double(L) - double(bits.size()) / 2.0;
    if (dev >= 0) return 0.999;
    return std::min(0.999, (64.0 / 27.0) * std::pow(4.0, dev));
}

} // namespace detail

// Monobit, byte-frequency chi-square and a low-bit linear-complexity probe
// over `seed_count` equispaced seeds, on the generator and on its
// bit-reversed outputs. A check fails a seed when its p-value leaves
// [0.001, 0.999]; a failure on every seed is systematic. The reversed run
// probes the same underlying low bit (reversal relocates it to the top; it
// does not destroy it).
inline SmokeReport smoke_battery(const GeneratorConfig& cfg, unsigned seed_count, size_t output_count) {
    cfg.validate();
    constexpr size_t kLincompBits = 512;
    if (output_count < kLincompBits)
        throw std::invalid_argument("smoke battery needs at least 512 outputs per seed");
    SmokeReport report;
    report.seed_count = seed_count;
    report.outputs_per_seed = output_count;
    auto mk = [](const char* name) {
        CheckResult c;
        c.name = name;
        return c;
    };
    report.forward = {mk("monobit"), mk("byte_freq"), mk("lincomp_low_bit")};
    report.reversed = {mk("monobit"), mk("byte_freq"), mk("lincomp_low_bit")};

    std::vector<uint64_t> outputs(output_count), rev(output_count);
    std::vector<uint8_t> low_bits(kLincompBits);
    for (uint64_t seed : equispaced_seeds(seed_count)) {
        GeneratorState state = seed_from_u64(seed, cfg);
        for (auto& o : outputs) o = next(state, cfg);
        for (size_t i = 0; i < output_count; ++i) rev[i] = reverse_output(outputs[i], cfg.word_bits);
        for (size_t i = 0; i < kLincompBits; ++i) low_bits[i] = static_cast<uint8_t>(outputs[i] & 1u);

        const double lincomp = detail::lincomp_p(low_bits);
        report.forward[0].p_values.push_back(detail::monobit_p(outputs, cfg.word_bits));
        report.forward[1].p_values.push_back(detail::byte_freq_p(outputs, cfg.word_bits));
        report.forward[2].p_values.push_back(lincomp);
        report.reversed[0].p_values.push_back(detail::monobit_p(rev, cfg.word_bits));
        report.reversed[1].p_values.push_back(detail::byte_freq_p(rev, cfg.word_bits));
        report.reversed[2].p_values.push_back(lincomp);
    }
    for (auto* side : {&report.forward, &report.reversed})
        for (auto& check : *side) {
            for (double p : check.p_values)
                if (p < 0.001 || p > 0.999) ++check.failures;
            check.systematic = (check.failures == seed_count) && seed_count > 0;
        }
    return report;
}

} // namespace xsk
