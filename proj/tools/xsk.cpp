// xsk: command-line front end for the xorshift toolkit. Subcommands cover
// generation, characteristic-polynomial recovery, full-period
// certification, triple search, jump-ahead, and the desk-scale analyses.
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include "xsk/analysis.hpp"
#include "xsk/engine.hpp"
#include "xsk/factor_table.hpp"
#include "xsk/jump.hpp"
#include "xsk/search.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using nlohmann::json;

struct AlgoFlags {
    std::string algo;
    std::string triple;
    unsigned bits = 0;
    unsigned word_bits = 0;
    std::string scrambler;
    uint64_t multiplier = 0;
    std::string update;
};

void add_algo_flags(CLI::App* cmd, AlgoFlags& f) {
    cmd->add_option("--algo", f.algo,
                    "preset: xorshift128plus, xorshift1024plus, xorshift128star, "
                    "xorshift1024star, xsaddlike, toy6");
    cmd->add_option("--triple", f.triple, "shift triple a,b,c");
    cmd->add_option("--bits", f.bits, "state bits (with --triple)");
    cmd->add_option("--word-bits", f.word_bits, "word width w (default from --bits)");
    cmd->add_option("--scrambler", f.scrambler, "plus | star | none");
    cmd->add_option("--multiplier", f.multiplier, "odd constant for the star scrambler");
    cmd->add_option("--update", f.update, "marsaglia | xsadd");
}

xsk::ShiftTriple parse_triple(const std::string& text) {
    xsk::ShiftTriple t;
    char comma1 = 0, comma2 = 0;
    std::istringstream in(text);
    if (!(in >> t.a >> comma1 >> t.b >> comma2 >> t.c) || comma1 != ',' || comma2 != ',')
        throw CLI::ValidationError("--triple", "expected a,b,c");
    return t;
}

xsk::GeneratorConfig resolve_config(const AlgoFlags& f) {
    xsk::GeneratorConfig cfg;
    if (!f.algo.empty()) {
        if (f.algo == "xorshift128plus") cfg = xsk::xorshift128plus_config();
        else if (f.algo == "xorshift1024plus") cfg = xsk::xorshift1024plus_config();
        else if (f.algo == "xorshift128star") cfg = xsk::xorshift128star_config();
        else if (f.algo == "xorshift1024star") cfg = xsk::xorshift1024star_config();
        else if (f.algo == "toy6") cfg = xsk::toy6_config(xsk::Scrambler::plus);
        else if (f.algo == "xsaddlike") {
            cfg.word_bits = 32;
            cfg.word_count = 4;
            cfg.update = xsk::UpdateKind::xsadd_like;
            cfg.scrambler = xsk::Scrambler::plus;
            if (f.triple.empty())
                throw CLI::ValidationError("--algo", "xsaddlike needs --triple (its shifts are configuration)");
        } else {
            throw CLI::ValidationError("--algo", "unknown algorithm: " + f.algo);
        }
        if (!f.triple.empty()) cfg.shifts = parse_triple(f.triple);
    } else {
        if (f.triple.empty())
            throw CLI::ValidationError("", "need --algo or --bits/--triple");
        cfg = xsk::config_for_bits(f.bits ? f.bits : 128, parse_triple(f.triple), xsk::Scrambler::plus);
    }
    if (f.word_bits) {
        cfg.word_bits = f.word_bits;
        if (f.bits) {
            if (f.bits % f.word_bits)
                throw CLI::ValidationError("--word-bits", "must divide --bits");
            cfg.word_count = f.bits / f.word_bits;
        }
    }
    if (!f.scrambler.empty()) {
        if (f.scrambler == "plus") cfg.scrambler = xsk::Scrambler::plus;
        else if (f.scrambler == "star") cfg.scrambler = xsk::Scrambler::star;
        else if (f.scrambler == "none") cfg.scrambler = xsk::Scrambler::none;
        else throw CLI::ValidationError("--scrambler", "must be plus, star or none");
    }
    if (f.multiplier) cfg.star_multiplier = f.multiplier;
    if (!f.update.empty()) {
        if (f.update == "marsaglia") cfg.update = xsk::UpdateKind::marsaglia;
        else if (f.update == "xsadd") cfg.update = xsk::UpdateKind::xsadd_like;
        else throw CLI::ValidationError("--update", "must be marsaglia or xsadd");
    }
    cfg.validate();
    return cfg;
}

xsk::FactorTable resolve_table(const std::string& factors_path, unsigned n) {
    xsk::FactorTable table =
        factors_path.empty() ? xsk::builtin_factor_table(n) : xsk::load_factor_table(factors_path);
    const auto report = xsk::validate_factor_table(table);
    if (!report.ok()) throw std::runtime_error("factor table rejected: " + report.describe());
    if (table.n != n)
        throw std::runtime_error("factor table is for n=" + std::to_string(table.n) +
                                 ", generator has n=" + std::to_string(n));
    return table;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-" || path == "csv") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::string hex_word(uint64_t v, unsigned word_bits) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llx", (word_bits + 3) / 4,
                  static_cast<unsigned long long>(v));
    return buf;
}

std::string describe_config(const xsk::GeneratorConfig& cfg) {
    std::string s = "w" + std::to_string(cfg.word_bits) + "x" + std::to_string(cfg.word_count) +
                    ";triple=" + std::to_string(cfg.shifts.a) + "," + std::to_string(cfg.shifts.b) +
                    "," + std::to_string(cfg.shifts.c);
    switch (cfg.scrambler) {
        case xsk::Scrambler::plus: s += ";plus"; break;
        case xsk::Scrambler::none: s += ";none"; break;
        case xsk::Scrambler::star:
            s += ";star:" + std::to_string(cfg.star_multiplier);
            break;
    }
    if (cfg.update == xsk::UpdateKind::xsadd_like) s += ";xsadd";
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"xorshift generator engineering toolkit"};
    app.require_subcommand(1);

    AlgoFlags gen_f, cp_f, cert_f, jp_f, jump_f, zl_f, eq_f, lc_f, smoke_f, bench_f;

    // gen
    auto* gen = app.add_subcommand("gen", "emit pseudorandom output words");
    add_algo_flags(gen, gen_f);
    uint64_t gen_seed = 1;
    uint64_t gen_count = 16;
    bool gen_hex = false, gen_reverse = false;
    std::string gen_out;
    gen->add_option("--seed", gen_seed, "64-bit seed");
    gen->add_option("--count", gen_count, "number of outputs");
    gen->add_flag("--hex", gen_hex, "one lowercase zero-padded word per line");
    gen->add_flag("--reverse", gen_reverse, "bit-reverse each output word");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // charpoly
    auto* cp = app.add_subcommand("charpoly", "recover the characteristic polynomial");
    add_algo_flags(cp, cp_f);

    // certify
    auto* cert = app.add_subcommand("certify", "certify a triple for full period");
    add_algo_flags(cert, cert_f);
    std::string cert_factors;
    cert->add_option("--factors", cert_factors, "factor table file (default: builtin)");

    // search
    auto* search = app.add_subcommand("search", "enumerate full-period triples");
    unsigned search_bits = 128, search_max_ab = 64, search_c_max = 63;
    std::string search_factors, search_out;
    search->add_option("--bits", search_bits, "state bits (128 or 1024)");
    search->add_option("--max-ab", search_max_ab, "maximum of a+b");
    search->add_option("--c-max", search_c_max, "maximum c");
    search->add_option("--factors", search_factors, "factor table file (default: builtin)");
    search->add_option("--out", search_out, "output file (default stdout)");

    // jump-poly
    auto* jp = app.add_subcommand("jump-poly", "compute a jump mask x^j mod P");
    add_algo_flags(jp, jp_f);
    std::string jp_j = "2^64", jp_factors;
    bool jp_raw = false;
    jp->add_option("--j", jp_j, "step count (decimal or 2^k)");
    jp->add_option("--factors", jp_factors, "factor table file (default: builtin)");
    jp->add_flag("--raw", jp_raw, "print only the constant list");

    // jump
    auto* jump = app.add_subcommand("jump", "advance a seeded state by j steps");
    add_algo_flags(jump, jump_f);
    uint64_t jump_seed = 1;
    std::string jump_j = "2^64", jump_factors;
    uint64_t jump_count = 0;
    bool jump_hex = false;
    jump->add_option("--seed", jump_seed, "64-bit seed");
    jump->add_option("--j", jump_j, "step count (decimal or 2^k)");
    jump->add_option("--factors", jump_factors, "factor table file (default: builtin)");
    jump->add_option("--count", jump_count, "emit this many outputs after jumping");
    jump->add_flag("--hex", jump_hex, "hex output mode");

    // zeroland
    auto* zl = app.add_subcommand("zeroland", "escape-from-zeroland curve");
    add_algo_flags(zl, zl_f);
    std::string zl_out;
    zl->add_option("--out", zl_out, "csv = full curve to stdout; default: summary");

    // eqdist
    auto* eq = app.add_subcommand("eqdist", "exhaustive equidistribution census (toy scale)");
    add_algo_flags(eq, eq_f);
    unsigned eq_k = 2;
    bool eq_json = false;
    eq->add_option("--k", eq_k, "tuple length");
    eq->add_flag("--json", eq_json, "machine-readable output");

    // lincomp
    auto* lc = app.add_subcommand("lincomp", "linear complexity of an output bit");
    add_algo_flags(lc, lc_f);
    uint64_t lc_seed = 1;
    uint64_t lc_count = 512;
    unsigned lc_bit = 0;
    bool lc_json = false;
    lc->add_option("--seed", lc_seed, "64-bit seed");
    lc->add_option("--count", lc_count, "number of bits");
    lc->add_option("--bit", lc_bit, "output bit index");
    lc->add_flag("--json", lc_json, "machine-readable output");

    // smoke
    auto* smoke = app.add_subcommand("smoke", "small statistical smoke battery");
    add_algo_flags(smoke, smoke_f);
    unsigned smoke_seeds = 100;
    uint64_t smoke_count = 10000;
    bool smoke_json = false;
    smoke->add_option("--seeds", smoke_seeds, "number of equispaced seeds");
    smoke->add_option("--count", smoke_count, "outputs per seed");
    smoke->add_flag("--json", smoke_json, "machine-readable output");

    // bench
    auto* bench = app.add_subcommand("bench", "informal speed measurement");
    add_algo_flags(bench, bench_f);
    uint64_t bench_count = 200'000'000;
    bench->add_option("--count", bench_count, "iterations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            const auto cfg = resolve_config(gen_f);
            auto state = xsk::seed_from_u64(gen_seed, cfg);
            std::ofstream file;
            std::ostream& out = open_out(gen_out, file);
            const unsigned bytes = (cfg.word_bits + 7) / 8;
            for (uint64_t i = 0; i < gen_count; ++i) {
                uint64_t v = xsk::next(state, cfg);
                if (gen_reverse) v = xsk::reverse_output(v, cfg.word_bits);
                if (gen_hex) {
                    out << hex_word(v, cfg.word_bits) << "\n";
                } else {
                    char buf[8];
                    for (unsigned b = 0; b < bytes; ++b) buf[b] = static_cast<char>((v >> (8 * b)) & 0xff);
                    out.write(buf, bytes);
                }
            }
        } else if (*cp) {
            const auto cfg = resolve_config(cp_f);
            const auto res = xsk::charpoly(cfg);
            std::cout << res.poly.to_hex() << "\n";
            std::cout << "weight=" << xsk::weight(res.poly) << "\n";
            if (!res.full_degree) {
                std::cerr << "reducible or degenerate: recurrence length " << res.recurrence_length
                          << " < " << cfg.state_bits() << "\n";
                return 1;
            }
        } else if (*cert) {
            const auto cfg = resolve_config(cert_f);
            const unsigned n = cfg.state_bits();
            const auto table = resolve_table(cert_factors, n);
            const auto c = xsk::certify_triple(n, cfg.shifts, table);
            std::cout << "triple=" << c.triple.a << "," << c.triple.b << "," << c.triple.c << "\n"
                      << c.poly.to_hex() << "\n"
                      << "weight=" << c.poly_weight << "\n"
                      << "primitive=" << (c.primitive ? "true" : "false") << "\n";
        } else if (*search) {
            const auto table = resolve_table(search_factors, search_bits);
            const auto results = xsk::enumerate_full_period_triples(
                search_bits, {search_max_ab, search_c_max}, table);
            std::ofstream file;
            std::ostream& out = open_out(search_out, file);
            out << "a,b,c,weight\n";
            for (const auto& r : results)
                out << r.triple.a << "," << r.triple.b << "," << r.triple.c << "," << r.poly_weight << "\n";
        } else if (*jp) {
            const auto cfg = resolve_config(jp_f);
            const auto table = resolve_table(jp_factors, cfg.state_bits());
            const auto cert2 = xsk::certify_full_period(cfg, table);
            const auto mask = xsk::jump_poly(cert2, xsk::parse_big(jp_j));
            if (jp_raw) {
                std::cout << xsk::format_jump_words(mask) << "\n";
            } else {
                std::cout << "j=" << xsk::to_decimal(mask.step_count) << "\n"
                          << "words=" << xsk::format_jump_words(mask) << "\n"
                          << "config=" << describe_config(mask.config) << "\n";
            }
        } else if (*jump) {
            const auto cfg = resolve_config(jump_f);
            const auto table = resolve_table(jump_factors, cfg.state_bits());
            const auto cert2 = xsk::certify_full_period(cfg, table);
            const auto mask = xsk::jump_poly(cert2, xsk::parse_big(jump_j));
            auto state = xsk::seed_from_u64(jump_seed, cfg);
            xsk::apply_jump(state, mask, cfg);
            if (jump_count == 0) {
                for (unsigned k = 0; k < cfg.word_count; ++k)
                    std::cout << "s[" << k << "]=" << hex_word(state.words[k], cfg.word_bits) << "\n";
                std::cout << "p=" << state.ptr << "\n";
            } else {
                for (uint64_t i = 0; i < jump_count; ++i) {
                    const uint64_t v = xsk::next(state, cfg);
                    if (jump_hex) std::cout << hex_word(v, cfg.word_bits) << "\n";
                    else std::cout << v << "\n";
                }
            }
        } else if (*zl) {
            const auto cfg = resolve_config(zl_f);
            const auto report = xsk::zeroland_curve(cfg);
            if (zl_out.empty()) {
                std::printf("mean=%.4f\nstddev=%.4f\n", report.mean, report.stddev);
            } else {
                std::ofstream file;
                std::ostream& out = open_out(zl_out, file);
                out << "position,mean_ones_fraction\n";
                for (size_t q = 0; q < report.curve.size(); ++q) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%zu,%.6f\n", q, report.curve[q]);
                    out << buf;
                }
            }
        } else if (*eq) {
            const auto cfg = resolve_config(eq_f);
            const auto census = xsk::equidist_census(cfg, eq_k);
            if (eq_json) {
                json j;
                j["k"] = census.k;
                j["verdict"] = census.verdict;
                j["period"] = census.period;
                j["word_bits"] = census.word_bits;
                std::map<std::string, uint64_t> histogram;
                for (const auto& [key, cnt] : census.counts) histogram[std::to_string(cnt)]++;
                j["count_histogram"] = histogram;
                j["zero_tuple_count"] =
                    census.counts.count(0) ? census.counts.at(0) : 0;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "period=" << census.period << "\n"
                          << "k=" << census.k << "\n"
                          << "equidistributed up to k=" << census.verdict << "\n";
            }
        } else if (*lc) {
            const auto cfg = resolve_config(lc_f);
            auto state = xsk::seed_from_u64(lc_seed, cfg);
            std::vector<uint8_t> bits(lc_count);
            for (auto& b : bits) b = static_cast<uint8_t>((xsk::next(state, cfg) >> lc_bit) & 1u);
            const unsigned deg = xsk::linear_complexity(bits);
            if (lc_json) {
                json j{{"bit", lc_bit}, {"bits", lc_count}, {"linear_complexity", deg}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "linear_complexity=" << deg << "\n";
            }
        } else if (*smoke) {
            const auto cfg = resolve_config(smoke_f);
            const auto report = xsk::smoke_battery(cfg, smoke_seeds, smoke_count);
            if (smoke_json) {
                json j;
                j["seeds"] = report.seed_count;
                j["outputs_per_seed"] = report.outputs_per_seed;
                for (auto [label, side] : {std::pair{"forward", &report.forward},
                                           std::pair{"reversed", &report.reversed}}) {
                    for (const auto& c : *side)
                        j[label][c.name] = {{"failures", c.failures},
                                            {"systematic", c.systematic},
                                            {"p_values", c.p_values}};
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (auto [label, side] : {std::pair{"forward", &report.forward},
                                           std::pair{"reversed", &report.reversed}}) {
                    for (const auto& c : *side)
                        std::cout << label << " " << c.name << ": failures " << c.failures << "/"
                                  << report.seed_count << (c.systematic ? " SYSTEMATIC" : "") << "\n";
                }
            }
        } else if (*bench) {
            // Informational only: ns per 64 output bits on this machine. A
            // xor sink keeps the loop from being optimized away; 32-bit
            // configs emit two values per 64 bits.
            const auto cfg = resolve_config(bench_f);
            auto state = xsk::seed_from_u64(1, cfg);
            const unsigned per64 = cfg.word_bits <= 32 ? 2 : 1;
            uint64_t sink = 0;
            const auto start = std::chrono::steady_clock::now();
            for (uint64_t i = 0; i < bench_count; ++i) sink ^= xsk::next(state, cfg);
            const auto stop = std::chrono::steady_clock::now();
            const double ns = std::chrono::duration<double, std::nano>(stop - start).count();
            std::printf("informational: %.2f ns / 64 bits (sink %016llx)\n",
                        ns / double(bench_count) * per64, static_cast<unsigned long long>(sink));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
