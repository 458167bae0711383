#pragma once

// Factor tables: the distinct prime factorization of 2^n - 1, required to
// certify that a characteristic polynomial is primitive (full period). The
// toolkit never factors integers itself; tables are inputs, validated at
// load by an exact product check and Miller-Rabin on every listed prime.
//
// File format:
//   n=<decimal>
//   <prime-decimal>[^<multiplicity>]     one per line
//   # comment lines and blank lines are ignored

#include "xsk/bignum.hpp"
#include "xsk/gf2poly.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xsk {

struct FactorEntry {
    BigUint prime;
    unsigned multiplicity = 1;
};

struct FactorTable {
    unsigned n = 0; // state bits; the table factors 2^n - 1
    std::vector<FactorEntry> factors;
};

struct FactorTableReport {
    bool product_ok = false;
    std::vector<size_t> composite_indices; // entries failing the primality test
    bool ok() const { return product_ok && composite_indices.empty(); }
    std::string describe() const {
        if (ok()) return "valid";
        std::string msg;
        if (!product_ok) msg += "product of entries does not equal 2^n-1";
        for (size_t i : composite_indices) {
            if (!msg.empty()) msg += "; ";
            msg += "entry " + std::to_string(i) + " is composite";
        }
        return msg;
    }
};

inline FactorTableReport validate_factor_table(const FactorTable& t, unsigned mr_rounds = 40) {
    FactorTableReport report;
    BigUint product = 1;
    for (const auto& f : t.factors)
        for (unsigned i = 0; i < f.multiplicity; ++i) product *= f.prime;
    report.product_ok = (t.n > 0) && (product == big_pow2(t.n) - 1);
    for (size_t i = 0; i < t.factors.size(); ++i)
        if (!is_probable_prime(t.factors[i].prime, mr_rounds))
            report.composite_indices.push_back(i);
    return report;
}

inline FactorTable parse_factor_table(std::istream& in) {
    FactorTable t;
    std::string line;
    bool have_n = false;
    while (std::getline(in, line)) {
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(begin, end - begin + 1);
        if (!have_n) {
            if (tok.rfind("n=", 0) != 0)
                throw std::invalid_argument("factor table must start with n=<decimal>");
            t.n = static_cast<unsigned>(std::stoul(tok.substr(2)));
            have_n = true;
            continue;
        }
        FactorEntry e;
        const size_t caret = tok.find('^');
        if (caret == std::string::npos) {
            e.prime = parse_big(tok);
        } else {
            e.prime = parse_big(tok.substr(0, caret));
            e.multiplicity = static_cast<unsigned>(std::stoul(tok.substr(caret + 1)));
            if (e.multiplicity == 0) throw std::invalid_argument("factor multiplicity must be positive");
        }
        t.factors.push_back(std::move(e));
    }
    if (!have_n) throw std::invalid_argument("factor table missing n= header");
    return t;
}

inline FactorTable parse_factor_table(const std::string& text) {
    std::istringstream in(text);
    return parse_factor_table(in);
}

inline FactorTable load_factor_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open factor table: " + path);
    return parse_factor_table(in);
}

// Primitivity of p over Z/2Z, certified through the order of x in the
// quotient ring: x^(2^n-1) = 1 and x^((2^n-1)/q) != 1 for every distinct
// prime q | 2^n-1. Together these imply irreducibility as well, so no
// separate factorization pass is needed.
inline bool is_primitive(const Gf2Poly& p, const FactorTable& t) {
    if (p.degree() != static_cast<int>(t.n))
        throw std::invalid_argument("polynomial degree does not match factor table n");
    const BigUint order = big_pow2(t.n) - 1;
    const Gf2Poly x = Gf2Poly::x();
    const Gf2Poly one = Gf2Poly::one();
    if (poly_powmod(x, order, p) != one) return false;
    for (const auto& f : t.factors)
        if (poly_powmod(x, order / f.prime, p) == one) return false;
    return true;
}

// Factorizations of 2^n-1 shipped with the toolkit (n = 6, 128, 1024).
// 2^1024-1 splits along the Fermat numbers F0..F9. The same text lives in
// data/factors-<n>.txt for use via --factors.
inline const FactorTable& builtin_factor_table(unsigned n) {
    static const FactorTable t6 = parse_factor_table(std::string(
        "n=6\n"
        "# 2^6-1 = 63 = 3^2 * 7\n"
        "3^2\n"
        "7\n"));
    static const FactorTable t128 = parse_factor_table(std::string(
        "n=128\n"
        "3\n5\n17\n257\n641\n65537\n274177\n6700417\n67280421310721\n"));
    static const FactorTable t1024 = parse_factor_table(std::string(
        "n=1024\n"
        "3\n5\n17\n257\n641\n65537\n274177\n2424833\n6700417\n67280421310721\n"
        "1238926361552897\n"
        "59649589127497217\n"
        "5704689200685129054721\n"
        "7455602825647884208337395736200454918783366342657\n"
        "93461639715357977769163558199606896584051237541638188580280321\n"
        "741640062627530801524787141901937474059940781097519023905821316144415759504705008092818711693940737\n"));
    switch (n) {
        case 6: return t6;
        case 128: return t128;
        case 1024: return t1024;
        default: throw std::invalid_argument("no builtin factor table for n=" + std::to_string(n));
    }
}

} // namespace xsk
