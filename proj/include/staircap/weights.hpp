#pragma once

// Weight expansions w(z) and their integral form q*w(p/q).  The block values
// are the successive remainders of the Euclidean algorithm on (p, q), with
// multiplicities equal to the continued-fraction terms of p/q.

#include "staircap/cf.hpp"

#include <utility>
#include <vector>

namespace staircap {

struct WeightBlock {
    Rational value;        // > 0, strictly decreasing across blocks
    long long multiplicity;  // equals the corresponding CF term
};

using WeightExpansion = std::vector<WeightBlock>;

// q*w(p/q) as integer blocks: (q^(l0), r1^(l1), ...), last entry 1.
inline std::vector<std::pair<Int, long long>> integral_weight_blocks(const Int& p, const Int& q) {
    if (p <= 0 || q <= 0 || gcd(p, q) != 1) throw NotCoprime();
    if (p <= q) throw DomainError("need p > q >= 1");
    std::vector<std::pair<Int, long long>> blocks;
    Int a = p, b = q;
    while (b != 0) {
        Int k = a / b, r = a % b;
        blocks.emplace_back(b, static_cast<long long>(k));
        a = b;
        b = r;
    }
    return blocks;
}

inline std::vector<Int> integral_weights(const Int& p, const Int& q) {
    std::vector<Int> w;
    for (const auto& [v, mult] : integral_weight_blocks(p, q))
        for (long long i = 0; i < mult; ++i) w.push_back(v);
    return w;
}

inline WeightExpansion weight_expansion(const Rational& z) {
    if (z <= 1) throw DomainError("weight expansions are only taken for z > 1");
    Int p = num(z), q = den(z);
    WeightExpansion blocks;
    for (const auto& [v, mult] : integral_weight_blocks(p, q))
        blocks.push_back({Rational(v, q), mult});
    return blocks;
}

inline std::vector<Rational> flat_weights(const Rational& z) {
    std::vector<Rational> w;
    for (const auto& blk : weight_expansion(z))
        for (long long i = 0; i < blk.multiplicity; ++i) w.push_back(blk.value);
    return w;
}

// Number of weight entries = sum of the CF terms of z.
inline long long cf_length(const Rational& z) {
    long long n = 0;
    for (long long t : rational_to_cf(z).terms) n += t;
    return n;
}

}  // namespace staircap
