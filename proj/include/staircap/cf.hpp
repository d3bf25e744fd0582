#pragma once

// Continued fractions: exact evaluation, canonicalization (last term >= 2),
// and eventually periodic values as quadratic surds.

#include "staircap/surd.hpp"

#include <string>
#include <vector>

namespace staircap {

struct ContinuedFraction {
    std::vector<long long> terms;  // [l0; l1, ..., lN], all positive

    bool operator==(const ContinuedFraction& o) const { return terms == o.terms; }
};

// Accepts the [..., x, 1] alias and folds it into [..., x+1].
inline ContinuedFraction cf_canonicalize(ContinuedFraction cf) {
    if (cf.terms.size() > 1 && cf.terms.back() == 1) {
        cf.terms.pop_back();
        cf.terms.back() += 1;
    }
    return cf;
}

inline Rational cf_to_rational(const ContinuedFraction& cf) {
    if (cf.terms.empty()) throw DomainError("empty continued fraction");
    Rational v(cf.terms.back());
    for (size_t i = cf.terms.size() - 1; i-- > 0;) {
        if (cf.terms[i] <= 0 || v <= 0) throw DomainError("continued fraction terms must be positive");
        v = Rational(cf.terms[i]) + 1 / v;
    }
    return v;
}

inline ContinuedFraction rational_to_cf(const Rational& z) {
    if (z <= 1) throw DomainError("continued fractions are only taken for z > 1");
    ContinuedFraction cf;
    Int p = num(z), q = den(z);
    while (q != 0) {
        cf.terms.push_back(static_cast<long long>(p / q));
        Int r = p % q;
        p = q;
        q = r;
    }
    // The Euclidean algorithm already ends with a term >= 2 for non-integers.
    return cf;
}

// Value of [head; {cycle}^inf] as an exact Surd.
inline Surd periodic_cf_value(const std::vector<long long>& head,
                              const std::vector<long long>& cycle) {
    if (cycle.empty()) throw DomainError("empty cycle");
    // Fixed point of the cycle's fractional-linear map, x = (Ax+B)/(Cx+E).
    Int A = 1, B = 0, C = 0, E = 1;
    for (long long t : cycle) {
        if (t <= 0) throw DomainError("cycle terms must be positive");
        // multiply on the right by [[t,1],[1,0]]
        Int A2 = A * t + B, B2 = A;
        Int C2 = C * t + E, E2 = C;
        A = A2; B = B2; C = C2; E = E2;
    }
    // C x^2 + (E - A) x - B = 0, take the positive root.
    Surd disc = surd_normalize(0, 1, Rational((A - E) * (A - E) + 4 * B * C));
    Surd x = (Surd(Rational(A - E)) + disc) / Surd(Rational(2 * C));
    for (size_t i = head.size(); i-- > 0;) {
        if (head[i] <= 0) throw DomainError("head terms must be positive");
        x = Surd(Rational(head[i])) + Surd(Rational(1)) / x;
    }
    return x;
}

// CF literal: "[5;1,6,4]"; periodic tails as "[7;{5,1}*]" or "[{5,1}*]".
// Returns head terms and cycle terms (cycle empty for plain literals).
struct CfLiteral {
    std::vector<long long> head;
    std::vector<long long> cycle;
};

inline CfLiteral parse_cf_literal(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw DomainError("not a CF literal: '" + text + "'");
    t = t.substr(1, t.size() - 2);
    CfLiteral out;
    bool in_cycle = false, cycle_done = false;
    std::string cur;
    std::vector<long long>* sink = &out.head;
    for (size_t i = 0; i < t.size(); ++i) {
        char ch = t[i];
        if (ch == ';' || ch == ',') {
            if (!cur.empty()) {
                sink->push_back(std::stoll(cur));
                cur.clear();
            }
        } else if (ch == '{') {
            if (in_cycle || cycle_done) throw DomainError("bad CF literal: '" + text + "'");
            if (!cur.empty()) {
                sink->push_back(std::stoll(cur));
                cur.clear();
            }
            in_cycle = true;
            sink = &out.cycle;
        } else if (ch == '}') {
            if (!in_cycle) throw DomainError("bad CF literal: '" + text + "'");
            if (!cur.empty()) {
                sink->push_back(std::stoll(cur));
                cur.clear();
            }
            in_cycle = false;
            cycle_done = true;
            if (i + 1 >= t.size() || t[i + 1] != '*')
                throw DomainError("periodic CF needs '*' after '}': '" + text + "'");
            ++i;
            sink = nullptr;
        } else if (isdigit(static_cast<unsigned char>(ch))) {
            if (sink == nullptr) throw DomainError("terms after a cycle: '" + text + "'");
            cur += ch;
        } else {
            throw DomainError("bad character in CF literal: '" + text + "'");
        }
    }
    if (!cur.empty()) {
        if (sink == nullptr) throw DomainError("terms after a cycle: '" + text + "'");
        sink->push_back(std::stoll(cur));
    }
    if (out.head.empty() && out.cycle.empty())
        throw DomainError("empty CF literal: '" + text + "'");
    return out;
}

inline std::string cf_str(const ContinuedFraction& cf) {
    std::string s = "[";
    for (size_t i = 0; i < cf.terms.size(); ++i) {
        s += std::to_string(cf.terms[i]);
        s += (i == 0 && cf.terms.size() > 1) ? ";" : (i + 1 < cf.terms.size() ? "," : "");
    }
    s += "]";
    return s;
}

}  // namespace staircap
