#pragma once

// Dense univariate polynomials over Q: exact arithmetic, Sturm-sequence
// real-root isolation/refinement, and reconstruction of rational or
// quadratic-irrational roots from high-precision brackets.  Everything here
// is exact; floating point is never consulted.

#include "staircap/surd.hpp"

#include <utility>
#include <vector>

namespace staircap {

struct Poly {
    std::vector<Rational> c;  // c[i] multiplies x^i
};

inline Poly ptrim(Poly p) {
    while (!p.c.empty() && p.c.back() == 0) p.c.pop_back();
    return p;
}

inline bool pzero(const Poly& p) { return p.c.empty(); }
inline long long pdeg(const Poly& p) { return static_cast<long long>(p.c.size()) - 1; }

inline Poly padd(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return ptrim(std::move(r));
}

inline Poly pneg(Poly a) {
    for (Rational& x : a.c) x = -x;
    return a;
}

inline Poly psub(const Poly& a, const Poly& b) { return padd(a, pneg(b)); }

inline Poly pmul(const Poly& a, const Poly& b) {
    if (pzero(a) || pzero(b)) return Poly{};
    Poly r;
    r.c.resize(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return ptrim(std::move(r));
}

inline Poly pscale(Poly a, const Rational& s) {
    for (Rational& x : a.c) x *= s;
    return ptrim(std::move(a));
}

inline Rational peval(const Poly& p, const Rational& x) {
    Rational v = 0;
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + p.c[i];
    return v;
}

inline Surd peval_surd(const Poly& p, const Surd& x) {
    Surd v(Rational(0));
    for (size_t i = p.c.size(); i-- > 0;) v = v * x + Surd(p.c[i]);
    return v;
}

inline Poly pderiv(const Poly& p) {
    Poly r;
    for (size_t i = 1; i < p.c.size(); ++i) r.c.push_back(p.c[i] * Rational(i));
    return ptrim(std::move(r));
}

// Exact quotient/remainder over Q.
inline std::pair<Poly, Poly> pdivmod(Poly a, const Poly& b) {
    if (pzero(b)) throw DomainError("polynomial division by zero");
    Poly q;
    long long db = pdeg(b);
    if (pdeg(a) >= db) q.c.resize(pdeg(a) - db + 1, Rational(0));
    while (!pzero(a) && pdeg(a) >= db) {
        long long shift = pdeg(a) - db;
        Rational f = a.c.back() / b.c.back();
        q.c[shift] = f;
        for (long long i = 0; i <= db; ++i) a.c[shift + i] -= f * b.c[i];
        a = ptrim(std::move(a));
    }
    return {ptrim(std::move(q)), std::move(a)};
}

inline Poly pmonic(Poly p) {
    p = ptrim(std::move(p));
    if (pzero(p)) return p;
    Rational lead = p.c.back();
    for (Rational& x : p.c) x /= lead;
    return p;
}

inline Poly pgcd(Poly a, Poly b) {
    a = pmonic(std::move(a));
    b = pmonic(std::move(b));
    while (!pzero(b)) {
        Poly r = pdivmod(a, b).second;
        a = std::move(b);
        b = pmonic(std::move(r));
    }
    return a;
}

inline Poly squarefree_part(const Poly& p) {
    Poly q = pmonic(p);
    if (pdeg(q) <= 1) return q;
    Poly g = pgcd(q, pderiv(q));
    if (pdeg(g) < 1) return q;
    return pmonic(pdivmod(q, g).first);
}

// All real roots lie in [-bound, bound].
inline Rational cauchy_bound(const Poly& p) {
    if (pdeg(p) < 1) throw DomainError("constant polynomial has no root bound");
    Rational m = 0;
    for (size_t i = 0; i + 1 < p.c.size(); ++i) {
        Rational a = boost::multiprecision::abs(p.c[i] / p.c.back());
        if (a > m) m = a;
    }
    return m + 1;
}

inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(ptrim(p));
    chain.push_back(pderiv(p));
    while (!pzero(chain.back()) && pdeg(chain.back()) >= 1) {
        Poly r = pneg(pdivmod(chain[chain.size() - 2], chain.back()).second);
        if (pzero(r)) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    int variations = 0, prev = 0;
    for (const Poly& p : chain) {
        Rational v = peval(p, x);
        int s = v.sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

// Number of distinct real roots in (lo, hi]; the polynomial behind the chain
// must be squarefree.
inline long long sturm_count(const std::vector<Poly>& chain, const Rational& lo,
                             const Rational& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

struct RootBracket {
    Rational lo, hi;  // root in (lo, hi]; lo == hi when the root is hit exactly
    bool exact() const { return lo == hi; }
    Rational mid() const { return (lo + hi) / 2; }
};

namespace detail {
inline void isolate_rec(const std::vector<Poly>& chain, const Rational& lo, const Rational& hi,
                        std::vector<RootBracket>& out) {
    long long n = sturm_count(chain, lo, hi);
    if (n == 0) return;
    if (n == 1) {
        out.push_back({lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    isolate_rec(chain, lo, mid, out);
    isolate_rec(chain, mid, hi, out);
}
}  // namespace detail

// Disjoint brackets, one per real root in (lo, hi], in ascending order.
inline std::vector<RootBracket> isolate_roots(const std::vector<Poly>& chain, const Rational& lo,
                                              const Rational& hi) {
    std::vector<RootBracket> out;
    detail::isolate_rec(chain, lo, hi, out);
    return out;
}

// Shrink a single-root bracket until its width is at most 2^-bits.
inline RootBracket refine_root(const Poly& sq, const std::vector<Poly>& chain, RootBracket b,
                               unsigned bits) {
    Rational eps = Rational(1, Int(1) << bits);
    while (!b.exact() && b.hi - b.lo > eps) {
        Rational mid = b.mid();
        if (peval(sq, mid) == 0) return {mid, mid};
        if (sturm_count(chain, b.lo, mid) == 1)
            b.hi = mid;
        else
            b.lo = mid;
    }
    return b;
}

// Small-denominator rationals within tol of x: the continued-fraction
// convergents that qualify, best first, capped so callers can verify each.
inline std::vector<Rational> rational_candidates(const Rational& x, const Rational& tol,
                                                 size_t maxCandidates = 4) {
    std::vector<Rational> out;
    Int hm1 = 1, km1 = 0;
    Rational rem = x;
    Int a = floor_rat(rem);
    Int h = a, k = 1;
    for (int i = 0; i < 200 && out.size() < maxCandidates; ++i) {
        Rational conv(h, k);
        if (boost::multiprecision::abs(conv - x) <= tol) out.push_back(conv);
        Rational frac = rem - Rational(a);
        if (frac == 0) break;
        rem = 1 / frac;
        a = floor_rat(rem);
        Int h2 = a * h + hm1, k2 = a * k + km1;
        hm1 = h;
        km1 = k;
        h = h2;
        k = k2;
    }
    return out;
}

struct AlgebraicRoot {
    Surd value;
    bool exact;
    RootBracket bracket;
};

// Try to express the target root of a squarefree polynomial exactly, either
// as a rational or as a root of a rational quadratic factor x^2 - s x + v
// guessed from pairing it with another real root; every guess is verified by
// exact evaluation/division.  brackets must cover all real roots, refined to
// far below the reconstruction tolerance.
inline AlgebraicRoot reconstruct_root(const Poly& sq, const std::vector<RootBracket>& brackets,
                                      size_t target) {
    const RootBracket& tb = brackets[target];
    if (tb.exact()) return {Surd(tb.lo), true, tb};
    Rational tol(1, Int(1) << 90);
    Rational mt = tb.mid();
    for (const Rational& r : rational_candidates(mt, tol))
        if (peval(sq, r) == 0 && tb.lo < r && r <= tb.hi) return {Surd(r), true, tb};
    for (size_t j = 0; j < brackets.size(); ++j) {
        if (j == target) continue;
        Rational mj = brackets[j].mid();
        for (const Rational& s : rational_candidates(mt + mj, tol)) {
            for (const Rational& v : rational_candidates(mt * mj, tol)) {
                Poly quad{{v, -s, Rational(1)}};
                auto [quo, rem] = pdivmod(sq, quad);
                (void)quo;
                if (!pzero(rem)) continue;
                Rational disc = s * s - 4 * v;
                if (disc < 0) continue;
                Surd rt = surd_normalize(0, Rational(1, 2), disc);
                for (int pick = 0; pick < 2; ++pick) {
                    Surd cand = Surd(s / 2) + (pick == 0 ? rt : -rt);
                    if (surd_cmp(cand, Surd(tb.lo)) == Ordering::Greater &&
                        surd_cmp(cand, Surd(tb.hi)) != Ordering::Greater)
                        return {cand, true, tb};
                }
            }
        }
    }
    return {Surd(mt), false, tb};
}

}  // namespace staircap
