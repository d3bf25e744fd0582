#pragma once

// Staircase families: center continued fractions and linear relations for
// the U/L/E families, limit constants via the linear recurrence, blocking
// classes and their blocked intervals (closed forms for the U family, a
// generic quartic solver otherwise), the b = 1/3 staircase, and the center
// symmetries Psi/Phi/Sh.

#include "staircap/classes.hpp"
#include "staircap/polyroot.hpp"

#include <string>
#include <utility>
#include <vector>

namespace staircap {

enum class Family { U, L, E };
enum class Direction { lower, upper };
enum class Ending { shortEnd, longEnd };

struct StairFamilySpec {
    Family family;
    Direction dir;
    long long n;
    Ending ending;
};

inline long long sigma_of(long long n) { return (2 * n + 1) * (2 * n + 5); }

inline void validate_spec(const StairFamilySpec& s) {
    bool needsOne = (s.family == Family::U && s.dir == Direction::lower) ||
                    (s.family == Family::L && s.dir == Direction::upper) ||
                    (s.family == Family::E && s.dir == Direction::lower);
    if (s.n < (needsOne ? 1 : 0)) throw DomainError("n below the family's valid range");
}

// "U:u:0:short"; direction is "l"/"ell" or "u".
inline StairFamilySpec parse_family_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4) throw DomainError("family spec must be F:dir:n:ending: '" + text + "'");
    StairFamilySpec s;
    if (parts[0] == "U")
        s.family = Family::U;
    else if (parts[0] == "L")
        s.family = Family::L;
    else if (parts[0] == "E")
        s.family = Family::E;
    else
        throw DomainError("family must be U, L or E: '" + text + "'");
    if (parts[1] == "l" || parts[1] == "ell")
        s.dir = Direction::lower;
    else if (parts[1] == "u")
        s.dir = Direction::upper;
    else
        throw DomainError("direction must be l or u: '" + text + "'");
    try {
        s.n = std::stoll(parts[2]);
    } catch (const std::exception&) {
        throw DomainError("bad n in family spec: '" + text + "'");
    }
    if (parts[3] == "short")
        s.ending = Ending::shortEnd;
    else if (parts[3] == "long")
        s.ending = Ending::longEnd;
    else
        throw DomainError("ending must be short or long: '" + text + "'");
    validate_spec(s);
    return s;
}

inline std::string family_spec_str(const StairFamilySpec& s) {
    std::string out;
    out += (s.family == Family::U ? "U" : s.family == Family::L ? "L" : "E");
    out += (s.dir == Direction::lower) ? ":l:" : ":u:";
    out += std::to_string(s.n);
    out += (s.ending == Ending::shortEnd) ? ":short" : ":long";
    return out;
}

// Center of the k-th class: family head, k copies of the period {2n+5, 2n+1},
// then the ending 2n+4 (short) or 2n+5, 2n+2 (long).
inline std::vector<long long> center_terms(const StairFamilySpec& s, long long k) {
    validate_spec(s);
    if (k < 0) throw DomainError("k must be >= 0");
    long long n = s.n;
    std::vector<long long> t;
    if (s.family == Family::U && s.dir == Direction::upper) {
        t = {2 * n + 7};
    } else if (s.family == Family::L && s.dir == Direction::lower) {
        t = {6, 2 * n + 1};
    } else if (s.family == Family::L && s.dir == Direction::upper) {
        t = {6, 2 * n - 1, 2 * n + 1};
    } else if (s.family == Family::E && s.dir == Direction::lower) {
        t = {5, 1, 2 * n + 4, 2 * n + 1};
    } else if (s.family == Family::E && s.dir == Direction::upper) {
        t = {5, 1, 2 * n + 6};
    }
    for (long long i = 0; i < k; ++i) {
        t.push_back(2 * n + 5);
        t.push_back(2 * n + 1);
    }
    if (s.ending == Ending::shortEnd) {
        t.push_back(2 * n + 4);
    } else {
        t.push_back(2 * n + 5);
        t.push_back(2 * n + 2);
    }
    return t;
}

// Coefficients (A, B) of the homogeneous relation (2n+3) d = A p + B q.
inline std::pair<Int, Int> relation_coeffs(const StairFamilySpec& s) {
    long long n = s.n;
    if (s.family == Family::U)
        return (s.dir == Direction::lower) ? std::pair<Int, Int>{n + 1, n + 2}
                                           : std::pair<Int, Int>{n + 2, -(n + 4)};
    if (s.family == Family::L)
        return (s.dir == Direction::lower) ? std::pair<Int, Int>{n + 1, -(n - 1)}
                                           : std::pair<Int, Int>{-(n - 1), 11 * n + 2};
    return (s.dir == Direction::lower) ? std::pair<Int, Int>{n + 2, -(n + 4)}
                                       : std::pair<Int, Int>{-(n + 4), 11 * n + 31};
}

struct PrestairEntry {
    long long k;  // -1 for the backward-extension row
    Int d, m, p, q;
    bool formal;  // true when the k = -1 row is not a genuine class
};

struct PrestairFamily {
    StairFamilySpec spec;
    std::vector<PrestairEntry> entries;      // ascending k (may start at -1)
    std::vector<QuasiPerfectClass> classes;  // the k >= 0 rows only
};

inline PrestairFamily prestaircase_generate(const StairFamilySpec& spec, long long kMax) {
    validate_spec(spec);
    if (kMax < 0) throw DomainError("kMax must be >= 0");
    PrestairFamily fam{spec, {}, {}};
    auto [A, B] = relation_coeffs(spec);
    Int mod = 2 * spec.n + 3;
    for (long long k = 0; k <= kMax; ++k) {
        Rational z = cf_to_rational(ContinuedFraction{center_terms(spec, k)});
        Int p = num(z), q = den(z);
        Int numer = A * p + B * q;
        if (numer <= 0 || numer % mod != 0)
            throw DivisibilityFailure("relation value " + numer.str() + " is not a positive multiple of " +
                                      mod.str() + " for " + family_spec_str(spec) + " at k=" +
                                      std::to_string(k));
        Int d = numer / mod;
        Int m = 3 * d - p - q;
        fam.classes.push_back(make_quasi_perfect(d, m, p, q));
        fam.entries.push_back({k, d, m, p, q, false});
    }
    // Backward extension x_{-1} = (sigma+2) x_0 - x_1, available for the
    // short endings of L/u and E/l; it need not be a genuine class.
    bool extends = spec.ending == Ending::shortEnd &&
                   ((spec.family == Family::L && spec.dir == Direction::upper) ||
                    (spec.family == Family::E && spec.dir == Direction::lower));
    if (extends && kMax >= 1) {
        Int s2 = sigma_of(spec.n) + 2;
        const PrestairEntry &e0 = fam.entries[0], &e1 = fam.entries[1];
        PrestairEntry em1{-1, s2 * e0.d - e1.d, s2 * e0.m - e1.m, s2 * e0.p - e1.p,
                          s2 * e0.q - e1.q, false};
        try {
            make_quasi_perfect(em1.d, em1.m, em1.p, em1.q);
        } catch (const MathDomainError&) {
            em1.formal = true;
        }
        fam.entries.insert(fam.entries.begin(), em1);
    }
    return fam;
}

struct PrestairLimits {
    Surd lambda;           // (sigma+2 + (2n+3) sqrt(sigma)) / 2
    Surd D, M, P, Q;       // growth constants of d_k, m_k, p_k, q_k
    Surd bInf, aInf;       // M/D and P/Q; acc(bInf) = aInf
};

inline PrestairLimits prestaircase_limits(const StairFamilySpec& spec) {
    PrestairFamily fam = prestaircase_generate(spec, 1);
    long long n = spec.n;
    Int sigma = sigma_of(n);
    Rational sig(sigma);
    // x_k = X lambda^k + conj(X) conj(lambda)^k with
    // X = x0/2 + ((2 x1 - x0 (sigma+2)) / (2 (2n+3) sigma)) sqrt(sigma).
    auto X = [&](const Int& x0, const Int& x1) {
        Rational head(x0, 2);
        Rational tail = Rational(2 * x1 - x0 * (sigma + 2)) / Rational(2 * (2 * n + 3) * sigma);
        return surd_normalize(head, tail, sig);
    };
    const QuasiPerfectClass &c0 = fam.classes[0], &c1 = fam.classes[1];
    PrestairLimits lim;
    lim.lambda = surd_normalize(Rational(sigma + 2, 2), Rational(2 * n + 3, 2), sig);
    lim.D = X(c0.d, c1.d);
    lim.M = X(c0.m, c1.m);
    lim.P = X(c0.p, c1.p);
    lim.Q = X(c0.q, c1.q);
    lim.bInf = lim.M / lim.D;
    lim.aInf = lim.P / lim.Q;
    if (!is_acc_of(lim.bInf, lim.aInf))
        throw DomainError("limit constants violate the accumulation identity");
    return lim;
}

struct Dmin1Result {
    bool ok;
    Int delta;     // m1 d0 - m0 d1; its sign gives the monotonicity of b_k
    Rational lhs;  // |delta| / (2n+3)
    Surd rhs;      // sqrt(sigma) (s D - r M) / |s M - r D|
};

inline Dmin1Result dmin1_check(const StairFamilySpec& spec, const Int& r, const Int& s) {
    PrestairFamily fam = prestaircase_generate(spec, 1);
    PrestairLimits lim = prestaircase_limits(spec);
    const QuasiPerfectClass &c0 = fam.classes[0], &c1 = fam.classes[1];
    Dmin1Result res;
    res.delta = c1.m * c0.d - c0.m * c1.d;
    res.lhs = Rational(boost::multiprecision::abs(res.delta), 2 * spec.n + 3);
    Surd root = surd_normalize(0, 1, Rational(sigma_of(spec.n)));
    Surd numer = root * (Surd(Rational(s)) * lim.D - Surd(Rational(r)) * lim.M);
    Surd denom = surd_abs(Surd(Rational(s)) * lim.M - Surd(Rational(r)) * lim.D);
    res.rhs = numer / denom;
    res.ok = surd_cmp(Surd(res.lhs), res.rhs) != Ordering::Greater;
    return res;
}

// The three interwoven sequences of the staircase at b = 1/3.  Centers are
// g_k/g_{k-1} with g_{k+1} = 6 g_k - g_{k-1}; (d, m) come from 3d - m = p + q
// together with d - 3m alternating as below.
inline std::vector<QuasiPerfectClass> staircase_one_third(int i, long long kMax) {
    if (i < 0 || i > 2) throw DomainError("sequence index must be 0, 1 or 2");
    if (kMax < 1) throw DomainError("kMax must be >= 1");
    Int gPrev = 1;
    Int gCur = (i == 0) ? 2 : (i == 1) ? 4 : 5;
    std::vector<QuasiPerfectClass> out;
    Int e = (i == 0) ? 1 : (i == 1) ? -1 : 2;  // d - 3m at k = 1; negated each step
    for (long long k = 1; k <= kMax; ++k) {
        Int p = gCur, q = gPrev;
        // 3d - m = p + q and d - 3m = e give 8d = 3(p+q) - e.
        Int numer = 3 * (p + q) - e;
        if (numer % 8 != 0) throw DivisibilityFailure("b=1/3 sequence left the integer lattice");
        Int d = numer / 8;
        Int m = (d - e) / 3;
        if (3 * m != d - e) throw DivisibilityFailure("b=1/3 sequence left the integer lattice");
        out.push_back(make_quasi_perfect(d, m, p, q));
        Int gNext = 6 * gCur - gPrev;
        gPrev = gCur;
        gCur = gNext;
        e = -e;
    }
    return out;
}

// The blocking class attached to each family.
inline QuasiPerfectClass blocking_class(Family f, long long n) {
    switch (f) {
        case Family::U:
            if (n < 0) throw DomainError("U blocking classes need n >= 0");
            return make_quasi_perfect(n + 3, n + 2, 2 * n + 6, 1);
        case Family::L:
            if (n < 1) throw DomainError("L blocking classes need n >= 1");
            return make_quasi_perfect(5 * n, n - 1, 12 * n + 1, 2 * n);
        case Family::E:
        default:
            if (n < 0) throw DomainError("E blocking classes need n >= 0");
            return make_quasi_perfect(5 * n + 15, n + 4, 12 * n + 35, 2 * n + 6);
    }
}

struct BlockingInterval {
    Surd bLow, bHigh;  // the blocked b-interval J
    Surd zLow, zHigh;  // its image I under acc
    bool exact;
};

// Closed forms for the U-family blocking classes.
inline BlockingInterval blocking_family_closed_form(Family f, long long n) {
    if (f != Family::U) throw DomainError("closed-form endpoints are only known for the U family");
    if (n < 0) throw DomainError("need n >= 0");
    Int sigma = sigma_of(n);
    Surd root = surd_normalize(0, 1, Rational(sigma));
    BlockingInterval out;
    out.bLow = (Surd(Rational(2 * n * n + 6 * n + 3)) - root) / Surd(Rational(2 * n * n + 6 * n + 2));
    out.bHigh = Surd(Rational(n + 3)) * (Surd(Rational(3 * n + 7)) + root) /
                Surd(Rational(5 * n * n + 30 * n + 44));
    Surd core = Surd(Rational(sigma)) + Surd(Rational(2 * n + 3)) * root;
    out.zLow = core / Surd(Rational(2 * (2 * n + 1)));          // [{2n+5,2n+1}^inf]
    out.zHigh = Surd(Rational(6)) + core / Surd(Rational(2 * (2 * n + 5)));  // [2n+7;{...}^inf]
    out.exact = true;
    return out;
}

namespace detail {

// b as a function of the endpoint alpha: B(alpha)/C(alpha), linear over
// linear; lower endpoints use the q-form, upper endpoints the p-form.
inline void endpoint_b_polys(const QuasiPerfectClass& c, bool lowerEndpoint, Poly& B, Poly& C) {
    Rational d(c.d), m(c.m), p(c.p), q(c.q);
    if (lowerEndpoint) {
        B = Poly{{d, d - 3 * q}};
        C = Poly{{m, m - q}};
    } else {
        B = Poly{{d - 3 * p, d}};
        C = Poly{{m - p, m}};
    }
}

// Eliminating b = B/C from the accumulation-point equation
// (alpha^2+1)(1-b^2) = (3b^2-6b+7) alpha leaves a quartic in alpha.
inline Poly endpoint_quartic(const Poly& B, const Poly& C) {
    Poly B2 = pmul(B, B), C2 = pmul(C, C), BC = pmul(B, C);
    Poly x2p1{{Rational(1), Rational(0), Rational(1)}};
    Poly mid = padd(psub(pscale(B2, 3), pscale(BC, 6)), pscale(C2, 7));
    return ptrim(psub(pmul(x2p1, psub(C2, B2)), pmul(Poly{{Rational(0), Rational(1)}}, mid)));
}

inline AlgebraicRoot solve_endpoint(const Poly& quartic, const Rational& center,
                                    bool lowerEndpoint) {
    Poly sq = squarefree_part(quartic);
    if (pdeg(sq) < 1) throw DomainError("degenerate endpoint polynomial");
    std::vector<Poly> chain = sturm_chain(sq);
    Rational bound = cauchy_bound(sq);
    std::vector<RootBracket> roots;
    for (RootBracket& b : isolate_roots(chain, -bound, bound))
        roots.push_back(refine_root(sq, chain, b, 200));
    // lower endpoint: largest root inside (1, center); upper: smallest > center
    long long target = -1;
    for (size_t i = 0; i < roots.size(); ++i) {
        const Rational& rep = roots[i].hi;  // within 2^-200 of the root
        if (lowerEndpoint) {
            if (rep > 1 && rep < center) target = static_cast<long long>(i);
        } else if (rep > center) {
            target = static_cast<long long>(i);
            break;
        }
    }
    if (target < 0) throw DomainError("no endpoint root on the required side of the center");
    return reconstruct_root(sq, roots, static_cast<size_t>(target));
}

}  // namespace detail

// Blocked interval of a center-blocking class: each z-endpoint is a root of
// a quartic obtained by eliminating b, selected on the correct side of the
// center; exact whenever the root lives in a quadratic field.
inline BlockingInterval blocking_interval_generic(const QuasiPerfectClass& c) {
    if (!center_blocking_test(c)) throw NotBlocking();
    Rational center = c.center();
    Poly B, C;
    detail::endpoint_b_polys(c, true, B, C);
    AlgebraicRoot lo = detail::solve_endpoint(detail::endpoint_quartic(B, C), center, true);
    Surd bLo = peval_surd(B, lo.value) / peval_surd(C, lo.value);
    detail::endpoint_b_polys(c, false, B, C);
    AlgebraicRoot hi = detail::solve_endpoint(detail::endpoint_quartic(B, C), center, false);
    Surd bHi = peval_surd(B, hi.value) / peval_surd(C, hi.value);
    BlockingInterval out;
    out.zLow = lo.value;
    out.zHigh = hi.value;
    out.exact = lo.exact && hi.exact;
    if (surd_cmp(bLo, bHi) == Ordering::Greater) std::swap(bLo, bHi);
    out.bLow = bLo;
    out.bHigh = bHi;
    return out;
}

// The center symmetries.
enum class SymmetryMap { Psi, Phi, Sh };

inline Surd symmetry_apply(SymmetryMap map, const Surd& z) {
    switch (map) {
        case SymmetryMap::Psi:
            if (surd_cmp(z, Surd(Rational(6))) != Ordering::Greater)
                throw DomainError("Psi needs z > 6");
            return (Surd(Rational(6)) * z - Surd(Rational(35))) / (z - Surd(Rational(6)));
        case SymmetryMap::Phi:
            if (surd_cmp(z, Surd(Rational(35, 6))) != Ordering::Greater)
                throw DomainError("Phi needs z > 35/6");
            return (Surd(Rational(35)) * z - Surd(Rational(204))) /
                   (Surd(Rational(6)) * z - Surd(Rational(35)));
        case SymmetryMap::Sh:
        default:
            if (surd_cmp(z, Surd(Rational(1))) != Ordering::Greater)
                throw DomainError("Sh needs z > 1");
            return (Surd(Rational(6)) * z - Surd(Rational(1))) / z;
    }
}

}  // namespace staircap
