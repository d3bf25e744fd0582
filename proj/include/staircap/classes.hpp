#pragma once

// Diophantine / quasi-perfect classes, the obstruction function mu, the
// liveness and blocking tests, and the small Diophantine searches.

#include "staircap/accpoint.hpp"
#include "staircap/weights.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace staircap {

struct ExClass {
    Int d;
    Int m;
    std::vector<Int> mvec;
};

// d^2 - m^2 - sum mi^2 == -1  and  3d - m - sum mi == 1.
inline bool check_diophantine(const ExClass& c) {
    Int sq = 0, lin = 0;
    for (const Int& mi : c.mvec) {
        sq += mi * mi;
        lin += mi;
    }
    return c.d * c.d - c.m * c.m - sq == -1 && 3 * c.d - c.m - lin == 1;
}

struct QuasiPerfectClass {
    Int d, m, p, q;  // mvec = q*w(p/q)

    Rational center() const { return Rational(p, q); }
    ExClass to_exclass() const { return ExClass{d, m, integral_weights(p, q)}; }
};

inline QuasiPerfectClass make_quasi_perfect(const Int& d, const Int& m, const Int& p,
                                            const Int& q) {
    if (!(p > q && q >= 1) || gcd(p, q) != 1) throw NotCoprime();
    if (d * d - m * m != p * q - 1)
        throw NotDiophantine("d^2 - m^2 != pq - 1");
    if (3 * d != m + p + q)
        throw NotDiophantine("3d != m + p + q");
    return QuasiPerfectClass{d, m, p, q};
}

// mu_{(d,m;m),b}(z) = m . w(z) / (d - mb), mvec sorted nonincreasing first.
inline Rational mu_at(const ExClass& c, const Rational& b, const Rational& z) {
    if (z <= 1) throw DomainError("z must exceed 1");
    if (b < 0 || b >= 1) throw DomainError("b must lie in [0, 1)");
    Rational denom = Rational(c.d) - Rational(c.m) * b;
    if (denom <= 0) throw DegenerateDenominator();
    std::vector<Int> mv = c.mvec;
    std::sort(mv.begin(), mv.end(), std::greater<Int>());
    std::vector<Rational> w = flat_weights(z);
    Rational dot = 0;
    size_t n = std::min(mv.size(), w.size());
    for (size_t i = 0; i < n; ++i) dot += Rational(mv[i]) * w[i];
    return dot / denom;
}

// The window around the center where mu is piecewise linear/constant.  The
// endpoint formulas act on the odd-length CF representation of the center
// (split a trailing term t >= 2 into t-1, 1 when needed); integer centers
// have no finite right endpoint.
struct MuWindow {
    Rational z1;
    std::optional<Rational> z2;  // nullopt = +infinity (integer center)
};

inline MuWindow mu_window(const Rational& center) {
    ContinuedFraction cf = rational_to_cf(center);
    MuWindow w;
    std::vector<long long> odd = cf.terms;
    if (odd.size() % 2 == 1) {  // split [.., t] -> [.., t-1, 1]
        odd.back() -= 1;
        if (odd.back() == 0) odd.pop_back();  // integer center [n] -> [n-1, 1]
        odd.push_back(1);
    }
    std::vector<long long> lo = odd;
    lo.back() += 1;
    w.z1 = cf_to_rational(ContinuedFraction{lo});
    if (cf.terms.size() == 1) {
        w.z2 = std::nullopt;  // mu stays p/(d - mb) for all z >= center
    } else if (cf.terms.size() % 2 == 0) {
        std::vector<long long> hi = cf.terms;
        hi.back() -= 1;
        w.z2 = cf_to_rational(cf_canonicalize(ContinuedFraction{hi}));
    } else {
        // Odd-length canonical form: dropping the last canonical term is the
        // normalized version of decrementing the trailing 1 of the odd rep.
        std::vector<long long> hi(cf.terms.begin(), cf.terms.end() - 1);
        w.z2 = cf_to_rational(cf_canonicalize(ContinuedFraction{hi}));
    }
    return w;
}

enum class MuRegime { LeftLinear, RightConstant, General };

struct ObstructionValue {
    Surd value;
    MuRegime regime;
};

inline ObstructionValue mu_near_center(const QuasiPerfectClass& c, const Surd& b,
                                       const Surd& z) {
    require_b_range(b);
    MuWindow w = mu_window(c.center());
    Surd center(c.center());
    if (surd_cmp(z, Surd(w.z1)) == Ordering::Less) throw OutOfWindow();
    if (w.z2 && surd_cmp(z, Surd(*w.z2)) != Ordering::Less) throw OutOfWindow();
    Surd denom = Surd(Rational(c.d)) - Surd(Rational(c.m)) * b;
    if (denom.sign() <= 0) throw DegenerateDenominator();
    if (surd_cmp(z, center) == Ordering::Less)
        return {Surd(Rational(c.q)) * z / denom, MuRegime::LeftLinear};
    return {Surd(Rational(c.p)) / denom, MuRegime::RightConstant};
}

// mu_{E,b}(z) > V_b(z), all exact.
inline bool nontrivial_at(const ExClass& c, const Rational& b, const Rational& z) {
    Surd mu(mu_at(c, b, z));
    return sqrt_cmp(mu, volume_sq(Surd(b), Surd(z))) == Ordering::Greater;
}

inline bool nontrivial_at(const QuasiPerfectClass& c, const Surd& b, const Surd& z) {
    Surd mu = mu_near_center(c, b, z).value;
    return sqrt_cmp(mu, volume_sq(b, z)) == Ordering::Greater;
}

// |bd - m| < sqrt(1 - b^2).
inline bool is_b_perfect(const Int& d, const Int& m, const Surd& b) {
    require_b_range(b);
    Surd lhs = surd_abs(b * Surd(Rational(d)) - Surd(Rational(m)));
    return sqrt_cmp(lhs, Surd(Rational(1)) - b * b) == Ordering::Less;
}

inline bool is_b_perfect(const QuasiPerfectClass& c, const Surd& b) {
    return is_b_perfect(c.d, c.m, b);
}

// The b-interval conditions under which mu_{E,b} dominates at the center.
// r = s gives the liveness interval; side selects the comparison variant
// for b below/above r/s.
enum class Side { below, above };

inline bool live_condition(const QuasiPerfectClass& c, const Surd& b, const Int& r,
                           const Int& s, Side side) {
    require_b_range(b);
    const Int &d = c.d, &m = c.m;
    if (side == Side::below) {
        // (m^2-1)/(dm) <= b <= (s + m(rd - sm)) / (r + d(rd - sm))
        if (m != 0) {
            Rational lower(m * m - 1, d * m);
            if (surd_cmp(b, Surd(lower)) == Ordering::Less) return false;
        }
        Int t = r * d - s * m;
        Rational upper(s + m * t, r + d * t);
        return surd_cmp(b, Surd(upper)) != Ordering::Greater;
    }
    // (m(sm - rd) - s)/(d(sm - rd) - r) <= b <= m/d
    Int t = s * m - r * d;
    Rational lower(m * t - s, d * t - r);
    if (surd_cmp(b, Surd(lower)) == Ordering::Less) return false;
    return surd_cmp(b, Surd(Rational(m, d))) != Ordering::Greater;
}

// Is the obstruction nontrivial at its own center for b0 = acc^{-1}(center)
// taken on the branch containing m/d?
inline bool center_blocking_test(const QuasiPerfectClass& c) {
    Rational a = c.center();
    // a > 3 + 2*sqrt(2) <=> a > 3 and (a-3)^2 > 8
    if (!(a > 3 && (a - 3) * (a - 3) > 8)) throw CenterOutOfRange();
    if (3 * c.m == c.d) throw AmbiguousBranch();
    Branch br = (3 * c.m < c.d) ? Branch::L : Branch::U;
    Surd b0 = acc_inv(a, br);
    return nontrivial_at(c, b0, Surd(a));
}

// All (d, m) >= 0 with (d(d+3) - m(m+1))/2 == k and m <= d, ascending in d.
inline std::vector<std::pair<Int, Int>> find_dm_from_k(const Int& k) {
    std::vector<std::pair<Int, Int>> out;
    if (k < 0) return out;
    // m <= d forces d(d+3) - 2k = m(m+1) <= d(d+1), i.e. d <= k.
    for (Int d = 0; d <= k; ++d) {
        Int t = d * (d + 3) - 2 * k;
        if (t < 0) continue;
        // m(m+1) = t
        Int disc = 1 + 4 * t;
        Int r = boost::multiprecision::sqrt(disc);
        if (r * r != disc || (r - 1) % 2 != 0) continue;
        Int m = (r - 1) / 2;
        if (m <= d) out.emplace_back(d, m);
    }
    return out;
}

// Coprime (p, q), p > q >= 1, with pq = d^2 - m^2 + 1 and p + q = 3d - m.
inline std::vector<std::pair<Int, Int>> find_pq_from_dm(const Int& d, const Int& m) {
    std::vector<std::pair<Int, Int>> out;
    Int S = 3 * d - m, P = d * d - m * m + 1;
    Int disc = S * S - 4 * P;
    if (disc < 0) return out;
    Int r = boost::multiprecision::sqrt(disc);
    if (r * r != disc) return out;
    if ((S + r) % 2 != 0) return out;
    Int p = (S + r) / 2, q = (S - r) / 2;
    if (p > q && q >= 1 && gcd(p, q) == 1) out.emplace_back(p, q);
    return out;
}

// Quasi-perfect (d, m) at a prescribed center p/q, i.e. solve
// 8d^2 - 6(p+q)d + ((p+q)^2 + pq - 1) = 0 over the integers with m >= 0.
inline std::vector<std::pair<Int, Int>> find_dm_from_center(const Int& p, const Int& q) {
    std::vector<std::pair<Int, Int>> out;
    Int s = p + q;
    Int disc = s * s - 8 * p * q + 8;  // (3s)^2 - 8(s^2 + pq - 1), over 1
    if (disc < 0) return out;
    Int r = boost::multiprecision::sqrt(disc);
    if (r * r != disc) return out;
    for (int pick = 0; pick < (r == 0 ? 1 : 2); ++pick) {
        Int numer = 3 * s + (pick == 0 ? r : -r);
        if (numer % 8 != 0) continue;
        Int d = numer / 8;
        Int m = 3 * d - s;
        if (d >= 0 && m >= 0 && m <= d) out.emplace_back(d, m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct FoundClass {
    Int d, m, p, q;
    ContinuedFraction cf;
};

// Every quasi-perfect class with center in (zLow, zHigh) and q in range.
inline std::vector<FoundClass> classes_with_cf_in_range(const Rational& zLow,
                                                        const Rational& zHigh, const Int& qMin,
                                                        const Int& qMax) {
    if (!(Rational(1) < zLow && zLow < zHigh)) throw DomainError("need 1 < zLow < zHigh");
    if (!(1 <= qMin && qMin <= qMax)) throw DomainError("need 1 <= qMin <= qMax");
    std::vector<FoundClass> out;
    for (Int q = qMin; q <= qMax; ++q) {
        Int pLo = floor_rat(zLow * q) + 1;
        Int pHi = ceil_rat(zHigh * q) - 1;
        for (Int p = pLo; p <= pHi; ++p) {
            if (gcd(p, q) != 1) continue;
            Rational z(p, q);
            if (z <= zLow || z >= zHigh) continue;
            for (auto [d, m] : find_dm_from_center(p, q))
                out.push_back({d, m, p, q, rational_to_cf(z)});
        }
    }
    return out;
}

// Solutions at the value of the concatenated continued fraction.
inline std::vector<std::pair<Int, Int>> search_ending(const std::vector<long long>& head,
                                                      const std::vector<long long>& ending) {
    std::vector<long long> terms = head;
    terms.insert(terms.end(), ending.begin(), ending.end());
    Rational z = cf_to_rational(cf_canonicalize(ContinuedFraction{terms}));
    return find_dm_from_center(num(z), den(z));
}

// Candidate overshadowing classes for a staircase with limit bInf and
// comparison slope r/s: degree below s/|r - s*bInf|, m'/d' strictly on the
// far side of r/s, and |bInf d' - m'| < 1.
enum class OvershadowVerdict { Excluded, NeedsReview };

struct OvershadowCandidate {
    Int d, m;
    OvershadowVerdict verdict;
    std::string reason;
};

inline std::vector<OvershadowCandidate> overshadow_candidates(const Surd& bInf, const Int& r,
                                                              const Int& s, Side side) {
    require_b_range(bInf);
    Rational rs(r, s);
    Surd gap = (side == Side::below) ? Surd(rs) - bInf : bInf - Surd(rs);
    if (gap.sign() <= 0) throw DomainError("r/s must lie strictly on the stated side of bInf");
    std::vector<OvershadowCandidate> out;
    // Degree bound d' < s/|r - s*bInf| = 1/gap.
    for (Int d = 1;; ++d) {
        if (surd_cmp(Surd(Rational(d)) * gap, Surd(Rational(1))) != Ordering::Less) break;
        // candidates m with |bInf d - m| < 1
        Surd bd = bInf * Surd(Rational(d));
        for (Int m = 0; m <= d; ++m) {
            Surd diff = surd_abs(bd - Surd(Rational(m)));
            if (surd_cmp(diff, Surd(Rational(1))) != Ordering::Less) continue;
            Rational slope(m, d);
            bool far = (side == Side::below) ? (slope > rs) : (slope < rs);
            if (!far) continue;
            OvershadowCandidate cand{d, m, OvershadowVerdict::NeedsReview, ""};
            Int S = 3 * d - m - 1;           // required sum of mi
            Int T = d * d - m * m + 1;       // required sum of mi^2
            if (d == 1) {
                cand.verdict = OvershadowVerdict::Excluded;
                cand.reason = "degree 1 never overshadows";
            } else if (T < S || T > S * S || S <= 0) {
                cand.verdict = OvershadowVerdict::Excluded;
                cand.reason = "no multiplicity vector fits sum " + S.str() + " and square sum " +
                              T.str();
            }
            out.push_back(std::move(cand));
        }
    }
    return out;
}

// Class literal grammar: "d,m;p/q" or "d,m;[29^5,25,4^6,1^4]".
inline ExClass parse_class_literal(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos) throw DomainError("class literal needs ';': '" + text + "'");
    std::string head = text.substr(0, semi), tail = text.substr(semi + 1);
    auto comma = head.find(',');
    if (comma == std::string::npos) throw DomainError("class literal needs 'd,m': '" + text + "'");
    Int d(head.substr(0, comma)), m(head.substr(comma + 1));
    std::string t;
    for (char ch : tail)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    ExClass c;
    c.d = d;
    c.m = m;
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') throw DomainError("bad multiplicity list: '" + text + "'");
        t = t.substr(1, t.size() - 2);
        std::string cur;
        auto flush = [&]() {
            if (cur.empty()) return;
            auto caret = cur.find('^');
            Int v(caret == std::string::npos ? cur : cur.substr(0, caret));
            long long reps = caret == std::string::npos ? 1 : std::stoll(cur.substr(caret + 1));
            for (long long i = 0; i < reps; ++i) c.mvec.push_back(v);
            cur.clear();
        };
        for (char ch : t) {
            if (ch == ',')
                flush();
            else
                cur += ch;
        }
        flush();
    } else {
        Rational z = parse_rational(t);
        c.mvec = integral_weights(num(z), den(z));
    }
    return c;
}

}  // namespace staircap
