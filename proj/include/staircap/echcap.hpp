#pragma once

// ECH capacities.  Ellipsoid capacities N(a,b) are the sorted values am+bn;
// capacities of the toric domain X_b come from minimizing the action
// x(1-b)+y over convex lattice paths with a prescribed lattice-point count
// L(x,y) = (x+1)(y+1) + y(y+1)/2.  Also the truncated lower bound for the
// embedding function, and the cap/Ehrhart counting used at b = 1/5.

#include "staircap/accpoint.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

namespace staircap {

inline unsigned thread_count() {
    if (const char* env = std::getenv("STAIRCASE_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// ---------------------------------------------------------------------------
// Ellipsoid capacities

// First K+1 entries of N(a,b): the values am+bn, m,n >= 0, sorted.  Frontier
// heap: popping (m,n) admits (m+1,n), and (0,n) additionally admits (0,n+1),
// so every pair enters exactly once and in nondecreasing order of value.
inline std::vector<Surd> ellipsoid_caps(const Surd& aParam, const Surd& bParam, long long K) {
    if (aParam.sign() <= 0 || bParam.sign() <= 0) throw DomainError("ellipsoid axes must be positive");
    if (K < 0) throw DomainError("K must be >= 0");
    struct Entry {
        Surd val;
        Int m, n;
    };
    struct Cmp {
        bool operator()(const Entry& x, const Entry& y) const {
            return surd_cmp(x.val, y.val) == Ordering::Greater;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, Cmp> heap;
    heap.push({Surd(Rational(0)), 0, 0});
    std::vector<Surd> out;
    out.reserve(static_cast<size_t>(K) + 1);
    while (static_cast<long long>(out.size()) <= K) {
        Entry e = heap.top();
        heap.pop();
        out.push_back(e.val);
        heap.push({e.val + aParam, e.m + 1, e.n});
        if (e.m == 0) heap.push({e.val + bParam, Int(0), e.n + 1});
    }
    return out;
}

// N(1, z)_k for rational z >= 1, without enumerating the first k values.
// Scale by den(z): we seek the (k+1)st smallest value of (m*zq + n*zp)/zq,
// found by binary search on the integer numerator t with
// count(t) = #{(m,n) >= 0 : m*zq + n*zp <= t}.
inline Rational ellipsoid_cap_single(const Rational& z, const Int& k) {
    if (z < 1) throw DomainError("need z >= 1");
    if (k < 0) throw DomainError("index must be >= 0");
    Int zp = num(z), zq = den(z);
    auto count = [&](const Int& t) {
        Int c = 0;
        for (Int n = 0; n * zp <= t; ++n) c += (t - n * zp) / zq + 1;
        return c;
    };
    Int lo = 0, hi = zq;
    while (count(hi) < k + 1) hi *= 2;
    while (lo < hi) {
        Int mid = (lo + hi) / 2;
        if (count(mid) >= k + 1)
            hi = mid;
        else
            lo = mid + 1;
    }
    return Rational(lo, zq);
}

// ---------------------------------------------------------------------------
// Lattice paths and capacities of X_b

struct PathVertex {
    long long x;
    long long y;
};

inline long long lattice_count(long long x, long long y) {
    return (x + 1) * (y + 1) + y * (y + 1) / 2;
}

// All path vertices (x,y) grouped by lattice count L(x,y), for L <= maxCount.
class PathTable {
public:
    explicit PathTable(long long maxCount) : maxCount_(maxCount), byCount_(maxCount + 1) {
        if (maxCount < 1) throw DomainError("maxCount must be >= 1");
        for (long long y = 0; lattice_count(0, y) <= maxCount; ++y) {
            long long L = lattice_count(0, y);
            for (long long x = 0; L <= maxCount; ++x, L += y + 1)
                byCount_[L].push_back({x, y});
        }
    }

    long long max_count() const { return maxCount_; }

    const std::vector<PathVertex>& at(long long L) const {
        if (L < 1 || L > maxCount_) throw InsufficientPathTable();
        return byCount_[L];
    }

private:
    long long maxCount_;
    std::vector<std::vector<PathVertex>> byCount_;
};

struct CapacityTable {
    Rational b;
    Rational scale;
    std::vector<Rational> caps;  // c_0..c_K of scale * X_b
};

// c_k(lambda X_b) = lambda * min{x(1-b)+y : L(x,y) in [k+1, 2k+1]}.  With
// b = m/d the action numerator is the integer x(d-m) + y d; per-L minima feed
// a monotone deque so the expanding windows cost O(K) total.
inline CapacityTable toric_caps(const PathTable& table, const Rational& b, const Rational& lambda,
                                long long K) {
    if (b < 0 || b >= 1) throw DomainError("b must lie in [0, 1)");
    if (lambda <= 0) throw DomainError("scale must be positive");
    if (K < 0) throw DomainError("K must be >= 0");
    if (table.max_count() < 2 * K + 1) throw InsufficientPathTable();
    Int m = num(b), d = den(b);
    std::vector<Int> perL(2 * K + 2);
    for (long long L = 1; L <= 2 * K + 1; ++L) {
        Int best = -1;
        for (const PathVertex& v : table.at(L)) {
            Int s = Int(v.x) * (d - m) + Int(v.y) * d;
            if (best < 0 || s < best) best = s;
        }
        perL[L] = best;
    }
    CapacityTable out;
    out.b = b;
    out.scale = lambda;
    out.caps.reserve(static_cast<size_t>(K) + 1);
    std::deque<long long> dq;  // indices L with increasing perL value
    long long nextL = 1;
    for (long long k = 0; k <= K; ++k) {
        while (nextL <= 2 * k + 1) {
            while (!dq.empty() && perL[dq.back()] >= perL[nextL]) dq.pop_back();
            dq.push_back(nextL++);
        }
        while (dq.front() < k + 1) dq.pop_front();
        out.caps.push_back(lambda * Rational(perL[dq.front()], d));
    }
    return out;
}

// Single capacity without a path table.  Per-L minima are nondecreasing in L,
// so the window minimum equals the minimum over all L >= k+1; for each y the
// smallest admissible x already minimizes the action, giving O(sqrt(k)) work.
inline Rational toric_cap_single(const Rational& b, const Rational& lambda, const Int& k) {
    if (b < 0 || b >= 1) throw DomainError("b must lie in [0, 1)");
    if (lambda <= 0) throw DomainError("scale must be positive");
    if (k < 0) throw DomainError("index must be >= 0");
    Int m = num(b), d = den(b);
    Int best = -1;
    for (Int y = 0;; ++y) {
        // smallest x >= 0 with (x+1)(y+1) + y(y+1)/2 >= k+1
        Int need = k + 1 - y * (y + 1) / 2;
        Int x = 0;
        if (need > 0) {
            Int q = (need + y) / (y + 1);  // ceil(need/(y+1))
            if (q - 1 > 0) x = q - 1;
        }
        Int s = x * (d - m) + y * d;
        if (best < 0 || s < best) best = s;
        if (need <= y + 1) break;  // x = 0 already reaches the count; larger y only costs more
    }
    return lambda * Rational(best, d);
}

// ---------------------------------------------------------------------------
// Lower bound for the embedding function

struct CLowerResult {
    Surd value;
    std::vector<long long> argmax;  // all maximizing indices, ascending
};

// max over 1 <= k <= K of N(1,z)_k / c_k(X_b), with c_k(X_b) = caps[k]/scale.
inline CLowerResult c_lower(const Rational& b, const Surd& z, const CapacityTable& table,
                            long long K) {
    if (table.b != b) throw DomainError("capacity table was built for a different b");
    if (K < 1 || static_cast<long long>(table.caps.size()) <= K) throw TableTooShort();
    if (surd_cmp(z, Surd(Rational(1))) == Ordering::Less) throw DomainError("need z >= 1");
    std::vector<Surd> N = ellipsoid_caps(Surd(Rational(1)), z, K);
    CLowerResult res;
    bool have = false;
    Surd bestN;          // numerator of the best ratio
    Rational bestC = 1;  // its capacity denominator (times 1/scale)
    for (long long k = 1; k <= K; ++k) {
        const Rational& ck = table.caps[static_cast<size_t>(k)];
        if (ck == 0) continue;
        // compare N_k/ck against bestN/bestC without dividing
        if (!have) {
            have = true;
            bestN = N[static_cast<size_t>(k)];
            bestC = ck;
            res.argmax = {k};
            continue;
        }
        Ordering o = surd_cmp(N[static_cast<size_t>(k)] * Surd(bestC), bestN * Surd(ck));
        if (o == Ordering::Greater) {
            bestN = N[static_cast<size_t>(k)];
            bestC = ck;
            res.argmax = {k};
        } else if (o == Ordering::Equal) {
            res.argmax.push_back(k);
        }
    }
    if (!have) throw TableTooShort();
    res.value = bestN * Surd(table.scale) / Surd(bestC);
    return res;
}

// Smallest k <= K whose capacity ratio at z = acc(b) exceeds the volume
// bound V_b(acc(b)); all comparisons squared to stay in b's field.
inline std::optional<long long> min_obstructing_index(const Rational& b, const CapacityTable& table,
                                                      long long K) {
    if (table.b != b) throw DomainError("capacity table was built for a different b");
    if (static_cast<long long>(table.caps.size()) <= K) throw TableTooShort();
    Surd z = acc_exact(b);
    Surd vsq = volume_sq(Surd(b), z);
    std::vector<Surd> N = ellipsoid_caps(Surd(Rational(1)), z, K);
    Surd lam2 = Surd(table.scale * table.scale);
    for (long long k = 1; k <= K; ++k) {
        const Rational& ck = table.caps[static_cast<size_t>(k)];
        if (ck == 0) continue;
        // N_k/(ck/scale) > sqrt(vsq)  <=>  N_k^2 scale^2 > vsq ck^2
        Surd lhs = N[static_cast<size_t>(k)] * N[static_cast<size_t>(k)] * lam2;
        if (surd_cmp(lhs, vsq * Surd(ck * ck)) == Ordering::Greater) return k;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Counting functions

// #{k >= 0 : c_k <= t}; demands that the table provably contains them all.
inline long long cap_count(const CapacityTable& table, const Rational& t) {
    if (table.caps.empty() || table.caps.back() <= t) throw TableTooShort();
    auto it = std::upper_bound(table.caps.begin(), table.caps.end(), t);
    return static_cast<long long>(it - table.caps.begin());
}

// #{(x,y) in Z^2_{>=0} : x/u + y/v <= t}
inline Int ehrhart_count(const Rational& u, const Rational& v, const Int& t) {
    if (u <= 0 || v <= 0) throw DomainError("triangle legs must be positive");
    if (t < 0) throw DomainError("t must be >= 0");
    Int total = 0;
    for (Int y = 0; Rational(y) <= v * Rational(t); ++y) {
        Rational xmax = u * (Rational(t) - Rational(y) / v);
        total += floor_rat(xmax) + 1;
    }
    return total;
}

// ---------------------------------------------------------------------------
// The b = 1/5 verification battery

namespace b15 {

// #{k : c_k(5 X_{1/5}) <= t} is quasi-polynomial of period 24:
// t^2/48 + 7t/24 + gamma(t mod 24), valid for t >= 43.
inline Rational cap_gamma(long long r) {
    switch (r) {
        case 0: case 10: return Rational(1);
        case 1: case 9: return Rational(11, 16);
        case 2: case 8: return Rational(-2, 3);
        case 3: case 7: return Rational(-17, 16);
        case 4: case 6: return Rational(1, 2);
        case 5: return Rational(49, 48);
        case 11: case 23: return Rational(13, 48);
        case 12: case 22: return Rational(-3, 2);
        case 13: case 21: return Rational(-5, 16);
        case 14: case 20: return Rational(5, 6);
        case 15: case 19: return Rational(15, 16);
        case 16: case 18: return Rational(0);
        case 17: return Rational(-95, 48);
        default: throw DomainError("residue out of range");
    }
}

inline Rational cap_quasi(long long t) {
    return Rational(t) * Rational(t) / 48 + Rational(7 * t, 24) + cap_gamma(t % 24);
}

// Lattice count of t * triangle(1/2, 1/12), quasi-polynomial of period 12:
// t^2/48 + (t/3 for even t, 7t/24 for odd t) + c(t mod 12).
inline Rational ehr_const(long long r) {
    switch (r) {
        case 0: case 8: return Rational(1);
        case 4: return Rational(4, 3);
        case 1: case 9: return Rational(11, 16);
        case 5: return Rational(49, 48);
        case 2: case 6: return Rational(5, 4);
        case 10: return Rational(7, 12);
        case 3: case 7: return Rational(15, 16);
        case 11: return Rational(13, 48);
        default: throw DomainError("residue out of range");
    }
}

inline Rational ehr_quasi(long long t) {
    Rational linear = (t % 2 == 0) ? Rational(t, 3) : Rational(7 * t, 24);
    return Rational(t) * Rational(t) / 48 + linear + ehr_const(t % 12);
}

// Lattice points with 2x + 12y <= t that lie strictly beyond the slanted
// edge x + zy <= t(z+6)/24 (cleared of denominators with z = zp/zq).
inline Int count_U(const Rational& z, long long t) {
    Int zp = num(z), zq = den(z);
    Int bound = Int(t) * (zp + 6 * zq);
    Int total = 0;
    for (Int y = 0; 12 * y <= t; ++y) {
        Int xmaxLine = (Int(t) - 12 * y) / 2;
        // strictly over: 24(x zq + y zp) > bound
        Int over = bound - 24 * y * zp;
        Int xmin;
        if (over < 0)
            xmin = 0;
        else
            xmin = floor_div(over, 24 * zq) + 1;
        if (xmin <= xmaxLine) total += xmaxLine - xmin + 1;
    }
    return total;
}

// Lattice points under the slanted edge (closed) with 2x + 12y >= t.
inline Int count_D(const Rational& z, long long t) {
    Int zp = num(z), zq = den(z);
    Int bound = Int(t) * (zp + 6 * zq);
    Int total = 0;
    for (Int y = 0; 24 * y * zp <= bound; ++y) {
        Int xmax = (bound - 24 * y * zp) / (24 * zq);
        Int xmin = 0;
        Int need = Int(t) - 12 * y;  // 2x >= need
        if (need > 0) xmin = (need + 1) / 2;
        if (xmin <= xmax) total += xmax - xmin + 1;
    }
    return total;
}

// Lattice points on the line 2x + 12y = t with 0 <= y < t/24.
inline Int count_d(long long t) {
    if (t % 2 != 0) return 0;
    // x = t/2 - 6y >= 0 holds automatically for y < t/24
    Int c = Int(t) / 24;
    if (t % 24 != 0) c += 1;  // ceil(t/24)
    return c;
}

}  // namespace b15

struct B15Report {
    long long tMax = 0;
    long long calibrationOffset = 0;  // quasipolynomial minus direct count at t = 48
    long long checksRun = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Recomputes everything the b = 1/5 argument needs on a finite range:
// (a) cap counts of 5 X_{1/5} against the period-24 quasi-polynomial,
// (b) lattice counts of t * triangle(1/2,1/12) against the period-12 one,
// (c) the U <= D counting claim near z = 6 (strict when t = 10 mod 24),
// (d) the mod-24 table for (ehr - cap count) - d.
inline B15Report verify_b15(long long tMax, const std::vector<Rational>& zSamples) {
    if (tMax < 43) throw DomainError("tMax must be >= 43");
    B15Report rep;
    rep.tMax = tMax;
    auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

    // Capacity table long enough that c_K > tMax.
    long long K = tMax * tMax / 48 + 7 * tMax / 24 + 40;
    PathTable paths(2 * K + 1);
    CapacityTable table = toric_caps(paths, Rational(1, 5), Rational(5), K);

    // The index origin is pinned at t = 48 and applied uniformly.
    {
        Rational q = b15::cap_quasi(48);
        if (den(q) != 1) fail("cap quasipolynomial not integral at t=48");
        rep.calibrationOffset = static_cast<long long>(num(q)) - cap_count(table, Rational(48));
    }

    for (long long t = 43; t <= tMax; ++t) {
        Rational q = b15::cap_quasi(t);
        if (den(q) != 1) {
            fail("cap quasipolynomial not integral at t=" + std::to_string(t));
            continue;
        }
        long long direct = cap_count(table, Rational(t)) + rep.calibrationOffset;
        ++rep.checksRun;
        if (Rational(direct) != q)
            fail("cap count mismatch at t=" + std::to_string(t) + ": direct " +
                 std::to_string(direct) + " vs formula " + rational_str(q));
    }

    for (long long t = 0; t <= tMax; ++t) {
        Rational q = b15::ehr_quasi(t);
        Int direct = ehrhart_count(Rational(1, 2), Rational(1, 12), t);
        ++rep.checksRun;
        if (den(q) != 1 || Rational(direct) != q)
            fail("ehrhart mismatch at t=" + std::to_string(t));
    }

    for (const Rational& z : zSamples) {
        if (z <= 6) {
            fail("z sample " + rational_str(z) + " not above 6");
            continue;
        }
        for (long long t = 0; t <= tMax; ++t) {
            Int U = b15::count_U(z, t);
            Int D = b15::count_D(z, t);
            Int corr = (t % 24 == 0) ? 1 : 0;  // the shared vertex on 2x+12y = t
            ++rep.checksRun;
            if (U + corr > D)
                fail("U <= D fails at z=" + rational_str(z) + ", t=" + std::to_string(t));
            if (t % 24 == 10 && U + corr > D - 1)
                fail("U <= D-1 fails at z=" + rational_str(z) + ", t=" + std::to_string(t));
        }
    }

    // (ehr - capcount) - d against the residue table.
    auto dtilde_gap = [](long long r) -> long long {
        switch (r) {
            case 0: case 1: case 4: case 5: case 6: case 9: case 11:
            case 14: case 15: case 19: case 20: case 23: return 0;
            case 2: case 8: case 13: case 16: case 18: case 21: return 1;
            case 3: case 7: case 12: case 22: return 2;
            case 17: return 3;
            case 10: return -1;
            default: throw DomainError("residue out of range");
        }
    };
    for (long long t = 43; t <= tMax; ++t) {
        Int ehr = ehrhart_count(Rational(1, 2), Rational(1, 12), t);
        long long cc = cap_count(table, Rational(t)) + rep.calibrationOffset;
        Int dt = ehr - cc;  // the count the embedding argument compares against d(t)
        Int d = (t % 2 == 0) ? Int((t + 23) / 24) : Int(0);
        ++rep.checksRun;
        if (dt - d != dtilde_gap(t % 24))
            fail("dtilde table mismatch at t=" + std::to_string(t));
    }
    return rep;
}

}  // namespace staircap
