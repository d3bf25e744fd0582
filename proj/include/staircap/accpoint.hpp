#pragma once

// The accumulation point acc(b) (the root > 1 of z^2 - c(b) z + 1 = 0 with
// c(b) = (3b^2 - 6b + 7)/(1 - b^2)), its two inverse branches, and the
// volume bound V_b(z)^2 = z/(1 - b^2).

#include "staircap/surd.hpp"

namespace staircap {

inline void require_b_range(const Surd& b) {
    if (b.sign() < 0 || surd_cmp(b, Surd(Rational(1))) != Ordering::Less)
        throw DomainError("b must lie in [0, 1)");
}

// c(b) = (3b^2 - 6b + 7)/(1 - b^2), exact in b's field.
inline Surd acc_trace(const Surd& b) {
    Surd b2 = b * b;
    return (Surd(Rational(3)) * b2 - Surd(Rational(6)) * b + Surd(Rational(7))) /
           (Surd(Rational(1)) - b2);
}

struct AccResult {
    Surd value;   // meaningful when exact
    bool exact;
    Real approx;  // always set
};

inline AccResult acc(const Surd& b) {
    require_b_range(b);
    Surd c = acc_trace(b);
    Surd disc = c * c - Surd(Rational(4));
    AccResult out;
    if (auto root = surd_sqrt(disc)) {
        out.value = (c + *root) / Surd(Rational(2));
        out.exact = true;
        out.approx = to_real(out.value);
    } else {
        out.exact = false;
        Real cr = to_real(c);
        out.approx = (cr + sqrt(cr * cr - 4)) / 2;
        out.value = Surd();
    }
    return out;
}

// Rational b always lands in a clean quadratic field.
inline Surd acc_exact(const Rational& b) {
    AccResult r = acc(Surd(b));
    if (!r.exact) throw DomainError("acc(b) unexpectedly inexact for rational b");
    return r.value;
}

enum class Branch { L, U };

// b = (3 -/+ sqrt(l^2 - 8l))/(l + 1) with l = z + 1/z + 2; minus is the
// branch with b < 1/3 (L), plus the one with b > 1/3 (U).
inline Surd acc_inv(const Rational& z, Branch branch) {
    if (z <= 1) throw OutOfBranchRange();
    Rational l = z + 1 / z + 2;
    Rational s = l * l - 8 * l;
    if (s < 0) throw OutOfBranchRange();  // z below 3+2*sqrt(2)
    Surd root = surd_normalize(0, 1, s);
    Surd b = (branch == Branch::U) ? (Surd(Rational(3)) + root) / Surd(l + 1)
                                   : (Surd(Rational(3)) - root) / Surd(l + 1);
    if (branch == Branch::L && b.sign() < 0)
        throw OutOfBranchRange();  // z beyond acc(0) = (7+3*sqrt(5))/2
    return b;
}

// b = (3pq +/- (p+q) sqrt(sigma)) / (p^2 + q^2 + 3pq), sigma = p^2+q^2-6pq.
// plus matches the U branch of acc_inv, minus the L branch.
enum class CenterSign { plus, minus };

inline Surd b_from_center(const Int& p, const Int& q, CenterSign sign) {
    Int sigma = p * p + q * q - 6 * p * q;
    if (sigma < 0) throw NegativeSigma();
    Rational denom(p * p + q * q + 3 * p * q);
    Surd root = surd_normalize(0, Rational(p + q), Rational(sigma));
    Surd numer = (sign == CenterSign::plus) ? Surd(Rational(3 * p * q)) + root
                                            : Surd(Rational(3 * p * q)) - root;
    return numer / Surd(denom);
}

// V_b(z)^2 = z/(1 - b^2); compare obstructions against this with sqrt_cmp.
inline Surd volume_sq(const Surd& b, const Surd& z) {
    require_b_range(b);
    if (surd_cmp(z, Surd(Rational(1))) == Ordering::Less) throw DomainError("z must be >= 1");
    return z / (Surd(Rational(1)) - b * b);
}

// V_b(acc(b)) in its algebraic identity form (1 + acc(b))/(3 - b); only
// valid when z really is acc(b).
inline Surd volume_at_acc(const Surd& b, const Surd& accValue) {
    return (Surd(Rational(1)) + accValue) / (Surd(Rational(3)) - b);
}

// Exact check that z = acc(b) without leaving b's field:
// (z^2 + 1)(1 - b^2) == (3b^2 - 6b + 7) z.
inline bool is_acc_of(const Surd& b, const Surd& z) {
    Surd lhs = (z * z + Surd(Rational(1))) * (Surd(Rational(1)) - b * b);
    Surd rhs = (Surd(Rational(3)) * b * b - Surd(Rational(6)) * b + Surd(Rational(7))) * z;
    return surd_cmp(lhs, rhs) == Ordering::Equal;
}

}  // namespace staircap
