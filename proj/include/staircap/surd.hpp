#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt(D)).  A Surd is
// a + c*sqrt(D) with D a squarefree nonnegative integer; D == 0 forces c == 0
// so that plain rationals embed canonically.  All comparisons are by sign
// analysis; no floating point is ever consulted for a decision.

#include "staircap/rational.hpp"

#include <optional>
#include <utility>

namespace staircap {

class Surd {
public:
    Surd() : a_(0), c_(0), D_(0) {}
    Surd(const Rational& r) : a_(r), c_(0), D_(0) {}  // NOLINT: implicit on purpose
    Surd(const Int& n) : a_(n), c_(0), D_(0) {}
    Surd(long long n) : a_(n), c_(0), D_(0) {}

    // Trusted constructor: D must already be squarefree (or 0 with c==0).
    static Surd raw(Rational a, Rational c, Int D) {
        Surd s;
        s.a_ = std::move(a);
        s.c_ = std::move(c);
        s.D_ = std::move(D);
        if (s.c_ == 0) s.D_ = 0;
        if (s.D_ == 0) s.c_ = 0;
        return s;
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_coefficient() const { return c_; }
    const Int& radicand() const { return D_; }
    bool is_rational() const { return c_ == 0; }

    Surd conjugate() const { return raw(a_, -c_, D_); }

    // Exact sign of a + c*sqrt(D).
    int sign() const {
        int sa = a_.sign(), sc = c_.sign();
        if (sc == 0) return sa;
        if (sa == 0) return sc;
        if (sa == sc) return sa;
        // Opposite signs: compare a^2 against c^2 * D.
        Rational lhs = a_ * a_, rhs = c_ * c_ * Rational(D_);
        int t = lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
        return sa > 0 ? t : -t;
    }

    Surd operator-() const { return raw(-a_, -c_, D_); }

    friend Surd operator+(const Surd& x, const Surd& y) {
        Int D = join(x, y);
        return raw(x.a_ + y.a_, x.c_ + y.c_, D);
    }
    friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
    friend Surd operator*(const Surd& x, const Surd& y) {
        Int D = join(x, y);
        return raw(x.a_ * y.a_ + x.c_ * y.c_ * Rational(D), x.a_ * y.c_ + x.c_ * y.a_, D);
    }
    friend Surd operator/(const Surd& x, const Surd& y) {
        Int D = join(x, y);
        Rational norm = y.a_ * y.a_ - y.c_ * y.c_ * Rational(D);
        if (norm == 0) {
            // y.a^2 == y.c^2 * D with D squarefree happens only for y == 0.
            throw DomainError("division by zero surd");
        }
        Surd t = x * y.conjugate();
        return raw(t.a_ / norm, t.c_ / norm, D);
    }

    Surd& operator+=(const Surd& y) { return *this = *this + y; }
    Surd& operator-=(const Surd& y) { return *this = *this - y; }
    Surd& operator*=(const Surd& y) { return *this = *this * y; }
    Surd& operator/=(const Surd& y) { return *this = *this / y; }

    friend bool operator==(const Surd& x, const Surd& y) {
        return x.a_ == y.a_ && x.c_ == y.c_ && x.D_ == y.D_;
    }
    friend bool operator!=(const Surd& x, const Surd& y) { return !(x == y); }

private:
    static Int join(const Surd& x, const Surd& y) {
        if (x.c_ == 0) return y.D_;
        if (y.c_ == 0) return x.D_;
        if (x.D_ != y.D_) throw MixedRadicands();
        return x.D_;
    }

    Rational a_, c_;
    Int D_;
};

// Split n = s^2 * f with f squarefree (best effort for f beyond 2^32; every
// radicand the library produces is tiny, and anything that slips through is
// still handled consistently because it is only ever built through here).
inline void split_square(Int n, Int& square_root, Int& squarefree) {
    square_root = 1;
    squarefree = 1;
    if (n == 0) { squarefree = 0; return; }
    for (Int i = 2; i <= 65536 && i * i <= n; ++i) {
        Int ii = i * i;
        while (n % ii == 0) {
            n /= ii;
            square_root *= i;
        }
    }
    Int r = boost::multiprecision::sqrt(n);
    if (r * r == n) {
        square_root *= r;
        n = 1;
    }
    squarefree = n;
}

// Canonical Surd equal to a + c*sqrt(rawRadicand); rawRadicand >= 0 rational.
inline Surd surd_normalize(const Rational& a, const Rational& c, const Rational& rawRadicand) {
    if (rawRadicand < 0) throw NegativeOperand();
    if (c == 0 || rawRadicand == 0) return Surd(a);
    // sqrt(n/d) = sqrt(n*d)/d
    Int nd = num(rawRadicand) * den(rawRadicand);
    Int s, f;
    split_square(nd, s, f);
    Rational coeff = c * Rational(s, den(rawRadicand));
    if (f == 1) return Surd(a + coeff);
    return Surd::raw(a, coeff, f);
}

enum class Ordering { Less = -1, Equal = 0, Greater = 1 };

inline Ordering surd_cmp(const Surd& x, const Surd& y) {
    int s = (x - y).sign();
    return s < 0 ? Ordering::Less : (s > 0 ? Ordering::Greater : Ordering::Equal);
}

inline bool operator<(const Surd& x, const Surd& y) { return (x - y).sign() < 0; }
inline bool operator>(const Surd& x, const Surd& y) { return (x - y).sign() > 0; }
inline bool operator<=(const Surd& x, const Surd& y) { return (x - y).sign() <= 0; }
inline bool operator>=(const Surd& x, const Surd& y) { return (x - y).sign() >= 0; }

// Exact sign of x - sqrt(r) for x, r >= 0.
inline Ordering sqrt_cmp(const Surd& x, const Surd& r) {
    if (x.sign() < 0 || r.sign() < 0) throw NegativeOperand();
    return surd_cmp(x * x, r);
}

inline Surd surd_abs(const Surd& x) { return x.sign() < 0 ? -x : x; }

// Exact square root of s within a (possibly trivial) quadratic field:
// rationals always succeed (the result defines its own field); a genuine
// surd succeeds only when s is a perfect square in Q(sqrt(D)).
inline std::optional<Surd> surd_sqrt(const Surd& s) {
    if (s.sign() < 0) return std::nullopt;
    if (s.is_rational()) return surd_normalize(0, 1, s.rational_part());
    // Want (u + v*sqrt(D))^2 = e + f*sqrt(D): u^2 + v^2 D = e, 2uv = f.
    const Rational& e = s.rational_part();
    const Rational& f = s.radical_coefficient();
    const Int& D = s.radicand();
    // u^2 is a root of 4U^2 - 4eU + f^2 D = 0.
    Rational disc = e * e - f * f * Rational(D);
    if (disc < 0) return std::nullopt;
    Surd root = surd_normalize(0, 1, disc);
    if (!root.is_rational()) return std::nullopt;
    Rational g = root.rational_part();  // sqrt(e^2 - f^2 D)
    for (int pick = 0; pick < 2; ++pick) {
        Rational u2 = (pick == 0) ? Rational((e + g) / 2) : Rational((e - g) / 2);
        if (u2 <= 0) continue;
        Surd u = surd_normalize(0, 1, u2);
        if (!u.is_rational()) continue;
        Rational uu = u.rational_part();
        Rational v = f / (2 * uu);
        Surd cand = Surd::raw(uu, v, D);
        if (cand.sign() >= 0 && cand * cand == s) return cand;
        cand = -cand;
        if (cand.sign() >= 0 && cand * cand == s) return cand;
    }
    return std::nullopt;
}

inline Real to_real(const Surd& x) {
    Real r = to_real(x.rational_part());
    if (!x.is_rational())
        r += to_real(x.radical_coefficient()) * sqrt(Real(x.radicand()));
    return r;
}

// "a+c*sqrt(D)" (also "a-c*sqrt(D)" and bare rationals).
inline std::string surd_str(const Surd& x) {
    if (x.is_rational()) return rational_str(x.rational_part());
    std::string s;
    const Rational& c = x.radical_coefficient();
    s += rational_str(x.rational_part());
    s += (c < 0) ? "-" : "+";
    Rational ac = c < 0 ? Rational(-c) : c;
    if (ac != 1) {
        s += rational_str(ac);
        s += "*";
    }
    s += "sqrt(";
    s += x.radicand().str();
    s += ")";
    return s;
}

inline Surd parse_surd(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    auto pos = t.find("sqrt(");
    if (pos == std::string::npos) return Surd(parse_rational(t));
    if (t.back() != ')') throw DomainError("not a surd: '" + text + "'");
    Rational D = parse_rational(t.substr(pos + 5, t.size() - pos - 6));
    std::string head = t.substr(0, pos);
    Rational c(1), a(0);
    if (!head.empty() && head.back() == '*') head.pop_back();
    // head is now "a+c", "a-c", "a+", "a-", "c", "-", or "".
    if (!head.empty()) {
        // Split at the last +/- that is not a leading sign.
        size_t split = std::string::npos;
        for (size_t i = head.size(); i-- > 1;)
            if (head[i] == '+' || head[i] == '-') {
                split = i;
                break;
            }
        if (split == std::string::npos) {
            c = (head == "-") ? Rational(-1) : parse_rational(head);
        } else {
            a = parse_rational(head.substr(0, split));
            std::string ctail = head.substr(split + 1);
            c = ctail.empty() ? Rational(1) : parse_rational(ctail);
            if (head[split] == '-') c = -c;
        }
    }
    return surd_normalize(a, c, D);
}

}  // namespace staircap
