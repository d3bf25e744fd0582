#pragma once

// Arbitrary-precision integers/rationals plus the error taxonomy shared by
// every module.  cpp_rational keeps itself normalized (coprime, positive
// denominator), which is exactly the contract we need.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace staircap {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// Output formatting only; no decision is ever made on this type.
using Real = boost::multiprecision::cpp_bin_float_100;

// Exit-code-2 category: mathematically invalid input, as opposed to usage
// errors which the CLI maps to exit code 1.
struct MathDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MixedRadicands : MathDomainError {
    MixedRadicands() : MathDomainError("operands live over different radicands") {}
};
struct NegativeOperand : MathDomainError {
    NegativeOperand() : MathDomainError("operand must be nonnegative") {}
};
struct DomainError : MathDomainError {
    using MathDomainError::MathDomainError;
};
struct NotCoprime : MathDomainError {
    NotCoprime() : MathDomainError("p and q must be coprime") {}
};
struct NotDiophantine : MathDomainError {
    using MathDomainError::MathDomainError;
};
struct DegenerateDenominator : MathDomainError {
    DegenerateDenominator() : MathDomainError("d - m*b must be positive") {}
};
struct OutOfWindow : MathDomainError {
    OutOfWindow() : MathDomainError("z outside the piecewise-formula window around the center") {}
};
struct CenterOutOfRange : MathDomainError {
    CenterOutOfRange() : MathDomainError("center must exceed 3+2*sqrt(2)") {}
};
struct AmbiguousBranch : MathDomainError {
    AmbiguousBranch() : MathDomainError("m/d = 1/3 does not select a branch") {}
};
struct OutOfBranchRange : MathDomainError {
    OutOfBranchRange() : MathDomainError("z outside the range of the requested branch") {}
};
struct NegativeSigma : MathDomainError {
    NegativeSigma() : MathDomainError("p^2 + q^2 - 6pq is negative") {}
};
struct InsufficientPathTable : MathDomainError {
    InsufficientPathTable() : MathDomainError("path table does not cover 2K+1") {}
};
struct TableTooShort : MathDomainError {
    TableTooShort() : MathDomainError("capacity table too short for this threshold") {}
};
struct DivisibilityFailure : MathDomainError {
    using MathDomainError::MathDomainError;
};
struct NotBlocking : MathDomainError {
    NotBlocking() : MathDomainError("class is not center-blocking") {}
};
struct StepLimit : std::runtime_error {
    StepLimit() : std::runtime_error("Cremona reduction exceeded the step limit") {}
};

inline Rational make_rational(const Int& num, const Int& den) {
    return Rational(num, den);
}

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Int floor_div(const Int& a, const Int& b) {
    // b > 0 assumed
    Int q = a / b, r = a % b;
    if (r != 0 && a < 0) --q;
    return q;
}

inline Int floor_rat(const Rational& r) { return floor_div(num(r), den(r)); }

inline Int ceil_rat(const Rational& r) {
    Int f = floor_rat(r);
    return (Rational(f) == r) ? f : f + 1;
}

inline Real to_real(const Rational& r) {
    return Real(num(r)) / Real(den(r));
}

// "p/q" (or plain "p") -> Rational.  Throws DomainError on junk.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&]() -> DomainError { return DomainError("not a rational: '" + s + "'"); };
    std::string t;
    for (char ch : s)
        if (!isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw bad();
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(t));
        Int p(t.substr(0, slash)), q(t.substr(slash + 1));
        if (q == 0) throw bad();
        return Rational(p, q);
    } catch (const std::exception&) {
        throw bad();
    }
}

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << num(r);
    if (den(r) != 1) os << "/" << den(r);
    return os.str();
}

// 15 significant digits, the CSV/plot rendering convention.
inline std::string decimal15(const Real& x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

inline std::string decimal15(const Rational& r) { return decimal15(to_real(r)); }

}  // namespace staircap
