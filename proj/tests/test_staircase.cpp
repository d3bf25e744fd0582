#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "staircap/staircase.hpp"

#include <random>

using namespace staircap;

namespace {

std::vector<StairFamilySpec> all_specs(long long nMax, Ending ending) {
    std::vector<StairFamilySpec> out;
    for (Family f : {Family::U, Family::L, Family::E})
        for (Direction dir : {Direction::lower, Direction::upper}) {
            bool needsOne = (f == Family::U && dir == Direction::lower) ||
                            (f == Family::L && dir == Direction::upper) ||
                            (f == Family::E && dir == Direction::lower);
            for (long long n = needsOne ? 1 : 0; n <= nMax; ++n)
                out.push_back({f, dir, n, ending});
        }
    return out;
}

Int dot_sorted(const ExClass& a, const ExClass& b) {
    std::vector<Int> x = a.mvec, y = b.mvec;
    std::sort(x.begin(), x.end(), std::greater<Int>());
    std::sort(y.begin(), y.end(), std::greater<Int>());
    Int s = 0;
    for (size_t i = 0; i < std::min(x.size(), y.size()); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace

TEST_CASE("accumulation points of named b values") {
    CHECK(acc_exact(Rational(1, 3)) == Surd::raw(3, 2, 2));
    CHECK(acc_exact(Rational(1, 5)) == Surd(Rational(6)));
    CHECK(acc_exact(Rational(0)) == Surd::raw(Rational(7, 2), Rational(3, 2), 5));
    CHECK(acc_exact(Rational(5, 11)) == Surd(Rational(6)));
    CHECK_THROWS_AS(acc(Surd(Rational(1))), DomainError);
    CHECK_THROWS_AS(acc(Surd(Rational(-1, 2))), DomainError);
}

TEST_CASE("inverse branches of acc") {
    CHECK(acc_inv(Rational(6), Branch::U) == Surd(Rational(5, 11)));
    CHECK(acc_inv(Rational(6), Branch::L) == Surd(Rational(1, 5)));
    CHECK(acc_inv(Rational(35, 6), Branch::L) == Surd(Rational(19, 61)));
    CHECK_THROWS_AS(acc_inv(Rational(5), Branch::L), OutOfBranchRange);  // below 3+2sqrt2
    CHECK_THROWS_AS(acc_inv(Rational(7), Branch::L), OutOfBranchRange);  // beyond acc(0)
    CHECK(acc_inv(Rational(7), Branch::U).sign() > 0);
}

TEST_CASE("acc and acc_inv are mutually inverse") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> pn(1, 400), qn(2, 401);
    int doneL = 0, doneU = 0;
    while (doneL < 100 || doneU < 100) {
        Rational b(pn(rng), qn(rng));
        if (b >= 1) continue;
        Surd z = acc_exact(b);
        if (b < Rational(1, 3) && doneL < 100) {
            ++doneL;
            if (z.is_rational())
                CHECK(acc_inv(z.rational_part(), Branch::L) == Surd(b));
            else
                CHECK(is_acc_of(Surd(b), z));
        } else if (b > Rational(1, 3) && doneU < 100) {
            ++doneU;
            if (z.is_rational())
                CHECK(acc_inv(z.rational_part(), Branch::U) == Surd(b));
            else
                CHECK(is_acc_of(Surd(b), z));
        }
    }
}

TEST_CASE("the volume identity at the accumulation point") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> pn(0, 300), qn(2, 301);
    int done = 0;
    while (done < 100) {
        Rational b(pn(rng), qn(rng));
        if (b >= 1) continue;
        ++done;
        Surd z = acc_exact(b);
        // V_b(acc(b))^2 = ((1 + acc(b))/(3 - b))^2
        Surd lhs = volume_sq(Surd(b), z);
        Surd v = volume_at_acc(Surd(b), z);
        CHECK(lhs == v * v);
    }
}

TEST_CASE("b from the center, both signs") {
    CHECK(b_from_center(6, 1, CenterSign::plus) == Surd(Rational(5, 11)));
    CHECK(b_from_center(6, 1, CenterSign::minus) == Surd(Rational(1, 5)));
    CHECK(b_from_center(35, 6, CenterSign::minus) == Surd(Rational(19, 61)));
    CHECK_THROWS_AS(b_from_center(5, 1, CenterSign::plus), NegativeSigma);
    // consistency with acc_inv at quasi-perfect centers
    CHECK(b_from_center(170, 29, CenterSign::minus) == acc_inv(Rational(170, 29), Branch::L));
}

TEST_CASE("family specs parse and validate") {
    StairFamilySpec s = parse_family_spec("U:u:0:short");
    CHECK(s.family == Family::U);
    CHECK(s.dir == Direction::upper);
    CHECK(s.n == 0);
    CHECK(s.ending == Ending::shortEnd);
    CHECK(family_spec_str(s) == "U:u:0:short");
    CHECK(parse_family_spec("E:ell:1:long").dir == Direction::lower);
    CHECK_THROWS_AS(parse_family_spec("U:l:0:short"), DomainError);  // U lower needs n >= 1
    CHECK_THROWS_AS(parse_family_spec("L:u:0:short"), DomainError);
    CHECK_THROWS_AS(parse_family_spec("E:l:0:short"), DomainError);
    CHECK_THROWS_AS(parse_family_spec("X:u:0:short"), DomainError);
    CHECK_THROWS_AS(parse_family_spec("U:u:0"), DomainError);
}

TEST_CASE("seed classes of the families") {
    PrestairFamily uu0 = prestaircase_generate(parse_family_spec("U:u:0:short"), 1);
    REQUIRE(uu0.classes.size() == 2);
    CHECK(uu0.classes[0].d == 14);
    CHECK(uu0.classes[0].m == 9);
    CHECK(uu0.classes[0].p == 29);
    CHECK(uu0.classes[0].q == 4);
    CHECK(uu0.classes[1].d == 100);
    CHECK(uu0.classes[1].m == 63);
    CHECK(uu0.classes[1].p == 208);
    CHECK(uu0.classes[1].q == 29);

    PrestairFamily ul1 = prestaircase_generate(parse_family_spec("U:l:1:short"), 1);
    CHECK(ul1.classes[0].d == 3);
    CHECK(ul1.classes[0].m == 2);
    CHECK(ul1.classes[0].center() == Rational(6));
    CHECK(ul1.classes[1].d == 67);
    CHECK(ul1.classes[1].m == 43);
    CHECK(ul1.classes[1].center() == Rational(139, 19));

    PrestairFamily eu0 = prestaircase_generate(parse_family_spec("E:u:0:short"), 0);
    CHECK(eu0.classes[0].d == 73);
    CHECK(eu0.classes[0].m == 20);
    CHECK(eu0.classes[0].center() == Rational(170, 29));

    // k = 0 rows of the short lower-U family as polynomials in n
    for (long long n = 1; n <= 5; ++n) {
        PrestairFamily f = prestaircase_generate({Family::U, Direction::lower, n, Ending::shortEnd}, 0);
        CHECK(f.classes[0].d == n + 2);
        CHECK(f.classes[0].m == n + 1);
        CHECK(f.classes[0].p == 2 * n + 4);
        CHECK(f.classes[0].q == 1);
    }
    for (long long n = 0; n <= 5; ++n) {
        PrestairFamily f = prestaircase_generate({Family::U, Direction::upper, n, Ending::shortEnd}, 0);
        CHECK(f.classes[0].d == (n + 2) * (2 * n + 7));
        CHECK(f.classes[0].m == (n + 3) * (2 * n + 3));
        CHECK(f.classes[0].p == 4 * n * n + 22 * n + 29);
        CHECK(f.classes[0].q == 2 * n + 4);
    }
}

TEST_CASE("backward extension rows") {
    PrestairFamily el1 = prestaircase_generate(parse_family_spec("E:l:1:short"), 1);
    REQUIRE(el1.entries.front().k == -1);
    CHECK(el1.entries.front().d == 15);
    CHECK(el1.entries.front().m == 4);
    CHECK(el1.entries.front().p == 35);
    CHECK(el1.entries.front().q == 6);
    CHECK_FALSE(el1.entries.front().formal);

    PrestairFamily lu1 = prestaircase_generate(parse_family_spec("L:u:1:short"), 1);
    REQUIRE(lu1.entries.front().k == -1);
    CHECK(lu1.entries.front().d == 0);
    CHECK(lu1.entries.front().m == -1);
    CHECK(lu1.entries.front().p == 1);
    CHECK(lu1.entries.front().q == 0);
    CHECK(lu1.entries.front().formal);

    // families extended backwards in general: (E, l, n) gives the blocking
    // class of the E family at n - 1
    for (long long n = 1; n <= 4; ++n) {
        PrestairFamily f = prestaircase_generate({Family::E, Direction::lower, n, Ending::shortEnd}, 1);
        CHECK(f.entries.front().d == 5 * n + 10);
        CHECK(f.entries.front().m == n + 3);
        CHECK(f.entries.front().p == 12 * n + 23);
        CHECK(f.entries.front().q == 2 * n + 4);
    }
    // long endings and other families have no k = -1 row
    CHECK(prestaircase_generate(parse_family_spec("E:l:1:long"), 1).entries.front().k == 0);
    CHECK(prestaircase_generate(parse_family_spec("U:u:0:short"), 1).entries.front().k == 0);
}

TEST_CASE("every family satisfies the recursion and the Diophantine conditions") {
    for (Ending e : {Ending::shortEnd, Ending::longEnd})
        for (const StairFamilySpec& spec : all_specs(4, e)) {
            PrestairFamily fam = prestaircase_generate(spec, 6);
            Int s2 = sigma_of(spec.n) + 2;
            for (const QuasiPerfectClass& c : fam.classes)
                CHECK(check_diophantine(c.to_exclass()));
            for (size_t i = 0; i + 2 < fam.entries.size(); ++i) {
                const PrestairEntry &a = fam.entries[i], &b = fam.entries[i + 1],
                                    &c = fam.entries[i + 2];
                CHECK(c.d == s2 * b.d - a.d);
                CHECK(c.m == s2 * b.m - a.m);
                CHECK(c.p == s2 * b.p - a.p);
                CHECK(c.q == s2 * b.q - a.q);
            }
        }
}

TEST_CASE("limits: growth rate and the accumulation identity") {
    PrestairLimits uu0 = prestaircase_limits(parse_family_spec("U:u:0:short"));
    CHECK(uu0.lambda == Surd::raw(Rational(7, 2), Rational(3, 2), 5));
    CHECK(uu0.aInf == Surd::raw(Rational(13, 2), Rational(3, 10), 5));
    CHECK(uu0.D == Surd::raw(Rational(7), Rational(17, 5), 5));
    CHECK(uu0.M == Surd::raw(Rational(9, 2), Rational(21, 10), 5));
    CHECK(is_acc_of(uu0.bInf, uu0.aInf));

    PrestairLimits eu0 = prestaircase_limits(parse_family_spec("E:u:0:short"));
    CHECK(eu0.D == Surd::raw(Rational(73, 2), Rational(179, 10), 5));
    CHECK(eu0.M == Surd::raw(Rational(10), Rational(5), 5));
    CHECK(to_real(surd_abs(eu0.bInf - Surd(Rational(27677, 100000)))) < Real("1e-4"));

    // Fibonacci staircase: L:l:0 accumulates at b = 0, z = (7+3 sqrt 5)/2
    PrestairLimits ll0 = prestaircase_limits(parse_family_spec("L:l:0:short"));
    CHECK(ll0.bInf == Surd(Rational(0)));
    CHECK(ll0.aInf == Surd::raw(Rational(7, 2), Rational(3, 2), 5));

    // every family's limits satisfy acc(bInf) = aInf (checked internally, but
    // assert the public identity too)
    for (Ending e : {Ending::shortEnd, Ending::longEnd})
        for (const StairFamilySpec& spec : all_specs(3, e)) {
            PrestairLimits lim = prestaircase_limits(spec);
            CHECK(is_acc_of(lim.bInf, lim.aInf));
            CHECK(lim.bInf.sign() >= 0);
            CHECK(surd_cmp(lim.bInf, Surd(Rational(1))) == Ordering::Less);
        }
}

TEST_CASE("the limit gap |m1 d0 - m0 d1| does not depend on the ending") {
    for (const StairFamilySpec& s : all_specs(4, Ending::shortEnd)) {
        StairFamilySpec l = s;
        l.ending = Ending::longEnd;
        PrestairFamily fs = prestaircase_generate(s, 1), fl = prestaircase_generate(l, 1);
        Int ds = fs.classes[1].m * fs.classes[0].d - fs.classes[0].m * fs.classes[1].d;
        Int dl = fl.classes[1].m * fl.classes[0].d - fl.classes[0].m * fl.classes[1].d;
        CHECK(boost::multiprecision::abs(ds) == boost::multiprecision::abs(dl));
    }
}

TEST_CASE("separation inequality against each family's comparison slope") {
    auto rs = [](const StairFamilySpec& s) -> std::pair<Int, Int> {
        if (s.family == Family::U) return s.dir == Direction::lower ? std::pair<Int, Int>{1, 1}
                                                                    : std::pair<Int, Int>{1, 2};
        if (s.family == Family::L) return s.dir == Direction::lower ? std::pair<Int, Int>{7, 10}
                                                                    : std::pair<Int, Int>{3, 10};
        return s.dir == Direction::lower ? std::pair<Int, Int>{1, 2} : std::pair<Int, Int>{1, 3};
    };
    for (Ending e : {Ending::shortEnd, Ending::longEnd})
        for (const StairFamilySpec& spec : all_specs(4, e)) {
            auto [r, s] = rs(spec);
            Dmin1Result res = dmin1_check(spec, r, s);
            CHECK(res.ok);
        }
    // anchor values of the gap
    CHECK(dmin1_check(parse_family_spec("E:u:0:short"), 1, 3).delta == 105);
    CHECK(boost::multiprecision::abs(dmin1_check(parse_family_spec("U:l:1:short"), 1, 1).delta) ==
          5);
}

TEST_CASE("pairwise positivity within a family") {
    for (const StairFamilySpec& spec : all_specs(2, Ending::shortEnd)) {
        PrestairFamily fam = prestaircase_generate(spec, 3);
        std::vector<ExClass> cs;
        for (const QuasiPerfectClass& c : fam.classes) cs.push_back(c.to_exclass());
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t j = i + 1; j < cs.size(); ++j) {
                Int prod = cs[i].d * cs[j].d - cs[i].m * cs[j].m - dot_sorted(cs[i], cs[j]);
                CHECK(prod >= 0);
            }
    }
}

TEST_CASE("the three interleaved sequences at b = 1/3") {
    auto s0 = staircase_one_third(0, 3);
    REQUIRE(s0.size() == 3);
    CHECK(s0[0].d == 1);
    CHECK(s0[0].m == 0);
    CHECK(s0[0].center() == Rational(2));
    CHECK(s0[1].d == 5);
    CHECK(s0[1].m == 2);
    CHECK(s0[1].center() == Rational(11, 2));
    CHECK(s0[2].d == 28);
    CHECK(s0[2].m == 9);
    CHECK(s0[2].center() == Rational(64, 11));

    auto s2 = staircase_one_third(2, 3);
    CHECK(s2[0].d == 2);
    CHECK(s2[0].m == 0);
    CHECK(s2[0].center() == Rational(5));
    CHECK(s2[1].d == 13);
    CHECK(s2[1].m == 5);
    CHECK(s2[1].center() == Rational(29, 5));
    CHECK(s2[2].d == 74);
    CHECK(s2[2].m == 24);
    CHECK(s2[2].center() == Rational(169, 29));

    // long-range: centers satisfy g_{k+1} = 6 g_k - g_{k-1}, classes stay
    // Diophantine, and b = 1/3 keeps them b-perfect
    for (int i = 0; i <= 2; ++i) {
        auto seq = staircase_one_third(i, 10);
        for (const QuasiPerfectClass& c : seq) {
            CHECK(check_diophantine(c.to_exclass()));
            CHECK(is_b_perfect(c, Surd(Rational(1, 3))));
        }
        for (size_t k = 2; k < seq.size(); ++k)
            CHECK(seq[k].p == 6 * seq[k - 1].p - seq[k - 2].p);
    }
    CHECK_THROWS_AS(staircase_one_third(3, 2), DomainError);
}

TEST_CASE("blocking classes and their closed-form intervals") {
    QuasiPerfectClass bu0 = blocking_class(Family::U, 0);
    CHECK(bu0.d == 3);
    CHECK(bu0.m == 2);
    CHECK(bu0.center() == Rational(6));
    CHECK(blocking_class(Family::L, 1).center() == Rational(13, 2));
    CHECK(blocking_class(Family::E, 0).center() == Rational(35, 6));
    CHECK_THROWS_AS(blocking_class(Family::L, 0), DomainError);

    BlockingInterval c0 = blocking_family_closed_form(Family::U, 0);
    CHECK(c0.bLow == Surd::raw(Rational(3, 2), Rational(-1, 2), 5));
    CHECK(c0.bHigh == Surd::raw(Rational(21, 44), Rational(3, 44), 5));
    CHECK(c0.zLow == Surd::raw(Rational(5, 2), Rational(3, 2), 5));
    CHECK(c0.zHigh == Surd::raw(Rational(13, 2), Rational(3, 10), 5));
    BlockingInterval c1 = blocking_family_closed_form(Family::U, 1);
    CHECK(c1.bLow == Surd::raw(Rational(11, 10), Rational(-1, 10), 21));
    CHECK_THROWS_AS(blocking_family_closed_form(Family::L, 1), DomainError);
}

TEST_CASE("the generic endpoint solver matches the closed forms") {
    for (long long n = 0; n <= 5; ++n) {
        BlockingInterval closed = blocking_family_closed_form(Family::U, n);
        BlockingInterval generic = blocking_interval_generic(blocking_class(Family::U, n));
        CHECK(generic.exact);
        CHECK(generic.bLow == closed.bLow);
        CHECK(generic.bHigh == closed.bHigh);
        CHECK(generic.zLow == closed.zLow);
        CHECK(generic.zHigh == closed.zHigh);
    }
}

TEST_CASE("z endpoints of blocked intervals as periodic continued fractions") {
    BlockingInterval u0 = blocking_interval_generic(blocking_class(Family::U, 0));
    CHECK(u0.zLow == periodic_cf_value({}, {5, 1}));
    CHECK(u0.zHigh == periodic_cf_value({7}, {5, 1}));
    CHECK(decimal15(to_real(u0.zLow)).substr(0, 6) == "5.8541");
    CHECK(decimal15(to_real(u0.zHigh)).substr(0, 7) == "7.17082");
    BlockingInterval e0 = blocking_interval_generic(blocking_class(Family::E, 0));
    CHECK(e0.exact);
    CHECK(e0.zHigh == periodic_cf_value({5, 1, 6}, {5, 1}));
}

TEST_CASE("center symmetries") {
    auto Psi = [](const Surd& z) { return symmetry_apply(SymmetryMap::Psi, z); };
    auto Phi = [](const Surd& z) { return symmetry_apply(SymmetryMap::Phi, z); };
    auto Sh = [](const Surd& z) { return symmetry_apply(SymmetryMap::Sh, z); };
    CHECK(Psi(Surd(Rational(7))) == Surd(Rational(7)));
    CHECK(Phi(Surd(Rational(7))) == Surd(Rational(41, 7)));
    CHECK(Phi(Surd(Rational(8))) == Surd(Rational(76, 13)));
    CHECK(Sh(Surd(Rational(6))) == Surd(Rational(35, 6)));
    CHECK_THROWS_AS(Psi(Surd(Rational(6))), DomainError);
    CHECK_THROWS_AS(Phi(Surd(Rational(35, 6))), DomainError);
    CHECK_THROWS_AS(Sh(Surd(Rational(1))), DomainError);

    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> pn(1, 500), qn(1, 40);
    int done = 0;
    while (done < 100) {
        Rational z0(pn(rng), qn(rng));
        if (z0 <= 6) continue;
        ++done;
        Surd z(z0);
        CHECK(Psi(Psi(z)) == z);
        CHECK(Phi(Phi(z)) == z);
        CHECK(Phi(Psi(z)) == Sh(z));
    }

    // Psi maps the U blocking centers to the L ones, Sh to the E ones
    for (long long n = 0; n <= 6; ++n) {
        Surd center(Rational(2 * n + 6));
        if (n >= 1) CHECK(Psi(center) == Surd(Rational(12 * n + 1, 2 * n)));
        CHECK(Sh(center) == Surd(Rational(12 * n + 35, 2 * n + 6)));
    }
}
