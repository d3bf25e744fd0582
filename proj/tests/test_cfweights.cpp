#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "staircap/weights.hpp"

#include <random>

using namespace staircap;

TEST_CASE("continued fractions round-trip rationals") {
    ContinuedFraction cf = rational_to_cf(Rational(170, 29));
    CHECK(cf.terms == std::vector<long long>{5, 1, 6, 4});
    CHECK(cf_to_rational(cf) == Rational(170, 29));
    CHECK(rational_to_cf(Rational(6)).terms == std::vector<long long>{6});
    CHECK(cf_str(cf) == "[5;1,6,4]");
    CHECK(cf_str(rational_to_cf(Rational(7))) == "[7]");
    CHECK_THROWS_AS(rational_to_cf(Rational(1)), DomainError);
    CHECK_THROWS_AS(cf_to_rational(ContinuedFraction{}), DomainError);

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> pn(7, 5000), qn(1, 400);
    for (int i = 0; i < 300; ++i) {
        Int p = pn(rng), q = qn(rng);
        if (p <= q) continue;
        Rational z(p, q);
        if (z <= 1) continue;
        CHECK(cf_to_rational(rational_to_cf(z)) == z);
        // canonical form: last term >= 2 unless the whole CF is [z]
        auto t = rational_to_cf(z).terms;
        if (t.size() > 1) CHECK(t.back() >= 2);
    }
}

TEST_CASE("canonicalization folds a trailing 1") {
    ContinuedFraction cf{{5, 1, 6, 3, 1}};
    CHECK(cf_canonicalize(cf).terms == std::vector<long long>{5, 1, 6, 4});
    CHECK(cf_to_rational(cf_canonicalize(cf)) == cf_to_rational(cf));
    // a lone [1] is left alone
    CHECK(cf_canonicalize(ContinuedFraction{{1}}).terms == std::vector<long long>{1});
}

TEST_CASE("periodic continued fractions evaluate to exact surds") {
    // [{5,1}^inf] = (5 + 3 sqrt 5)/2
    Surd x = periodic_cf_value({}, {5, 1});
    CHECK(x == Surd::raw(Rational(5, 2), Rational(3, 2), 5));
    // [7;{5,1}^inf] = 6 + (5 + 3 sqrt 5)/10
    Surd y = periodic_cf_value({7}, {5, 1});
    CHECK(y == Surd::raw(Rational(13, 2), Rational(3, 10), 5));
    // [{2}^inf] = 1 + sqrt 2
    CHECK(periodic_cf_value({}, {2}) == Surd::raw(1, 1, 2));
    // value satisfies the defining self-similarity x = h + 1/(t + 1/x) style identity:
    // for cycle {a}: x = a + 1/x
    Surd z = periodic_cf_value({}, {6});
    CHECK(z == Surd(Rational(6)) + Surd(Rational(1)) / z);
    CHECK_THROWS_AS(periodic_cf_value({5}, {}), DomainError);
    CHECK_THROWS_AS(periodic_cf_value({0}, {5, 1}), DomainError);
}

TEST_CASE("periodic value is the limit of truncations") {
    Surd x = periodic_cf_value({5, 1, 6}, {5, 1});
    std::vector<long long> terms{5, 1, 6};
    for (int rep = 0; rep < 12; ++rep) {
        terms.push_back(5);
        terms.push_back(1);
    }
    Rational approx = cf_to_rational(cf_canonicalize(ContinuedFraction{terms}));
    CHECK(to_real(surd_abs(x - Surd(approx))) < Real("1e-10"));
}

TEST_CASE("CF literals parse heads and cycles") {
    CfLiteral a = parse_cf_literal("[5;1,6,4]");
    CHECK(a.head == std::vector<long long>{5, 1, 6, 4});
    CHECK(a.cycle.empty());
    CfLiteral b = parse_cf_literal("[7;{5,1}*]");
    CHECK(b.head == std::vector<long long>{7});
    CHECK(b.cycle == std::vector<long long>{5, 1});
    CfLiteral c = parse_cf_literal("[{5,1}*]");
    CHECK(c.head.empty());
    CHECK(c.cycle == std::vector<long long>{5, 1});
    CHECK_THROWS_AS(parse_cf_literal("[7;{5,1}]"), DomainError);
    CHECK_THROWS_AS(parse_cf_literal("5;1"), DomainError);
    CHECK_THROWS_AS(parse_cf_literal("[]"), DomainError);
    CHECK_THROWS_AS(parse_cf_literal("[{5}*,3]"), DomainError);
}

TEST_CASE("integral weight sequence of 170/29") {
    std::vector<Int> w = integral_weights(170, 29);
    std::vector<Int> expect{29, 29, 29, 29, 29, 25, 4, 4, 4, 4, 4, 4, 1, 1, 1, 1};
    CHECK(w == expect);
    auto blocks = integral_weight_blocks(170, 29);
    REQUIRE(blocks.size() == 4);
    CHECK(blocks[0] == std::pair<Int, long long>{29, 5});
    CHECK(blocks[1] == std::pair<Int, long long>{25, 1});
    CHECK(blocks[2] == std::pair<Int, long long>{4, 6});
    CHECK(blocks[3] == std::pair<Int, long long>{1, 4});
    CHECK_THROWS_AS(integral_weights(170, 30), NotCoprime);
    CHECK_THROWS_AS(integral_weights(29, 29), NotCoprime);
    CHECK_THROWS_AS(integral_weights(29, 170), DomainError);
}

TEST_CASE("weight expansions scale the integral weights by 1/q") {
    WeightExpansion w = weight_expansion(Rational(11, 2));
    REQUIRE(w.size() == 2);
    CHECK(w[0].value == Rational(1));
    CHECK(w[0].multiplicity == 5);
    CHECK(w[1].value == Rational(1, 2));
    CHECK(w[1].multiplicity == 2);
    auto flat = flat_weights(Rational(11, 2));
    CHECK(flat.size() == 7);
    CHECK(cf_length(Rational(11, 2)) == 7);
}

TEST_CASE("weight identities: sums and square sums") {
    // For w = q*w(p/q): sum w_i = p + q - 1 and sum w_i^2 = pq.
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> pn(3, 3000), qn(1, 500);
    int done = 0;
    for (int i = 0; done < 200 && i < 4000; ++i) {
        Int p = pn(rng), q = qn(rng);
        if (p <= q || gcd(p, q) != 1) continue;
        ++done;
        Int s = 0, sq = 0;
        for (const Int& wi : integral_weights(p, q)) {
            s += wi;
            sq += wi * wi;
        }
        CHECK(s == p + q - 1);
        CHECK(sq == p * q);
        // multiplicities match the CF terms of p/q
        auto blocks = integral_weight_blocks(p, q);
        auto cf = rational_to_cf(Rational(p, q));
        REQUIRE(blocks.size() == cf.terms.size());
        for (size_t j = 0; j < blocks.size(); ++j) CHECK(blocks[j].second == cf.terms[j]);
        // block values strictly decreasing, last block value 1
        for (size_t j = 1; j < blocks.size(); ++j) CHECK(blocks[j].first < blocks[j - 1].first);
        CHECK(blocks.back().first == 1);
    }
    CHECK(done == 200);
}
