#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "staircap/cremona.hpp"

using namespace staircap;

TEST_CASE("states are kept sorted with zeros dropped") {
    ReductionState s{5, {0, 3, -1, 0, 7, 3}};
    ReductionState t = tidy(s);
    CHECK(t.degree == 5);
    CHECK(t.entries == std::vector<Int>{7, 3, 3, -1});
    ExClass c{3, 2, {1, 1, 0, 1}};
    ReductionState init = initial_state(c);
    CHECK(init.degree == 3);
    CHECK(init.entries == std::vector<Int>{2, 1, 1, 1});
}

TEST_CASE("a single move transforms the top three entries") {
    ReductionState s{4, {3, 2, 2, 1}};
    ReductionState t = cremona_move(s);
    // (2*4-7; 4-4, 4-5, 4-5, 1) = (1; 0, -1, -1, 1) -> zeros dropped, sorted
    CHECK(t.degree == 1);
    CHECK(t.entries == std::vector<Int>{1, -1, -1});
    // states with fewer than three entries are padded with zeros
    ReductionState u = cremona_move(ReductionState{2, {3}});
    CHECK(u.degree == 1);
    CHECK(u.entries == std::vector<Int>{2, -1, -1});
}

TEST_CASE("moves preserve both numerical invariants") {
    QuasiPerfectClass c = make_quasi_perfect(73, 20, 170, 29);
    ReduceResult r = reduce(c.to_exclass());
    auto [lin0, sq0] = reduction_invariants(r.moveLog.front());
    for (const ReductionState& s : r.moveLog) {
        auto [lin, sq] = reduction_invariants(s);
        CHECK(lin == lin0);
        CHECK(sq == sq0);
    }
    // Diophantine classes always carry (1, -1)
    CHECK(lin0 == 1);
    CHECK(sq0 == -1);
}

TEST_CASE("exceptional verdicts") {
    CHECK(reduce(ExClass{2, 0, {1, 1, 1, 1, 1}}).outcome == ReduceOutcome::Exceptional);
    CHECK(reduce(make_quasi_perfect(73, 20, 170, 29).to_exclass()).outcome ==
          ReduceOutcome::Exceptional);
    CHECK(reduce(ExClass{0, -1, {}}).outcome == ReduceOutcome::Exceptional);
    CHECK(reduce(ExClass{1, 0, {1, 1}}).outcome == ReduceOutcome::Exceptional);
}

TEST_CASE("fake verdicts carry a reason") {
    ReduceResult r = reduce(parse_class_literal("48,14;[19^5,16,3^5,1^3]"));
    CHECK(r.outcome == ReduceOutcome::Fake);
    CHECK(!r.reason.empty());
    // same class given by its center
    ReduceResult r2 = reduce(parse_class_literal("48,14;111/19"));
    CHECK(r2.outcome == ReduceOutcome::Fake);
    CHECK(r2.reason == r.reason);
    // stuck state: no degree-decreasing move available
    ReduceResult stuck = reduce(ExClass{5, 1, {1, 1}});
    CHECK(stuck.outcome == ReduceOutcome::Fake);
    CHECK(stuck.reason == "no degree-decreasing move (defect >= 0)");
    // an entry dropping below -1
    ReduceResult deep = reduce(ExClass{3, 0, {5}});
    CHECK(deep.outcome == ReduceOutcome::Fake);
    CHECK(deep.reason == "entry below -1");
    // degree going negative
    ReduceResult neg = reduce(ExClass{1, 0, {3}});
    CHECK(neg.outcome == ReduceOutcome::Fake);
}

TEST_CASE("the move log of a large staircase class") {
    // k = 2 class of the lower U staircase at n = 1: center [7;3,7,3,6] = 3191/436.
    QuasiPerfectClass c = make_quasi_perfect(1538, 987, 3191, 436);
    ReduceResult r = reduce(c.to_exclass());
    CHECK(r.outcome == ReduceOutcome::Exceptional);
    std::vector<Int> degrees{1538, 1217, 896, 484, 345, 230};
    REQUIRE(r.moveLog.size() > degrees.size());
    for (size_t i = 0; i < degrees.size(); ++i) CHECK(r.moveLog[i].degree == degrees[i]);
    // the state after five moves, checked entry by entry
    std::vector<Int> row5{115, 115, 115, 91, 24, 24, 24, 24, 19, 19, 19,
                          19,  19,  19,  19, 6,  6,  6,  1,  1,  1, 1, 1, 1};
    CHECK(r.moveLog[5].entries == row5);
    CHECK(is_terminal_e1(r.moveLog.back()));
}

TEST_CASE("blocking classes of all three families reduce to E1") {
    for (long long n = 0; n <= 5; ++n) {
        CHECK(reduce(make_quasi_perfect(n + 3, n + 2, 2 * n + 6, 1).to_exclass()).outcome ==
              ReduceOutcome::Exceptional);
        CHECK(reduce(make_quasi_perfect(5 * n + 15, n + 4, 12 * n + 35, 2 * n + 6).to_exclass())
                  .outcome == ReduceOutcome::Exceptional);
        if (n >= 1)
            CHECK(reduce(make_quasi_perfect(5 * n, n - 1, 12 * n + 1, 2 * n).to_exclass())
                      .outcome == ReduceOutcome::Exceptional);
    }
}

TEST_CASE("the step limit throws instead of looping") {
    CHECK_THROWS_AS(reduce(make_quasi_perfect(1538, 987, 3191, 436).to_exclass(), 2), StepLimit);
}
