#pragma once

// Cremona moves and the reduction-based exceptional/fake verdict.  A state
// is (degree; entries), entries sorted nonincreasing with zeros removed; the
// terminal exceptional state is (0; [-1]).

#include "staircap/classes.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace staircap {

struct ReductionState {
    Int degree;
    std::vector<Int> entries;

    bool operator==(const ReductionState& o) const {
        return degree == o.degree && entries == o.entries;
    }
};

inline ReductionState tidy(ReductionState s) {
    s.entries.erase(std::remove(s.entries.begin(), s.entries.end(), Int(0)), s.entries.end());
    std::sort(s.entries.begin(), s.entries.end(), std::greater<Int>());
    return s;
}

inline ReductionState initial_state(const ExClass& c) {
    ReductionState s;
    s.degree = c.d;
    s.entries.push_back(c.m);
    s.entries.insert(s.entries.end(), c.mvec.begin(), c.mvec.end());
    return tidy(std::move(s));
}

// (d, n1, n2, n3, ...) -> (2d - n1 - n2 - n3, d - n2 - n3, d - n1 - n3,
// d - n1 - n2, ...), applied to the three largest entries, then re-sorted
// with zeros dropped.
inline ReductionState cremona_move(const ReductionState& in) {
    ReductionState s = tidy(in);
    while (s.entries.size() < 3) s.entries.push_back(0);
    Int n1 = s.entries[0], n2 = s.entries[1], n3 = s.entries[2];
    ReductionState out;
    out.degree = 2 * s.degree - n1 - n2 - n3;
    out.entries = s.entries;
    out.entries[0] = s.degree - n2 - n3;
    out.entries[1] = s.degree - n1 - n3;
    out.entries[2] = s.degree - n1 - n2;
    return tidy(std::move(out));
}

// Invariant quantities 3d - sum and d^2 - sum of squares.
inline std::pair<Int, Int> reduction_invariants(const ReductionState& s) {
    Int lin = 0, sq = 0;
    for (const Int& e : s.entries) {
        lin += e;
        sq += e * e;
    }
    return {3 * s.degree - lin, s.degree * s.degree - sq};
}

enum class ReduceOutcome { Exceptional, Fake };

struct ReduceResult {
    ReduceOutcome outcome;
    std::string reason;  // set for Fake
    std::vector<ReductionState> moveLog;  // includes initial and final states
};

inline bool is_terminal_e1(const ReductionState& s) {
    return s.degree == 0 && s.entries.size() == 1 && s.entries[0] == -1;
}

inline ReduceResult reduce(const ExClass& c, long long maxSteps = 10000) {
    ReduceResult res;
    ReductionState s = initial_state(c);
    res.moveLog.push_back(s);
    for (long long step = 0; step <= maxSteps; ++step) {
        if (is_terminal_e1(s)) {
            res.outcome = ReduceOutcome::Exceptional;
            return res;
        }
        if (s.degree < 0) {
            res.outcome = ReduceOutcome::Fake;
            res.reason = "degree became negative";
            return res;
        }
        if (s.degree == 0) {
            res.outcome = ReduceOutcome::Fake;
            res.reason = "degree 0 state is not (0; -1)";
            return res;
        }
        if (!s.entries.empty() && s.entries.back() < -1) {
            res.outcome = ReduceOutcome::Fake;
            res.reason = "entry below -1";
            return res;
        }
        Int n1 = s.entries.size() > 0 ? s.entries[0] : Int(0);
        Int n2 = s.entries.size() > 1 ? s.entries[1] : Int(0);
        Int n3 = s.entries.size() > 2 ? s.entries[2] : Int(0);
        if (s.degree - n1 - n2 - n3 >= 0) {
            // Stuck: the move would not decrease the degree.
            res.outcome = ReduceOutcome::Fake;
            res.reason = "no degree-decreasing move (defect >= 0)";
            return res;
        }
        s = cremona_move(s);
        res.moveLog.push_back(s);
    }
    throw StepLimit();
}

}  // namespace staircap
