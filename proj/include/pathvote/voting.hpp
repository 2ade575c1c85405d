#pragma once

#include <vector>

#include "pathvote/economics.hpp"
#include "pathvote/rational.hpp"

namespace pathvote {

// Numeric notes per candidate, clamped to [-A, +A]; exactly 0 for candidates
// the carrier is not on (supervisor-enforced).
struct RangeBallot {
    std::vector<double> notes;
};

// Weak-order ballot: one sort key per candidate. Off-path candidates are
// pinned at the indifference level 0; positive means "like", negative
// "dislike". Only the induced weak order matters.
struct OrderBallot {
    std::vector<double> keys;
};

struct RangeResult {
    int winner = -1;
    std::vector<double> sums;
};

// One STV/EB elimination round: exact-rational tallies for the candidates
// still standing, and the one eliminated (least votes, lowest index on ties).
struct StvRound {
    std::vector<int> remaining;       // ascending candidate indices
    std::vector<Rational> tallies;    // parallel to `remaining`
    int eliminated = -1;
};

struct StvResult {
    int winner = -1;
    std::vector<StvRound> rounds;  // exactly m-1 rounds
};

RangeBallot sincere_range_ballot(const UtilityMatrix& u, int elector, double max_note);
RangeBallot sincere_range_ballot(const UtilityMatrix& u, int elector);  // max note = fare

// Winner maximizes the note sum; ties go to the lowest candidate index.
RangeResult range_winner(const std::vector<RangeBallot>& ballots);

OrderBallot sincere_order_ballot(const UtilityMatrix& u, int elector);

// One elimination-round count: every elector splits its single vote equally
// over its most-preferred candidates among `remaining` (an elector
// indifferent among all of them splits over all). Tallies sum to the
// electorate size exactly.
std::vector<Rational> eb_round(const std::vector<int>& remaining,
                               const std::vector<OrderBallot>& ballots);

// m-1 elimination rounds over fixed ballots; re-evaluating the top sets on
// the shrinking remaining set is the automatic transfer.
StvResult stv_winner(const std::vector<OrderBallot>& ballots, int num_candidates);

std::vector<RangeBallot> sincere_range_profile(const UtilityMatrix& u);
std::vector<OrderBallot> sincere_order_profile(const UtilityMatrix& u);

// Number of notes that [-A, +A] clamping actually changed in the sincere
// profile of `u` (reported by the experiment runner).
int count_range_clamps(const UtilityMatrix& u);

}  // namespace pathvote
