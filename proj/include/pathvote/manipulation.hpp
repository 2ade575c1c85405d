#pragma once

#include <vector>

#include "pathvote/economics.hpp"
#include "pathvote/voting.hpp"

namespace pathvote {

enum class Verdict { Manipulable, NotManipulable, Inconclusive };

enum class VotingSystem { Range, Stv };

// Outcome of one manipulability test. `challenger` and the evidence fields
// are filled for the first successful challenger; `successful_challengers`
// lists every candidate whose test succeeded (the upper-bound search stops
// at the first, existence being all the bound needs).
struct ManipulabilityVerdict {
    Verdict status = Verdict::Inconclusive;
    int sincere_winner = -1;
    int challenger = -1;
    std::vector<int> successful_challengers;
    std::vector<RangeBallot> range_evidence;   // range trivial-manipulation profile
    std::vector<OrderBallot> order_evidence;   // STV trivial-manipulation profile
    std::vector<int> elimination_order;        // upper-bound search witness
};

// Electors strictly preferring `challenger` to `sincere_winner` under the
// sincere utilities.
std::vector<int> coalition_members(const UtilityMatrix& u, int challenger, int sincere_winner);

// Exact coalition manipulability of range voting: each coalition member puts
// +A on the challenger and -A on every other candidate it is on (off-path
// notes stay 0). Trivial manipulation is optimal here, so the verdict is
// exact and never Inconclusive.
ManipulabilityVerdict range_cm(const UtilityMatrix& u);

// Trivial manipulation of STV (lower bound): each coalition member raises the
// challenger above all its other keys when on it, and drops the sincere
// winner below all its other keys when on it; everything else stays sincere.
// Manipulable is a constructive witness; NotManipulable here only means the
// trivial strategy failed.
ManipulabilityVerdict stv_tm(const UtilityMatrix& u);

// Exhaustive-ballot relaxation (upper bound): manipulators may re-vote each
// round, split votes fractionally, and lie about any candidate, so only
// their head count W matters. In a remaining set R, candidate d (not the
// challenger) can be eliminated iff the manipulators can top every rival up
// to d's sincere non-manipulator tally:
//     sum over e in R\{d} of max(0, t_R(d) - t_R(e))  <=  W,
// with all ties resolved in the manipulators' favor. NotManipulable (no
// challenger can reach the singleton state) is a sound proof for true STV;
// reachability only says "maybe". With more than max_m candidates the search
// is skipped and the verdict is Inconclusive.
ManipulabilityVerdict stv_cm_upper(const UtilityMatrix& u, int max_m = 25);

// TM plus (when TM fails) the upper-bound search, combined into the verdict
// the experiment reports: Manipulable on a TM witness, NotManipulable on an
// upper-bound proof, Inconclusive otherwise.
struct StvManipAnalysis {
    ManipulabilityVerdict tm;
    ManipulabilityVerdict upper;
    Verdict combined = Verdict::Inconclusive;
};
StvManipAnalysis stv_manipulability(const UtilityMatrix& u, int max_m = 25);

// Exhaustive test oracle for tiny instances (m <= 4, per-challenger
// coalitions <= 3, electorate <= 8): enumerates every joint coalition ballot
// in the allowed strategy space (all weak orders over on-path candidates for
// STV, all {-A,+A} corners for range) and reports exact CM. Throws when the
// instance is too large.
ManipulabilityVerdict brute_force_cm(const UtilityMatrix& u, VotingSystem system);

// Incomes realized when a manipulation is carried out: the average assumes a
// uniform choice over the TM-successful challengers, the worst takes the
// income-minimizing one; with no successful challenger both equal the
// sincere winner's income.
struct InsincereOutcomes {
    bool manipulated = false;
    double average_income = 0.0;
    double worst_income = 0.0;
};
InsincereOutcomes insincere_outcomes(const UtilityMatrix& u,
                                     const std::vector<int>& successful_challengers,
                                     int sincere_winner);

}  // namespace pathvote
