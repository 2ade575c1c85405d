#include "pathvote/voting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathvote {

RangeBallot sincere_range_ballot(const UtilityMatrix& u, int elector, double max_note) {
    const auto& e = u.electors.at(elector);
    RangeBallot b;
    b.notes.assign(u.num_candidates, 0.0);
    for (int j = 0; j < u.num_candidates; ++j) {
        if (!e.on_path[j]) continue;  // forced 0, clamping never applies
        b.notes[j] = std::clamp(e.utility[j], -max_note, max_note);
    }
    return b;
}

RangeBallot sincere_range_ballot(const UtilityMatrix& u, int elector) {
    return sincere_range_ballot(u, elector, u.fare);
}

RangeResult range_winner(const std::vector<RangeBallot>& ballots) {
    if (ballots.empty()) throw std::invalid_argument("range_winner: no ballots");
    const std::size_t m = ballots.front().notes.size();
    if (m == 0) throw std::invalid_argument("range_winner: no candidates");

    RangeResult r;
    r.sums.assign(m, 0.0);
    for (const auto& b : ballots) {
        if (b.notes.size() != m) throw std::invalid_argument("range_winner: ragged ballots");
        for (std::size_t j = 0; j < m; ++j) r.sums[j] += b.notes[j];
    }
    r.winner = 0;
    for (std::size_t j = 1; j < m; ++j)
        if (r.sums[j] > r.sums[r.winner]) r.winner = int(j);
    return r;
}

OrderBallot sincere_order_ballot(const UtilityMatrix& u, int elector) {
    const auto& e = u.electors.at(elector);
    OrderBallot b;
    b.keys = e.utility;  // off-path entries are already exactly 0
    return b;
}

std::vector<Rational> eb_round(const std::vector<int>& remaining,
                               const std::vector<OrderBallot>& ballots) {
    if (remaining.empty()) throw std::invalid_argument("eb_round: empty remaining set");
    // Count contributions per (candidate, split size) first and sum the
    // grouped fractions n/k afterwards; electors indifferent among large
    // sets then cost one rational addition per distinct k instead of one
    // per elector, and the tallies' denominators stay near the lcm of the
    // few split sizes that actually occur.
    const std::size_t r = remaining.size();
    std::vector<int> split_sizes;  // distinct k values, insertion order
    std::vector<std::vector<int>> counts(r);
    for (const auto& b : ballots) {
        double best = -std::numeric_limits<double>::infinity();
        for (const int j : remaining) best = std::max(best, b.keys.at(j));
        int tied = 0;
        for (const int j : remaining)
            if (b.keys[j] == best) ++tied;
        std::size_t slot = 0;
        while (slot < split_sizes.size() && split_sizes[slot] != tied) ++slot;
        if (slot == split_sizes.size()) split_sizes.push_back(tied);
        for (std::size_t k = 0; k < r; ++k) {
            if (b.keys[remaining[k]] != best) continue;
            if (counts[k].size() <= slot) counts[k].resize(split_sizes.size(), 0);
            ++counts[k][slot];
        }
    }
    std::vector<Rational> tallies(r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t slot = 0; slot < counts[k].size(); ++slot)
            if (counts[k][slot] > 0) tallies[k] += Rational(counts[k][slot], split_sizes[slot]);
    return tallies;
}

StvResult stv_winner(const std::vector<OrderBallot>& ballots, int num_candidates) {
    if (num_candidates < 1) throw std::invalid_argument("stv_winner: no candidates");
    for (const auto& b : ballots)
        if (int(b.keys.size()) != num_candidates)
            throw std::invalid_argument("stv_winner: ballot size mismatch");

    StvResult result;
    std::vector<int> remaining(num_candidates);
    for (int j = 0; j < num_candidates; ++j) remaining[j] = j;

    while (remaining.size() > 1) {
        StvRound round;
        round.remaining = remaining;
        round.tallies = eb_round(remaining, ballots);
        std::size_t least = 0;
        for (std::size_t k = 1; k < remaining.size(); ++k)
            if (round.tallies[k] < round.tallies[least]) least = k;  // lowest index wins ties
        round.eliminated = remaining[least];
        remaining.erase(remaining.begin() + least);
        result.rounds.push_back(std::move(round));
    }
    result.winner = remaining.front();
    return result;
}

std::vector<RangeBallot> sincere_range_profile(const UtilityMatrix& u) {
    std::vector<RangeBallot> ballots;
    ballots.reserve(u.electors.size());
    for (int i = 0; i < u.elector_count(); ++i) ballots.push_back(sincere_range_ballot(u, i));
    return ballots;
}

std::vector<OrderBallot> sincere_order_profile(const UtilityMatrix& u) {
    std::vector<OrderBallot> ballots;
    ballots.reserve(u.electors.size());
    for (int i = 0; i < u.elector_count(); ++i) ballots.push_back(sincere_order_ballot(u, i));
    return ballots;
}

int count_range_clamps(const UtilityMatrix& u) {
    int clamps = 0;
    for (const auto& e : u.electors)
        for (int j = 0; j < u.num_candidates; ++j)
            if (e.on_path[j] && std::abs(e.utility[j]) > u.fare) ++clamps;
    return clamps;
}

}  // namespace pathvote
