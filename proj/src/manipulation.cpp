#include "pathvote/manipulation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace pathvote {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The subset search stores remaining-candidate sets in a uint32_t and its
// tallies as integers scaled by lcm(1..31), so every equal split 1/k with
// k <= 31 is exact and comparisons are plain int64 (sums stay far below
// overflow: <= 38 electors x kTallyScale).
constexpr int kMaskLimit = 31;
constexpr std::int64_t kTallyScale = 72201776446800;  // lcm(1..31)

// Explored-state budget per challenger; beyond it the challenger's proof is
// abandoned and the verdict degrades to Inconclusive, which keeps the bound
// sound (we only ever give up on proving NotManipulable, never claim it).
constexpr std::size_t kStateBudget = 200000;

// Per-elector descending preference levels as candidate bitmasks: the
// elector's top set within remaining set R is the first group intersecting
// R. Built once per (challenger, demand) from the non-manipulators.
std::vector<std::vector<std::uint32_t>> preference_groups(
    const std::vector<OrderBallot>& ballots, const std::vector<char>& is_manipulator) {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t i = 0; i < ballots.size(); ++i) {
        if (is_manipulator[i]) continue;
        const auto& keys = ballots[i].keys;
        std::vector<int> order(keys.size());
        for (std::size_t j = 0; j < keys.size(); ++j) order[j] = int(j);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return keys[a] > keys[b]; });
        std::vector<std::uint32_t> groups;
        std::size_t j = 0;
        while (j < order.size()) {
            std::uint32_t mask = 0;
            const double level = keys[order[j]];
            for (; j < order.size() && keys[order[j]] == level; ++j) mask |= 1u << order[j];
            groups.push_back(mask);
        }
        out.push_back(std::move(groups));
    }
    return out;
}

// Scaled sincere tallies of the non-manipulators for the remaining set
// `state` (equal-split round rule).
void scaled_tallies(const std::vector<std::vector<std::uint32_t>>& groups, std::uint32_t state,
                    std::int64_t* tally) {
    for (std::uint32_t rest = state; rest != 0; rest &= rest - 1)
        tally[std::countr_zero(rest)] = 0;
    for (const auto& elector : groups) {
        for (const std::uint32_t group : elector) {
            const std::uint32_t top = group & state;
            if (top == 0) continue;
            const std::int64_t share = kTallyScale / std::popcount(top);
            for (std::uint32_t rest = top; rest != 0; rest &= rest - 1)
                tally[std::countr_zero(rest)] += share;
            break;
        }
    }
}

std::vector<int> bits_to_indices(std::uint32_t mask) {
    std::vector<int> out;
    for (int j = 0; mask != 0; ++j, mask >>= 1)
        if (mask & 1u) out.push_back(j);
    return out;
}

}  // namespace

std::vector<int> coalition_members(const UtilityMatrix& u, int challenger, int sincere_winner) {
    std::vector<int> members;
    for (int i = 0; i < u.elector_count(); ++i)
        if (u.electors[i].utility[challenger] > u.electors[i].utility[sincere_winner])
            members.push_back(i);
    return members;
}

ManipulabilityVerdict range_cm(const UtilityMatrix& u) {
    const auto sincere = sincere_range_profile(u);
    const int v = range_winner(sincere).winner;

    ManipulabilityVerdict verdict;
    verdict.sincere_winner = v;
    for (int c = 0; c < u.num_candidates; ++c) {
        if (c == v) continue;
        const auto members = coalition_members(u, c, v);
        if (members.empty()) continue;

        auto profile = sincere;
        for (const int i : members) {
            const auto& e = u.electors[i];
            for (int j = 0; j < u.num_candidates; ++j)
                if (e.on_path[j]) profile[i].notes[j] = (j == c) ? u.fare : -u.fare;
        }
        if (range_winner(profile).winner == c) {
            verdict.successful_challengers.push_back(c);
            if (verdict.challenger < 0) {
                verdict.challenger = c;
                verdict.range_evidence = std::move(profile);
            }
        }
    }
    verdict.status =
        verdict.successful_challengers.empty() ? Verdict::NotManipulable : Verdict::Manipulable;
    return verdict;
}

ManipulabilityVerdict stv_tm(const UtilityMatrix& u) {
    const auto sincere = sincere_order_profile(u);
    const int v = stv_winner(sincere, u.num_candidates).winner;

    ManipulabilityVerdict verdict;
    verdict.sincere_winner = v;
    for (int c = 0; c < u.num_candidates; ++c) {
        if (c == v) continue;
        const auto members = coalition_members(u, c, v);
        if (members.empty()) continue;

        auto profile = sincere;
        for (const int i : members) {
            const auto& e = u.electors[i];
            if (e.on_path[c]) profile[i].keys[c] = kInf;
            if (e.on_path[v]) profile[i].keys[v] = -kInf;
        }
        if (stv_winner(profile, u.num_candidates).winner == c) {
            verdict.successful_challengers.push_back(c);
            if (verdict.challenger < 0) {
                verdict.challenger = c;
                verdict.order_evidence = std::move(profile);
            }
        }
    }
    verdict.status =
        verdict.successful_challengers.empty() ? Verdict::NotManipulable : Verdict::Manipulable;
    return verdict;
}

ManipulabilityVerdict stv_cm_upper(const UtilityMatrix& u, int max_m) {
    const int m = u.num_candidates;
    const auto sincere = sincere_order_profile(u);
    const int v = m > 1 ? stv_winner(sincere, m).winner : 0;

    ManipulabilityVerdict verdict;
    verdict.sincere_winner = v;
    if (m <= 1) {
        verdict.status = Verdict::NotManipulable;
        return verdict;
    }

    bool any_coalition = false;
    for (int c = 0; c < m && !any_coalition; ++c)
        any_coalition = c != v && !coalition_members(u, c, v).empty();
    if (!any_coalition) {
        verdict.status = Verdict::NotManipulable;
        return verdict;
    }
    if (m > max_m || m > kMaskLimit) {
        verdict.status = Verdict::Inconclusive;
        return verdict;
    }

    const std::uint32_t full = (1u << m) - 1u;
    bool budget_exhausted = false;
    std::vector<std::int64_t> tally(m);
    for (int c = 0; c < m; ++c) {
        if (c == v) continue;
        const auto members = coalition_members(u, c, v);
        if (members.empty()) continue;
        const std::int64_t weight = std::int64_t(members.size()) * kTallyScale;

        std::vector<char> is_manipulator(u.elector_count(), 0);
        for (const int i : members) is_manipulator[i] = 1;
        const auto groups = preference_groups(sincere, is_manipulator);

        // Necessary condition: the challenger must win some final
        // head-to-head, i.e. some rival e is eliminable from {c, e}. If none
        // is, the singleton state is unreachable and the search is skipped.
        bool final_round_possible = false;
        for (int e = 0; e < m && !final_round_possible; ++e) {
            if (e == c) continue;
            scaled_tallies(groups, (1u << c) | (1u << e), tally.data());
            final_round_possible = tally[e] - tally[c] <= weight;
        }
        if (!final_round_possible) continue;

        const std::uint32_t goal = 1u << c;
        // Depth-first reachability over remaining-candidate sets; each state
        // is expanded once and its sincere tallies computed once.
        std::unordered_set<std::uint32_t> visited{full};
        std::unordered_map<std::uint32_t, std::pair<std::uint32_t, int>> parent;
        std::vector<std::uint32_t> stack{full};
        bool reached = false;
        while (!stack.empty() && !reached) {
            if (visited.size() > kStateBudget) {
                budget_exhausted = true;
                break;
            }
            const std::uint32_t state = stack.back();
            stack.pop_back();
            scaled_tallies(groups, state, tally.data());

            // Candidates the manipulators can force out of this state, with
            // the cheapest eliminations explored first.
            struct Move {
                std::int64_t deficit;
                int candidate;
            };
            std::vector<Move> moves;
            for (std::uint32_t rest = state; rest != 0; rest &= rest - 1) {
                const int d = std::countr_zero(rest);
                if (d == c) continue;
                std::int64_t deficit = 0;
                for (std::uint32_t others = state & ~(1u << d); others != 0;
                     others &= others - 1) {
                    const int e = std::countr_zero(others);
                    if (tally[d] > tally[e]) {
                        deficit += tally[d] - tally[e];
                        if (deficit > weight) break;
                    }
                }
                if (deficit <= weight) moves.push_back({deficit, d});
            }
            std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
                if (a.deficit != b.deficit) return a.deficit < b.deficit;
                return a.candidate < b.candidate;
            });
            // Push in reverse so the cheapest elimination is expanded next.
            for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
                const std::uint32_t next = state & ~(1u << it->candidate);
                if (!visited.insert(next).second) continue;
                parent[next] = {state, it->candidate};
                if (next == goal) {
                    reached = true;
                    break;
                }
                stack.push_back(next);
            }
        }

        if (reached) {
            verdict.status = Verdict::Manipulable;
            verdict.challenger = c;
            verdict.successful_challengers.push_back(c);
            std::vector<int> order;
            for (std::uint32_t s = goal; s != full;) {
                const auto& [prev, eliminated] = parent.at(s);
                order.push_back(eliminated);
                s = prev;
            }
            std::reverse(order.begin(), order.end());
            verdict.elimination_order = std::move(order);
            return verdict;
        }
    }
    verdict.status = budget_exhausted ? Verdict::Inconclusive : Verdict::NotManipulable;
    return verdict;
}

StvManipAnalysis stv_manipulability(const UtilityMatrix& u, int max_m) {
    StvManipAnalysis analysis;
    analysis.tm = stv_tm(u);
    if (analysis.tm.status == Verdict::Manipulable) {
        // A fixed-ballot witness is in particular a witness for the relaxed
        // system; no need to search.
        analysis.upper.status = Verdict::Manipulable;
        analysis.upper.sincere_winner = analysis.tm.sincere_winner;
        analysis.upper.challenger = analysis.tm.challenger;
        analysis.upper.successful_challengers = analysis.tm.successful_challengers;
        analysis.combined = Verdict::Manipulable;
        return analysis;
    }
    analysis.upper = stv_cm_upper(u, max_m);
    analysis.combined = analysis.upper.status == Verdict::NotManipulable ? Verdict::NotManipulable
                                                                         : Verdict::Inconclusive;
    return analysis;
}

namespace {

// Distinct weak orders over k on-path keys relative to the pinned 0 level,
// realized as integer key vectors in {-k..k}^k and deduplicated by their
// comparison signature.
std::vector<std::vector<double>> weak_order_keys(int k) {
    std::vector<std::vector<double>> out;
    std::set<std::vector<int>> seen;
    std::vector<int> levels(k, -k);
    for (;;) {
        std::vector<int> signature;
        signature.reserve(k + k * (k - 1) / 2);
        for (int i = 0; i < k; ++i)
            signature.push_back(levels[i] < 0 ? -1 : levels[i] > 0 ? 1 : 0);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                signature.push_back(levels[i] < levels[j] ? -1 : levels[i] > levels[j] ? 1 : 0);
        if (seen.insert(signature).second) out.emplace_back(levels.begin(), levels.end());

        int pos = k - 1;
        while (pos >= 0 && levels[pos] == k) levels[pos--] = -k;
        if (pos < 0) break;
        ++levels[pos];
    }
    return out;
}

}  // namespace

ManipulabilityVerdict brute_force_cm(const UtilityMatrix& u, VotingSystem system) {
    if (u.num_candidates > 4)
        throw std::invalid_argument("brute_force_cm: instance too large (m > 4)");
    if (u.elector_count() > 8)
        throw std::invalid_argument("brute_force_cm: instance too large (electorate > 8)");

    const auto sincere_orders = sincere_order_profile(u);
    const auto sincere_ranges = sincere_range_profile(u);
    const int v = system == VotingSystem::Stv ? stv_winner(sincere_orders, u.num_candidates).winner
                                              : range_winner(sincere_ranges).winner;

    ManipulabilityVerdict verdict;
    verdict.sincere_winner = v;
    for (int c = 0; c < u.num_candidates; ++c) {
        if (c == v) continue;
        const auto members = coalition_members(u, c, v);
        if (members.empty()) continue;
        if (members.size() > 3)
            throw std::invalid_argument("brute_force_cm: instance too large (coalition > 3)");

        // Per-member strategy sets over their on-path candidates.
        std::vector<std::vector<int>> on_paths;
        std::vector<std::vector<std::vector<double>>> strategies;
        std::size_t joint = 1;
        for (const int i : members) {
            std::vector<int> on;
            for (int j = 0; j < u.num_candidates; ++j)
                if (u.electors[i].on_path[j]) on.push_back(j);
            const int k = int(on.size());
            std::vector<std::vector<double>> options;
            if (system == VotingSystem::Stv) {
                options = weak_order_keys(k);
            } else {
                for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
                    std::vector<double> notes(k);
                    for (int idx = 0; idx < k; ++idx)
                        notes[idx] = (bits >> idx & 1u) ? u.fare : -u.fare;
                    options.push_back(std::move(notes));
                }
            }
            joint *= std::max<std::size_t>(options.size(), 1);
            on_paths.push_back(std::move(on));
            strategies.push_back(std::move(options));
        }
        if (joint > 4'000'000)
            throw std::invalid_argument("brute_force_cm: instance too large (joint strategies)");

        std::vector<std::size_t> pick(members.size(), 0);
        auto order_profile = sincere_orders;
        auto range_profile = sincere_ranges;
        bool success = false;
        for (;;) {
            for (std::size_t mi = 0; mi < members.size(); ++mi) {
                const int i = members[mi];
                const auto& option = strategies[mi][pick[mi]];
                if (system == VotingSystem::Stv) {
                    auto& keys = order_profile[i].keys;
                    std::fill(keys.begin(), keys.end(), 0.0);
                    for (std::size_t idx = 0; idx < on_paths[mi].size(); ++idx)
                        keys[on_paths[mi][idx]] = option[idx];
                } else {
                    auto& notes = range_profile[i].notes;
                    std::fill(notes.begin(), notes.end(), 0.0);
                    for (std::size_t idx = 0; idx < on_paths[mi].size(); ++idx)
                        notes[on_paths[mi][idx]] = option[idx];
                }
            }
            const int winner = system == VotingSystem::Stv
                                   ? stv_winner(order_profile, u.num_candidates).winner
                                   : range_winner(range_profile).winner;
            if (winner == c) {
                success = true;
                break;
            }
            std::size_t mi = 0;
            while (mi < members.size() && ++pick[mi] == strategies[mi].size()) pick[mi++] = 0;
            if (mi == members.size()) break;
        }
        if (success) {
            verdict.successful_challengers.push_back(c);
            if (verdict.challenger < 0) {
                verdict.challenger = c;
                if (system == VotingSystem::Stv)
                    verdict.order_evidence = order_profile;
                else
                    verdict.range_evidence = range_profile;
            }
        }
    }
    verdict.status =
        verdict.successful_challengers.empty() ? Verdict::NotManipulable : Verdict::Manipulable;
    return verdict;
}

InsincereOutcomes insincere_outcomes(const UtilityMatrix& u,
                                     const std::vector<int>& successful_challengers,
                                     int sincere_winner) {
    InsincereOutcomes out;
    if (successful_challengers.empty()) {
        out.average_income = out.worst_income = global_net_income(u, sincere_winner);
        return out;
    }
    out.manipulated = true;
    double sum = 0.0;
    double worst = std::numeric_limits<double>::infinity();
    for (const int c : successful_challengers) {
        const double income = global_net_income(u, c);
        sum += income;
        worst = std::min(worst, income);
    }
    out.average_income = sum / double(successful_challengers.size());
    out.worst_income = worst;
    return out;
}

}  // namespace pathvote
