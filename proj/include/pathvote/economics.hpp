#pragma once

#include <vector>

#include "pathvote/candidates.hpp"
#include "pathvote/topology.hpp"

namespace pathvote {

// Flat client fare per demand, split equally among the winning path's
// carriers.
struct Fare {
    double amount = 0.0;
};

// One elector's view of an election: sincere utilities per candidate and the
// on-path mask enforced by the supervisor (utility is exactly 0 off-path).
struct Elector {
    int carrier = -1;
    std::vector<double> utility;
    std::vector<char> on_path;
};

// Sincere utilities u[i][j] for every elector on >= 1 candidate of a demand.
// Also constructible directly, so synthetic elections (tests, oracles) need
// no topology behind them.
struct UtilityMatrix {
    Demand demand;
    int num_candidates = 0;
    double fare = 0.0;
    std::vector<Elector> electors;

    int elector_count() const { return int(electors.size()); }
};

// Carrier i's cost to carry `path`: half the incoming plus half the outgoing
// interconnection link cost (no incoming term at the ingress, no outgoing
// term at the egress).
double path_cost_share(const Topology& t, const CostModel& cm, const CandidatePath& path,
                       int carrier);

double path_total_cost(const Topology& t, const CostModel& cm, const CandidatePath& path);

// Minimum total link cost over all ingress->egress paths (Dijkstra on the
// whole graph, not restricted to any candidate set).
double least_cost_path_cost(const Topology& t, const CostModel& cm, Demand d);

// A = 1.4 x mean over all ordered demands of the least-cost path cost.
Fare calibrate_fare(const Topology& t, const CostModel& cm, double factor = 1.4);

UtilityMatrix utility_matrix(const CandidateSet& cs, const Topology& t, const CostModel& cm,
                             Fare fare);

// Sum of all carriers' utilities for candidate j; equals fare - total link
// cost of path j.
double global_net_income(const UtilityMatrix& u, int candidate);

// 100 * (sum selected) / (sum optimal). Throws when the optimal aggregate is
// not positive.
double efficiency(const std::vector<double>& incomes_selected,
                  const std::vector<double>& incomes_optimal);

}  // namespace pathvote
