#include "pathvote/economics.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pathvote {

double path_cost_share(const Topology& t, const CostModel& cm, const CandidatePath& path,
                       int carrier) {
    const auto& seq = path.carriers;
    const auto it = std::find(seq.begin(), seq.end(), carrier);
    if (it == seq.end()) throw std::invalid_argument("path_cost_share: carrier not on path");
    const std::size_t pos = std::size_t(it - seq.begin());
    double share = 0.0;
    if (pos > 0) share += 0.5 * link_cost(t, cm, seq[pos - 1], seq[pos]);
    if (pos + 1 < seq.size()) share += 0.5 * link_cost(t, cm, seq[pos], seq[pos + 1]);
    return share;
}

double path_total_cost(const Topology& t, const CostModel& cm, const CandidatePath& path) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < path.carriers.size(); ++k)
        total += link_cost(t, cm, path.carriers[k], path.carriers[k + 1]);
    return total;
}

double least_cost_path_cost(const Topology& t, const CostModel& cm, Demand d) {
    const int n = t.carrier_count();
    if (d.ingress < 0 || d.ingress >= n || d.egress < 0 || d.egress >= n || d.ingress == d.egress)
        throw std::invalid_argument("least_cost_path_cost: invalid demand");

    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    dist[d.ingress] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0.0, d.ingress});
    while (!queue.empty()) {
        const auto [du, u] = queue.top();
        queue.pop();
        if (du > dist[u]) continue;
        if (u == d.egress) break;
        for (const auto& [v, dd] : t.neighbors(u)) {
            const double alt = du + link_cost(cm, dd);
            if (alt < dist[v]) {
                dist[v] = alt;
                queue.push({alt, v});
            }
        }
    }
    return dist[d.egress];
}

Fare calibrate_fare(const Topology& t, const CostModel& cm, double factor) {
    const auto demands = all_demands(t);
    double total = 0.0;
    for (const auto& d : demands) total += least_cost_path_cost(t, cm, d);
    return Fare{factor * total / double(demands.size())};
}

UtilityMatrix utility_matrix(const CandidateSet& cs, const Topology& t, const CostModel& cm,
                             Fare fare) {
    if (cs.size() == 0) throw std::invalid_argument("utility_matrix: empty candidate set");
    const auto part = participation(cs, t.carrier_count());

    UtilityMatrix u;
    u.demand = cs.demand;
    u.num_candidates = cs.size();
    u.fare = fare.amount;
    u.electors.reserve(part.electorate.size());
    for (const int carrier : part.electorate) {
        Elector e;
        e.carrier = carrier;
        e.utility.assign(cs.size(), 0.0);
        e.on_path.assign(cs.size(), 0);
        for (const int j : part.candidates_of[carrier]) {
            const double share = path_cost_share(t, cm, cs.paths[j], carrier);
            e.utility[j] = fare.amount / double(part.electors_of[j].size()) - share;
            e.on_path[j] = 1;
        }
        u.electors.push_back(std::move(e));
    }
    return u;
}

double global_net_income(const UtilityMatrix& u, int candidate) {
    if (candidate < 0 || candidate >= u.num_candidates)
        throw std::invalid_argument("global_net_income: candidate index out of range");
    double sum = 0.0;
    for (const auto& e : u.electors) sum += e.utility[candidate];
    return sum;
}

double efficiency(const std::vector<double>& incomes_selected,
                  const std::vector<double>& incomes_optimal) {
    if (incomes_selected.size() != incomes_optimal.size())
        throw std::invalid_argument("efficiency: demand lists differ in length");
    double selected = 0.0, optimal = 0.0;
    for (const double v : incomes_selected) selected += v;
    for (const double v : incomes_optimal) optimal += v;
    if (!(optimal > 0.0)) throw std::domain_error("efficiency: non-positive optimal aggregate");
    // Divide before scaling: equal aggregates must give exactly 100.0.
    return 100.0 * (selected / optimal);
}

}  // namespace pathvote
