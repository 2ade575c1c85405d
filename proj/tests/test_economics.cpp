#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pathvote/candidates.hpp"
#include "pathvote/economics.hpp"
#include "pathvote/topology.hpp"

using namespace pathvote;
using doctest::Approx;

namespace {

Topology from_json(const char* text) {
    std::istringstream in(text);
    return load_topology(in);
}

// A - B - C chain with unequal links (costs 2 and 4 under the unit model).
Topology chain24() {
    return from_json(R"({
        "carriers": [{"id":0,"name":"A"},{"id":1,"name":"B"},{"id":2,"name":"C"}],
        "links": [{"a":0,"b":1,"distance":2.0},{"a":1,"b":2,"distance":4.0}]
    })");
}

// Triangle where the direct A-C link is dearer than the detour via B.
Topology detour_triangle() {
    return from_json(R"({
        "carriers": [{"id":0,"name":"A"},{"id":1,"name":"B"},{"id":2,"name":"C"}],
        "links": [{"a":0,"b":1,"distance":1.0},{"a":1,"b":2,"distance":1.0},
                  {"a":0,"b":2,"distance":3.0}]
    })");
}

const CostModel kUnit{0.0, 1.0};  // link cost == distance

// Oracle: minimum-cost simple path by exhaustive recursion.
double min_cost_rec(const Topology& t, const CostModel& cm, int node, int egress,
                    std::vector<char>& used, double cost) {
    if (node == egress) return cost;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [next, dist] : t.neighbors(node)) {
        if (used[next]) continue;
        used[next] = 1;
        best = std::min(best, min_cost_rec(t, cm, next, egress, used, cost + link_cost(cm, dist)));
        used[next] = 0;
    }
    return best;
}

double brute_least_cost(const Topology& t, const CostModel& cm, Demand d) {
    std::vector<char> used(t.carrier_count(), 0);
    used[d.ingress] = 1;
    return min_cost_rec(t, cm, d.ingress, d.egress, used, 0.0);
}

}  // namespace

TEST_CASE("cost shares split each link in half") {
    const Topology t = chain24();
    const CandidatePath p{{0, 1, 2}};
    CHECK(path_cost_share(t, kUnit, p, 0) == Approx(1.0));
    CHECK(path_cost_share(t, kUnit, p, 1) == Approx(3.0));
    CHECK(path_cost_share(t, kUnit, p, 2) == Approx(2.0));
    CHECK(path_total_cost(t, kUnit, p) == Approx(6.0));
    CHECK_THROWS_AS(path_cost_share(t, kUnit, p, 3), std::invalid_argument);

    const CandidatePath direct{{0, 1}};
    CHECK(path_cost_share(t, kUnit, direct, 0) == Approx(1.0));
    CHECK(path_cost_share(t, kUnit, direct, 1) == Approx(1.0));
}

TEST_CASE("shares sum to the total path cost") {
    const Topology t = generate_geometric_topology(10, 4, 3.0);
    const CostPresets presets = preset_cost_models(t);
    for (const CostModel& cm :
         {presets.constant_dominated, presets.purely_linear, presets.intermediate}) {
        for (const Demand d : all_demands(t)) {
            const CandidateSet cs = enumerate_candidates(t, d, 5, 0);
            for (const auto& p : cs.paths) {
                double sum = 0.0;
                for (int c : p.carriers) sum += path_cost_share(t, cm, p, c);
                CHECK(sum == Approx(path_total_cost(t, cm, p)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("least-cost routing ignores hop counts") {
    const Topology t = detour_triangle();
    CHECK(least_cost_path_cost(t, kUnit, Demand{0, 2}) == Approx(2.0));
    CHECK(least_cost_path_cost(t, kUnit, Demand{2, 0}) == Approx(2.0));
    CHECK(least_cost_path_cost(t, kUnit, Demand{0, 1}) == Approx(1.0));
}

TEST_CASE("least-cost routing agrees with exhaustive search") {
    const Topology t = generate_geometric_topology(7, 11, 3.0);
    const CostPresets presets = preset_cost_models(t);
    for (const CostModel& cm :
         {presets.constant_dominated, presets.purely_linear, presets.intermediate}) {
        for (const Demand d : all_demands(t)) {
            CHECK(least_cost_path_cost(t, cm, d) ==
                  Approx(brute_least_cost(t, cm, d)).epsilon(1e-12));
        }
    }
}

TEST_CASE("fare calibration is 1.4 times the mean least cost") {
    const Topology two = from_json(R"({
        "carriers": [{"id":0,"name":"A"},{"id":1,"name":"B"}],
        "links": [{"a":0,"b":1,"distance":5.0}]
    })");
    CHECK(calibrate_fare(two, kUnit).amount == Approx(7.0).epsilon(1e-12));
    CHECK(calibrate_fare(two, kUnit, 2.0).amount == Approx(10.0).epsilon(1e-12));

    // Detour triangle: directed least costs are 1,1,1,1,2,2 -> mean 4/3.
    const Topology t = detour_triangle();
    CHECK(calibrate_fare(t, kUnit).amount == Approx(1.4 * 4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("utilities are the fare split minus the cost share") {
    const Topology t = chain24();
    const CandidateSet cs = enumerate_candidates(t, Demand{0, 2}, 1, 0);
    REQUIRE(cs.size() == 1);
    const UtilityMatrix u = utility_matrix(cs, t, kUnit, Fare{10.0});

    CHECK(u.num_candidates == 1);
    CHECK(u.fare == Approx(10.0));
    CHECK(u.demand.ingress == 0);
    CHECK(u.demand.egress == 2);
    REQUIRE(u.elector_count() == 3);

    for (const Elector& e : u.electors) {
        REQUIRE(e.utility.size() == 1);
        CHECK(e.on_path[0] == 1);
    }
    CHECK(u.electors[0].carrier == 0);
    CHECK(u.electors[0].utility[0] == Approx(10.0 / 3.0 - 1.0).epsilon(1e-12));
    CHECK(u.electors[1].utility[0] == Approx(10.0 / 3.0 - 3.0).epsilon(1e-12));
    CHECK(u.electors[2].utility[0] == Approx(10.0 / 3.0 - 2.0).epsilon(1e-12));
}

TEST_CASE("off-path utility is exactly zero") {
    const Topology t = detour_triangle();
    const CandidateSet cs = enumerate_candidates(t, Demand{0, 2}, 2, 0);
    REQUIRE(cs.size() == 2);
    REQUIRE(cs.paths[0].carriers == std::vector<int>{0, 2});
    const UtilityMatrix u = utility_matrix(cs, t, kUnit, calibrate_fare(t, kUnit));

    REQUIRE(u.elector_count() == 3);
    const Elector& b = u.electors[1];
    REQUIRE(b.carrier == 1);
    CHECK(b.on_path[0] == 0);
    CHECK(b.utility[0] == 0.0);  // not just small: the supervisor pins it
    CHECK(b.on_path[1] == 1);
    CHECK(b.utility[1] != 0.0);
}

TEST_CASE("global net income is fare minus path cost") {
    const Topology t = chain24();
    const CandidateSet cs = enumerate_candidates(t, Demand{0, 2}, 1, 0);

    const UtilityMatrix profitable = utility_matrix(cs, t, kUnit, Fare{10.0});
    CHECK(global_net_income(profitable, 0) == Approx(4.0).epsilon(1e-12));

    CHECK_THROWS_AS(global_net_income(profitable, 1), std::invalid_argument);

    // A path dearer than the fare operates at a loss.
    const Topology dear = from_json(R"({
        "carriers": [{"id":0,"name":"A"},{"id":1,"name":"B"},{"id":2,"name":"C"}],
        "links": [{"a":0,"b":1,"distance":4.0},{"a":1,"b":2,"distance":8.0}]
    })");
    const CandidateSet dear_cs = enumerate_candidates(dear, Demand{0, 2}, 1, 0);
    const UtilityMatrix lossy = utility_matrix(dear_cs, dear, kUnit, Fare{10.0});
    CHECK(global_net_income(lossy, 0) == Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("income identity holds across generated instances") {
    const Topology t = generate_geometric_topology(9, 31, 3.0);
    const CostModel cm = preset_cost_models(t).intermediate;
    const Fare fare = calibrate_fare(t, cm);
    for (const Demand d : all_demands(t)) {
        const CandidateSet cs = enumerate_candidates(t, d, 5, 0);
        const UtilityMatrix u = utility_matrix(cs, t, cm, fare);
        for (int j = 0; j < cs.size(); ++j) {
            double total = 0.0;
            for (const Elector& e : u.electors) total += e.utility[j];
            const double expect = fare.amount - path_total_cost(t, cm, cs.paths[j]);
            CHECK(total == Approx(expect).epsilon(1e-9));
            CHECK(global_net_income(u, j) == Approx(expect).epsilon(1e-9));
            // No single carrier can pocket more than the whole fare.
            for (const Elector& e : u.electors) CHECK(e.utility[j] < fare.amount);
        }
    }
}

TEST_CASE("efficiency is the percentage of the optimal aggregate") {
    CHECK(efficiency({-3.0}, {4.0}) == Approx(-75.0));
    CHECK(efficiency({2.0}, {4.0}) == Approx(50.0));
    CHECK(efficiency({3.0, 1.0}, {4.0, 4.0}) == Approx(50.0));
    CHECK(efficiency({4.0, 4.0}, {4.0, 4.0}) == Approx(100.0));
    CHECK_THROWS_AS(efficiency({1.0}, {0.0}), std::domain_error);
    CHECK_THROWS_AS(efficiency({1.0}, {-2.0}), std::domain_error);
    CHECK_THROWS_AS(efficiency({1.0}, {1.0, 2.0}), std::invalid_argument);
}
