#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathvote/topology.hpp"

using namespace pathvote;

namespace {

Topology from_json(const std::string& text) {
    std::istringstream in(text);
    return load_topology(in);
}

// Independent connectivity check used as the test-side oracle.
bool connected_bfs(const Topology& t) {
    std::vector<char> seen(t.carrier_count(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (const auto& [v, dist] : t.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                q.push(v);
            }
        }
    }
    return reached == t.carrier_count();
}

}  // namespace

TEST_CASE("loads a two-carrier topology") {
    const Topology t = from_json(R"({
        "carriers": [{"id": 0, "name": "alpha"}, {"id": 1, "name": "beta"}],
        "links": [{"a": 0, "b": 1, "distance": 5.0}]
    })");
    CHECK(t.carrier_count() == 2);
    CHECK(t.links().size() == 1);
    CHECK(t.carrier(0).name == "alpha");
    CHECK(t.find_carrier("beta") == 1);
    CHECK(t.find_carrier("gamma") == -1);
    CHECK(t.has_link(0, 1));
    CHECK(t.has_link(1, 0));
    CHECK(t.link_distance(0, 1) == doctest::Approx(5.0));
    CHECK(t.link_distance(1, 0) == doctest::Approx(5.0));
    CHECK(t.max_link_distance() == doctest::Approx(5.0));
    CHECK_THROWS_AS(t.link_distance(0, 0), std::out_of_range);
}

TEST_CASE("validation rejects malformed topologies") {
    // Self-loop.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"}],
        "links": [{"a":0,"b":0,"distance":1.0},{"a":0,"b":1,"distance":1.0}]
    })"), std::runtime_error);
    // Duplicate link.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"}],
        "links": [{"a":0,"b":1,"distance":1.0},{"a":1,"b":0,"distance":2.0}]
    })"), std::runtime_error);
    // Non-positive distance.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"}],
        "links": [{"a":0,"b":1,"distance":0.0}]
    })"), std::runtime_error);
    // Disconnected graph.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"},
                     {"id":2,"name":"c"},{"id":3,"name":"d"}],
        "links": [{"a":0,"b":1,"distance":1.0},{"a":2,"b":3,"distance":1.0}]
    })"), std::runtime_error);
    // Duplicate carrier name.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"a"}],
        "links": [{"a":0,"b":1,"distance":1.0}]
    })"), std::runtime_error);
    // Link endpoint out of range.
    CHECK_THROWS_AS(from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"}],
        "links": [{"a":0,"b":2,"distance":1.0}]
    })"), std::runtime_error);
}

TEST_CASE("json round trip preserves the graph") {
    const Topology t = generate_geometric_topology(10, 7, 3.0);
    const Topology back = from_json(topology_to_json(t));
    REQUIRE(back.carrier_count() == t.carrier_count());
    REQUIRE(back.links().size() == t.links().size());
    for (size_t i = 0; i < t.links().size(); ++i) {
        CHECK(back.links()[i].a == t.links()[i].a);
        CHECK(back.links()[i].b == t.links()[i].b);
        CHECK(back.links()[i].distance == doctest::Approx(t.links()[i].distance).epsilon(1e-12));
    }
    for (int i = 0; i < t.carrier_count(); ++i) CHECK(back.carrier(i).name == t.carrier(i).name);
}

TEST_CASE("file save and load round trip") {
    const Topology t = generate_geometric_topology(6, 3, 2.5);
    const std::string path = "test_topology_roundtrip.json";
    save_topology_file(t, path);
    const Topology back = load_topology_file(path);
    CHECK(back.carrier_count() == t.carrier_count());
    CHECK(back.links().size() == t.links().size());
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_topology_file("does_not_exist_anywhere.json"), std::runtime_error);
}

TEST_CASE("link cost formula") {
    CHECK(link_cost(CostModel{0.0, 100.0}, 100.0) == doctest::Approx(1.0));
    CHECK(link_cost(CostModel{1.0, 300.0}, 600.0) == doctest::Approx(3.0));
}

TEST_CASE("link cost is symmetric on a loaded topology") {
    const Topology t = generate_geometric_topology(9, 11, 3.0);
    const CostModel cm{1.0, 500.0};
    for (const Link& l : t.links()) {
        CHECK(link_cost(t, cm, l.a, l.b) == doctest::Approx(link_cost(t, cm, l.b, l.a)));
    }
}

TEST_CASE("cost presets derive from the longest link") {
    const Topology t = from_json(R"({
        "carriers": [{"id":0,"name":"a"},{"id":1,"name":"b"},{"id":2,"name":"c"}],
        "links": [{"a":0,"b":1,"distance":3000.0},{"a":1,"b":2,"distance":800.0}]
    })");
    const CostPresets p = preset_cost_models(t);
    CHECK(p.purely_linear.c0 == doctest::Approx(0.0));
    CHECK(p.purely_linear.d0 == doctest::Approx(3000.0));
    CHECK(p.intermediate.c0 == doctest::Approx(1.0));
    CHECK(p.intermediate.d0 == doctest::Approx(1000.0));
    CHECK(p.constant_dominated.c0 == doctest::Approx(1.0));
    CHECK(p.constant_dominated.d0 == doctest::Approx(300000.0));
}

TEST_CASE("constant-dominated preset keeps every link cost in (1, 1.01]") {
    const Topology t = generate_geometric_topology(20, 5, 4.0);
    const CostModel cm = preset_cost_models(t).constant_dominated;
    for (const Link& l : t.links()) {
        const double c = link_cost(cm, l.distance);
        CHECK(c > 1.0);
        CHECK(c <= 1.01);
    }
}

TEST_CASE("generator is deterministic and respects its contract") {
    const Topology a = generate_geometric_topology(38, 1, 4.0);
    const Topology b = generate_geometric_topology(38, 1, 4.0);
    CHECK(topology_to_json(a) == topology_to_json(b));

    CHECK(connected_bfs(a));
    const double avg_degree = 2.0 * double(a.links().size()) / a.carrier_count();
    CHECK(avg_degree >= 3.0);
    CHECK(avg_degree <= 5.0);
    for (const Link& l : a.links()) CHECK(l.distance > 0.0);

    const Topology different = generate_geometric_topology(38, 2, 4.0);
    CHECK(topology_to_json(a) != topology_to_json(different));
}

TEST_CASE("two-node generation is forced to the single link") {
    const Topology t = generate_geometric_topology(2, 99, 2.0);
    REQUIRE(t.carrier_count() == 2);
    REQUIRE(t.links().size() == 1);
    CHECK(t.has_link(0, 1));
}

TEST_CASE("all_demands enumerates ordered pairs lexicographically") {
    const Topology t2 = generate_geometric_topology(2, 1, 2.0);
    const auto d2 = all_demands(t2);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0].ingress == 0);
    CHECK(d2[0].egress == 1);
    CHECK(d2[1].ingress == 1);
    CHECK(d2[1].egress == 0);

    const Topology t3 = generate_geometric_topology(3, 1, 2.0);
    CHECK(all_demands(t3).size() == 6);

    const Topology t38 = generate_geometric_topology(38, 1, 4.0);
    const auto d38 = all_demands(t38);
    CHECK(d38.size() == 1406);  // 38 * 37
    for (size_t i = 1; i < d38.size(); ++i) {
        const bool ordered = d38[i - 1].ingress < d38[i].ingress ||
                             (d38[i - 1].ingress == d38[i].ingress &&
                              d38[i - 1].egress < d38[i].egress);
        CHECK(ordered);
    }
}
