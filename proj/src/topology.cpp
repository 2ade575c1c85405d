#include "pathvote/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace pathvote {

namespace {

void check_connected(int n, const std::vector<std::vector<std::pair<int, double>>>& adjacency) {
    if (n == 0) throw std::runtime_error("topology: no carriers");
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [v, d] : adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
        }
    }
    if (reached != n) {
        for (int i = 0; i < n; ++i)
            if (!seen[i])
                throw std::runtime_error("topology: disconnected graph (carrier " +
                                         std::to_string(i) + " unreachable from carrier 0)");
    }
}

}  // namespace

Topology::Topology(std::vector<Carrier> carriers, std::vector<Link> links)
    : carriers_(std::move(carriers)), links_(std::move(links)) {
    const int n = int(carriers_.size());
    if (n < 2) throw std::runtime_error("topology: needs at least 2 carriers");

    std::unordered_set<std::string> names;
    for (int i = 0; i < n; ++i) {
        if (carriers_[i].index != i)
            throw std::runtime_error("topology: carrier ids must be dense 0..n-1, got id " +
                                     std::to_string(carriers_[i].index) + " at position " +
                                     std::to_string(i));
        if (carriers_[i].name.empty())
            throw std::runtime_error("topology: carrier " + std::to_string(i) + " has an empty name");
        if (!names.insert(carriers_[i].name).second)
            throw std::runtime_error("topology: duplicate carrier name \"" + carriers_[i].name + "\"");
    }

    adjacency_.assign(n, {});
    distance_.assign(std::size_t(n) * n, -1.0);
    for (auto& link : links_) {
        if (link.a > link.b) std::swap(link.a, link.b);
        if (link.a < 0 || link.b >= n)
            throw std::runtime_error("topology: link (" + std::to_string(link.a) + "," +
                                     std::to_string(link.b) + ") references an unknown carrier");
        if (link.a == link.b)
            throw std::runtime_error("topology: self-loop on carrier " + std::to_string(link.a));
        if (!(link.distance > 0.0))
            throw std::runtime_error("topology: non-positive distance on link (" +
                                     std::to_string(link.a) + "," + std::to_string(link.b) + ")");
        if (distance_[std::size_t(link.a) * n + link.b] >= 0.0)
            throw std::runtime_error("topology: duplicate link (" + std::to_string(link.a) + "," +
                                     std::to_string(link.b) + ")");
        distance_[std::size_t(link.a) * n + link.b] = link.distance;
        distance_[std::size_t(link.b) * n + link.a] = link.distance;
        adjacency_[link.a].emplace_back(link.b, link.distance);
        adjacency_[link.b].emplace_back(link.a, link.distance);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    check_connected(n, adjacency_);
}

int Topology::find_carrier(const std::string& name) const {
    for (const auto& c : carriers_)
        if (c.name == name) return c.index;
    return -1;
}

bool Topology::has_link(int a, int b) const {
    const int n = carrier_count();
    if (a < 0 || b < 0 || a >= n || b >= n) return false;
    return distance_[std::size_t(a) * n + b] >= 0.0;
}

double Topology::link_distance(int a, int b) const {
    if (!has_link(a, b))
        throw std::out_of_range("topology: no link (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
    return distance_[std::size_t(a) * carrier_count() + b];
}

double Topology::max_link_distance() const {
    double d = 0.0;
    for (const auto& link : links_) d = std::max(d, link.distance);
    return d;
}

Topology load_topology(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("topology: parse error: ") + e.what());
    }
    if (!doc.contains("carriers") || !doc["carriers"].is_array())
        throw std::runtime_error("topology: missing \"carriers\" array");
    if (!doc.contains("links") || !doc["links"].is_array())
        throw std::runtime_error("topology: missing \"links\" array");

    std::vector<Carrier> carriers;
    for (const auto& jc : doc["carriers"]) {
        Carrier c;
        try {
            c.index = jc.at("id").get<int>();
            c.name = jc.at("name").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(std::string("topology: bad carrier entry: ") + e.what());
        }
        if (jc.contains("x") && jc.contains("y")) {
            c.x = jc["x"].get<double>();
            c.y = jc["y"].get<double>();
            c.has_xy = true;
        }
        carriers.push_back(std::move(c));
    }
    // Ids may arrive in any order; the constructor requires dense positions.
    std::sort(carriers.begin(), carriers.end(),
              [](const Carrier& a, const Carrier& b) { return a.index < b.index; });

    std::vector<Link> links;
    for (const auto& jl : doc["links"]) {
        Link l;
        try {
            l.a = jl.at("a").get<int>();
            l.b = jl.at("b").get<int>();
            l.distance = jl.at("distance").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error(std::string("topology: bad link entry: ") + e.what());
        }
        links.push_back(l);
    }
    return Topology(std::move(carriers), std::move(links));
}

Topology load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("topology: cannot open " + path);
    return load_topology(in);
}

std::string topology_to_json(const Topology& t) {
    nlohmann::json doc;
    doc["carriers"] = nlohmann::json::array();
    for (const auto& c : t.carriers()) {
        nlohmann::json jc{{"id", c.index}, {"name", c.name}};
        if (c.has_xy) {
            jc["x"] = c.x;
            jc["y"] = c.y;
        }
        doc["carriers"].push_back(jc);
    }
    doc["links"] = nlohmann::json::array();
    for (const auto& l : t.links())
        doc["links"].push_back({{"a", l.a}, {"b", l.b}, {"distance", l.distance}});
    return doc.dump(2) + "\n";
}

void save_topology_file(const Topology& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("topology: cannot write " + path);
    out << topology_to_json(t);
}

double link_cost(const CostModel& cm, double distance) {
    return cm.c0 + distance / cm.d0;
}

double link_cost(const Topology& t, const CostModel& cm, int a, int b) {
    return link_cost(cm, t.link_distance(a, b));
}

CostPresets preset_cost_models(const Topology& t) {
    if (t.links().empty()) throw std::runtime_error("topology: no links, cannot derive presets");
    const double d_max = t.max_link_distance();
    return CostPresets{
        .constant_dominated = {1.0, 100.0 * d_max},
        .purely_linear = {0.0, d_max},
        .intermediate = {1.0, d_max / 3.0},
    };
}

Topology generate_geometric_topology(int n, std::uint64_t seed, double avg_degree) {
    if (n < 2) throw std::invalid_argument("generate_geometric_topology: n must be >= 2");
    if (avg_degree < 2.0) throw std::invalid_argument("generate_geometric_topology: avg_degree must be >= 2");

    // Points drawn from the raw generator bits; std::uniform_real_distribution
    // is implementation-defined and would break cross-platform determinism.
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

    constexpr double side_km = 3000.0;
    std::vector<double> px(n), py(n);
    for (int i = 0; i < n; ++i) {
        px[i] = unit() * side_km;
        py[i] = unit() * side_km;
    }

    struct Pair {
        double d;
        int a, b;
        bool operator<(const Pair& o) const { return std::tie(d, a, b) < std::tie(o.d, o.a, o.b); }
    };
    std::vector<Pair> pairs;
    pairs.reserve(std::size_t(n) * (n - 1) / 2);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            pairs.push_back({std::hypot(px[a] - px[b], py[a] - py[b]), a, b});
    std::sort(pairs.begin(), pairs.end());

    const std::size_t target_links =
        std::min(pairs.size(), std::size_t(std::ceil(avg_degree * n / 2.0)));
    std::vector<Link> links;
    std::set<std::pair<int, int>> used;
    for (std::size_t k = 0; k < target_links; ++k) {
        links.push_back({pairs[k].a, pairs[k].b, pairs[k].d});
        used.insert({pairs[k].a, pairs[k].b});
    }

    // Union-find over the shortest remaining pairs until one component.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = n;
    for (const auto& l : links) {
        const int ra = find(l.a), rb = find(l.b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    for (const auto& p : pairs) {
        if (components == 1) break;
        if (used.count({p.a, p.b})) continue;
        const int ra = find(p.a), rb = find(p.b);
        if (ra == rb) continue;
        parent[ra] = rb;
        --components;
        links.push_back({p.a, p.b, p.d});
        used.insert({p.a, p.b});
    }

    std::vector<Carrier> carriers(n);
    for (int i = 0; i < n; ++i) {
        carriers[i].index = i;
        carriers[i].name = "node" + std::to_string(i);
        carriers[i].x = px[i];
        carriers[i].y = py[i];
        carriers[i].has_xy = true;
    }
    return Topology(std::move(carriers), std::move(links));
}

std::vector<Demand> all_demands(const Topology& t) {
    const int n = t.carrier_count();
    std::vector<Demand> demands;
    demands.reserve(std::size_t(n) * (n - 1));
    for (int i = 0; i < n; ++i)
        for (int e = 0; e < n; ++e)
            if (i != e) demands.push_back({i, e});
    return demands;
}

}  // namespace pathvote
