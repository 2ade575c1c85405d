#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace pathvote {

struct Carrier {
    int index = -1;
    std::string name;
    // Optional plotting coordinates from the topology file; not used by any
    // computation.
    double x = 0.0;
    double y = 0.0;
    bool has_xy = false;
};

struct Link {
    int a = -1;  // a < b after normalization
    int b = -1;
    double distance = 0.0;  // kilometers, > 0
};

// Cost of one interconnection link: c0 + distance / d0.
struct CostModel {
    double c0 = 0.0;
    double d0 = 1.0;
};

struct Demand {
    int ingress = -1;
    int egress = -1;
};

// Immutable multi-carrier interconnection graph. Construction validates all
// invariants (dense unique ids, unique names, no self-loops, no duplicate
// links, positive distances, connectedness); afterwards the object is safe
// for concurrent reads.
class Topology {
public:
    Topology(std::vector<Carrier> carriers, std::vector<Link> links);

    int carrier_count() const { return int(carriers_.size()); }
    const std::vector<Carrier>& carriers() const { return carriers_; }
    const std::vector<Link>& links() const { return links_; }
    const Carrier& carrier(int index) const { return carriers_.at(index); }

    // -1 when no carrier has that name.
    int find_carrier(const std::string& name) const;

    bool has_link(int a, int b) const;
    // Throws std::out_of_range when (a,b) is not a link.
    double link_distance(int a, int b) const;
    // Neighbors of carrier a as (carrier, distance), ascending by carrier.
    const std::vector<std::pair<int, double>>& neighbors(int a) const { return adjacency_.at(a); }

    double max_link_distance() const;

private:
    std::vector<Carrier> carriers_;
    std::vector<Link> links_;
    std::vector<std::vector<std::pair<int, double>>> adjacency_;
    std::vector<double> distance_;  // n*n matrix, -1 where no link
};

// Topology file I/O (JSON; see README for the schema). Parse and validation
// failures throw std::runtime_error naming the offending entity.
Topology load_topology(std::istream& in);
Topology load_topology_file(const std::string& path);
std::string topology_to_json(const Topology& t);
void save_topology_file(const Topology& t, const std::string& path);

double link_cost(const CostModel& cm, double distance);
double link_cost(const Topology& t, const CostModel& cm, int a, int b);

// The three link-cost presets, derived from the longest link distance:
// constant-dominated (1, 100*d_max), purely linear (0, d_max) and
// intermediate (1, d_max/3).
struct CostPresets {
    CostModel constant_dominated;
    CostModel purely_linear;
    CostModel intermediate;
};
CostPresets preset_cost_models(const Topology& t);

// Seeded synthetic instance: n points uniform in a square, shortest pairs
// linked until the average degree reaches avg_degree, then shortest
// cross-component pairs added until connected. Pure function of its inputs.
Topology generate_geometric_topology(int n, std::uint64_t seed, double avg_degree);

// All n*(n-1) ordered (ingress, egress) pairs in lexicographic order.
std::vector<Demand> all_demands(const Topology& t);

}  // namespace pathvote
