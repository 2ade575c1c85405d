#pragma once

#include <vector>

#include "pathvote/topology.hpp"

namespace pathvote {

// Loop-free carrier sequence from ingress to egress; consecutive carriers are
// linked in the topology.
struct CandidatePath {
    std::vector<int> carriers;
    int hops() const { return int(carriers.size()) - 1; }
};

// The candidate paths admitted for one demand by the hop-threshold rule:
// all loop-free paths with at most h_min + delta_h hops, where delta_h is the
// smallest threshold >= delta_min admitting at least m_min paths (or the
// saturation threshold when the topology has fewer loop-free paths in total).
// Path order is (hops ascending, lexicographic carrier sequence); the
// position in `paths` is the candidate index used everywhere downstream.
struct CandidateSet {
    Demand demand;
    std::vector<CandidatePath> paths;
    int m_min = 0;
    int delta_min = 0;
    int h_min = 0;
    int delta_h = 0;

    int size() const { return int(paths.size()); }
};

// Which carriers sit on which candidates.
struct Participation {
    std::vector<std::vector<int>> electors_of;    // per candidate j: sorted E_j
    std::vector<std::vector<int>> candidates_of;  // per carrier: sorted candidate indices
    std::vector<int> electorate;                  // sorted carriers on >= 1 candidate
};

// Breadth-first shortest hop count from the demand's ingress to its egress.
int min_hops(const Topology& t, Demand d);

CandidateSet enumerate_candidates(const Topology& t, Demand d, int m_min, int delta_min);

Participation participation(const CandidateSet& cs, int carrier_count);

}  // namespace pathvote
