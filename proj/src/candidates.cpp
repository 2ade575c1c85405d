#include "pathvote/candidates.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace pathvote {

namespace {

// Hop distances from `from` to every carrier.
std::vector<int> bfs_hops(const Topology& t, int from) {
    std::vector<int> dist(t.carrier_count(), -1);
    std::deque<int> queue{from};
    dist[from] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [v, d] : t.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// Hop distances from the egress to every carrier, walking only through
// unvisited carriers. -1 where the egress cannot be reached that way.
std::vector<int> residual_hops(const Topology& t, int egress, const std::vector<char>& visited) {
    std::vector<int> dist(t.carrier_count(), -1);
    std::deque<int> queue{egress};
    dist[egress] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [v, d] : t.neighbors(u)) {
            if (dist[v] < 0 && !visited[v]) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

// All simple paths from the demand's ingress to its egress with at most
// `max_hops` hops. DFS over neighbors in ascending carrier order; each
// expansion is pruned by the residual hop distance to the egress (avoiding
// the carriers already on the prefix), so only prefixes that genuinely
// extend to an admissible path are walked and the cost stays proportional
// to the output size. Paths come out sorted lexicographically within the
// depth-first traversal.
void collect_paths(const Topology& t, Demand d, int max_hops, std::vector<CandidatePath>& out) {
    std::vector<int> current{d.ingress};
    std::vector<char> visited(t.carrier_count(), 0);
    visited[d.ingress] = 1;

    // Explicit stack of (node, next-neighbor position) to keep deep
    // enumerations off the call stack; `residual` is stack-parallel. An
    // entry's residual distances stay valid while it is expanded because the
    // visited set is restored between its children.
    std::vector<std::pair<int, std::size_t>> stack{{d.ingress, 0}};
    std::vector<std::vector<int>> residual{residual_hops(t, d.egress, visited)};
    while (!stack.empty()) {
        auto& [u, pos] = stack.back();
        const auto& nbrs = t.neighbors(u);
        const std::vector<int>& to_egress = residual.back();
        bool advanced = false;
        while (pos < nbrs.size()) {
            const int v = nbrs[pos++].first;
            if (visited[v]) continue;
            const int used = int(current.size());  // hops so far == used-1 after push
            if (to_egress[v] < 0 || used + to_egress[v] > max_hops) continue;
            if (v == d.egress) {
                CandidatePath p;
                p.carriers = current;
                p.carriers.push_back(v);
                out.push_back(std::move(p));
                continue;
            }
            visited[v] = 1;
            current.push_back(v);
            stack.emplace_back(v, 0);
            residual.push_back(residual_hops(t, d.egress, visited));
            advanced = true;
            break;
        }
        if (!advanced) {
            stack.pop_back();
            residual.pop_back();
            if (!stack.empty()) {
                visited[current.back()] = 0;
                current.pop_back();
            }
        }
    }
}

}  // namespace

int min_hops(const Topology& t, Demand d) {
    const int n = t.carrier_count();
    if (d.ingress < 0 || d.ingress >= n || d.egress < 0 || d.egress >= n)
        throw std::invalid_argument("min_hops: demand endpoint out of range");
    if (d.ingress == d.egress) throw std::invalid_argument("min_hops: ingress equals egress");
    return bfs_hops(t, d.ingress)[d.egress];
}

CandidateSet enumerate_candidates(const Topology& t, Demand d, int m_min, int delta_min) {
    if (m_min < 1) throw std::invalid_argument("enumerate_candidates: m_min must be >= 1");
    if (delta_min < 0) throw std::invalid_argument("enumerate_candidates: delta_min must be >= 0");

    CandidateSet cs;
    cs.demand = d;
    cs.m_min = m_min;
    cs.delta_min = delta_min;
    cs.h_min = min_hops(t, d);

    const int hop_ceiling = t.carrier_count() - 1;  // no simple path is longer

    int delta = delta_min;
    std::vector<CandidatePath> paths;
    for (;; ++delta) {
        const int limit = std::min(cs.h_min + delta, hop_ceiling);
        paths.clear();
        collect_paths(t, d, limit, paths);
        if (int(paths.size()) >= m_min) {
            cs.delta_h = delta;
            break;
        }
        if (limit == hop_ceiling) {
            // Fewer loop-free paths than m_min exist at all: keep them all.
            int longest = cs.h_min;
            for (const auto& p : paths) longest = std::max(longest, p.hops());
            cs.delta_h = std::max(delta_min, longest - cs.h_min);
            break;
        }
    }

    std::sort(paths.begin(), paths.end(), [](const CandidatePath& a, const CandidatePath& b) {
        if (a.hops() != b.hops()) return a.hops() < b.hops();
        return a.carriers < b.carriers;
    });
    cs.paths = std::move(paths);
    return cs;
}

Participation participation(const CandidateSet& cs, int carrier_count) {
    Participation p;
    p.electors_of.resize(cs.size());
    p.candidates_of.resize(carrier_count);
    for (int j = 0; j < cs.size(); ++j) {
        p.electors_of[j] = cs.paths[j].carriers;
        std::sort(p.electors_of[j].begin(), p.electors_of[j].end());
        for (const int carrier : cs.paths[j].carriers) p.candidates_of[carrier].push_back(j);
    }
    for (int i = 0; i < carrier_count; ++i)
        if (!p.candidates_of[i].empty()) p.electorate.push_back(i);
    return p;
}

}  // namespace pathvote
