#pragma once

// Scenario runner: evaluates every demand of a topology under one or more
// (path-limit, cost-model) configurations, aggregating election efficiency
// and manipulability rates for both voting systems.

#include <iosfwd>
#include <string>
#include <vector>

#include "pathvote/candidates.hpp"
#include "pathvote/economics.hpp"
#include "pathvote/manipulation.hpp"
#include "pathvote/topology.hpp"

namespace pathvote {

struct ScenarioConfig {
    int m_min = 5;
    int delta_min = 0;
    std::string cost_name = "intermediate";  // constant | linear | intermediate
    CostModel cost{1.0, 1.0};
    double fare_factor = 1.4;
    int max_m = 25;  // skip the exhaustive STV upper bound above this
    int jobs = 0;    // worker threads; 0 = all hardware threads

    // Stable identifier used in report rows, e.g. "m5d0-intermediate".
    std::string label() const;
};

// Builds the named preset ("constant", "linear", "intermediate") for a
// topology's longest link.
CostModel cost_model_by_name(const std::string& name, const Topology& t);

// Election + manipulability results for one voting system on one demand.
struct SystemRecord {
    int sincere_winner = 0;
    double sincere_income = 0.0;
    Verdict verdict = Verdict::NotManipulable;  // exact for range, combined for STV
    Verdict tm = Verdict::NotManipulable;
    Verdict upper = Verdict::NotManipulable;
    std::vector<int> successful_challengers;  // constructive (trivial-strategy) wins
    bool manipulated = false;
    double insincere_avg = 0.0;    // expected income, uniform over successes
    double insincere_worst = 0.0;  // minimum income over successes
};

struct DemandRecord {
    Demand demand{0, 0};
    int num_candidates = 0;
    int delta_h = 0;
    double optimal_income = 0.0;
    double worst_income = 0.0;  // worst-candidate baseline
    double mean_income = 0.0;   // random-candidate baseline
    int clamped_notes = 0;      // range notes truncated to ±fare
    SystemRecord range;
    SystemRecord stv;
};

struct SystemMetrics {
    double sincere_efficiency = 0.0;
    double tm_rate = 0.0;
    double cm_lower = 0.0;
    double cm_upper = 0.0;
    double inconclusive_rate = 0.0;
    double insincere_efficiency_avg = 0.0;
    double insincere_efficiency_worst = 0.0;
};

struct ScenarioMetrics {
    ScenarioConfig config;
    double fare = 0.0;
    int num_demands = 0;
    double avg_candidates = 0.0;
    long clamp_incidents = 0;       // demands with at least one clamped note
    double random_efficiency = 0.0; // random-candidate baseline
    double worst_efficiency = 0.0;  // worst-candidate baseline
    SystemMetrics range;
    SystemMetrics stv;
    std::vector<DemandRecord> demands;
};

// Evaluates a single demand: candidate set, utilities, sincere winners,
// manipulability verdicts, and the income statistics both aggregate views
// are folded from.
DemandRecord run_demand(const Topology& t, const CostModel& cm, const Fare& fare,
                        const Demand& d, const ScenarioConfig& config);

// Runs every ordered demand of the topology under one configuration.
// Demands are processed by a worker pool but folded in demand order, so the
// result is independent of scheduling.
ScenarioMetrics run_scenario(const Topology& t, const ScenarioConfig& config);

// The full 2x3 grid: path limits {(5,0), (10,1)} x cost presets
// {constant, linear, intermediate}.
std::vector<ScenarioConfig> sweep_grid(const Topology& t, int jobs = 0);
std::vector<ScenarioMetrics> sweep(const Topology& t, int jobs = 0);

// Report writers. Formatting is fixed so identical runs emit identical bytes.
void write_summary_csv(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios);
void write_details_csv(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios);
void write_report_json(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios);

std::string verdict_name(Verdict v);

}  // namespace pathvote
