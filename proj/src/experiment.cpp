#include "pathvote/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "pathvote/voting.hpp"

namespace pathvote {

std::string ScenarioConfig::label() const {
    return "m" + std::to_string(m_min) + "d" + std::to_string(delta_min) + "-" + cost_name;
}

CostModel cost_model_by_name(const std::string& name, const Topology& t) {
    const CostPresets presets = preset_cost_models(t);
    if (name == "constant") return presets.constant_dominated;
    if (name == "linear") return presets.purely_linear;
    if (name == "intermediate") return presets.intermediate;
    throw std::invalid_argument("unknown cost model '" + name +
                                "' (expected constant, linear or intermediate)");
}

namespace {

void fill_system(SystemRecord& out, const std::vector<double>& incomes, int sincere_winner,
                 Verdict verdict, Verdict tm, Verdict upper,
                 const std::vector<int>& successes, const InsincereOutcomes& insincere) {
    out.sincere_winner = sincere_winner;
    out.sincere_income = incomes[sincere_winner];
    out.verdict = verdict;
    out.tm = tm;
    out.upper = upper;
    out.successful_challengers = successes;
    out.manipulated = insincere.manipulated;
    out.insincere_avg = insincere.average_income;
    out.insincere_worst = insincere.worst_income;
}

}  // namespace

DemandRecord run_demand(const Topology& t, const CostModel& cm, const Fare& fare,
                        const Demand& d, const ScenarioConfig& config) {
    DemandRecord rec;
    rec.demand = d;

    const CandidateSet cs = enumerate_candidates(t, d, config.m_min, config.delta_min);
    rec.num_candidates = cs.size();
    rec.delta_h = cs.delta_h;

    const UtilityMatrix u = utility_matrix(cs, t, cm, fare);
    rec.clamped_notes = count_range_clamps(u);

    std::vector<double> incomes(cs.size());
    for (int j = 0; j < cs.size(); ++j) incomes[j] = global_net_income(u, j);
    rec.optimal_income = *std::max_element(incomes.begin(), incomes.end());
    rec.worst_income = *std::min_element(incomes.begin(), incomes.end());
    rec.mean_income =
        std::accumulate(incomes.begin(), incomes.end(), 0.0) / double(incomes.size());

    const ManipulabilityVerdict r = range_cm(u);
    fill_system(rec.range, incomes, r.sincere_winner, r.status, r.status, r.status,
                r.successful_challengers,
                insincere_outcomes(u, r.successful_challengers, r.sincere_winner));

    const StvManipAnalysis s = stv_manipulability(u, config.max_m);
    fill_system(rec.stv, incomes, s.tm.sincere_winner, s.combined, s.tm.status, s.upper.status,
                s.tm.successful_challengers,
                insincere_outcomes(u, s.tm.successful_challengers, s.tm.sincere_winner));
    return rec;
}

namespace {

struct SystemFold {
    double sincere = 0.0;
    double insincere_avg = 0.0;
    double insincere_worst = 0.0;
    long tm_count = 0;
    long proven_not = 0;

    void add(const SystemRecord& r) {
        sincere += r.sincere_income;
        insincere_avg += r.manipulated ? r.insincere_avg : r.sincere_income;
        insincere_worst += r.manipulated ? r.insincere_worst : r.sincere_income;
        if (r.tm == Verdict::Manipulable) ++tm_count;
        if (r.verdict == Verdict::NotManipulable) ++proven_not;
    }

    SystemMetrics metrics(double optimal_sum, long n) const {
        SystemMetrics m;
        m.sincere_efficiency = efficiency({sincere}, {optimal_sum});
        m.insincere_efficiency_avg = efficiency({insincere_avg}, {optimal_sum});
        m.insincere_efficiency_worst = efficiency({insincere_worst}, {optimal_sum});
        m.tm_rate = 100.0 * double(tm_count) / double(n);
        m.cm_lower = m.tm_rate;
        m.cm_upper = 100.0 * double(n - proven_not) / double(n);
        m.inconclusive_rate = m.cm_upper - m.cm_lower;
        return m;
    }
};

}  // namespace

ScenarioMetrics run_scenario(const Topology& t, const ScenarioConfig& config) {
    ScenarioMetrics sm;
    sm.config = config;

    const Fare fare = calibrate_fare(t, config.cost, config.fare_factor);
    sm.fare = fare.amount;

    const std::vector<Demand> demands = all_demands(t);
    sm.num_demands = int(demands.size());
    sm.demands.resize(demands.size());

    unsigned jobs = config.jobs > 0 ? unsigned(config.jobs) : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, unsigned(demands.size())));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= demands.size()) return;
            try {
                sm.demands[i] = run_demand(t, config.cost, fare, demands[i], config);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(demands.size());
                return;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic fold in demand order, independent of worker scheduling.
    double optimal_sum = 0.0;
    double worst_sum = 0.0;
    double mean_sum = 0.0;
    double candidate_sum = 0.0;
    SystemFold range_fold, stv_fold;
    for (const DemandRecord& rec : sm.demands) {
        optimal_sum += rec.optimal_income;
        worst_sum += rec.worst_income;
        mean_sum += rec.mean_income;
        candidate_sum += double(rec.num_candidates);
        if (rec.clamped_notes > 0) ++sm.clamp_incidents;
        range_fold.add(rec.range);
        stv_fold.add(rec.stv);
    }
    sm.avg_candidates = candidate_sum / double(sm.num_demands);
    sm.random_efficiency = efficiency({mean_sum}, {optimal_sum});
    sm.worst_efficiency = efficiency({worst_sum}, {optimal_sum});
    sm.range = range_fold.metrics(optimal_sum, sm.num_demands);
    sm.stv = stv_fold.metrics(optimal_sum, sm.num_demands);
    return sm;
}

std::vector<ScenarioConfig> sweep_grid(const Topology& t, int jobs) {
    std::vector<ScenarioConfig> grid;
    const std::pair<int, int> limits[] = {{5, 0}, {10, 1}};
    const char* models[] = {"constant", "linear", "intermediate"};
    for (const auto& [m_min, delta_min] : limits) {
        for (const char* name : models) {
            ScenarioConfig cfg;
            cfg.m_min = m_min;
            cfg.delta_min = delta_min;
            cfg.cost_name = name;
            cfg.cost = cost_model_by_name(name, t);
            cfg.jobs = jobs;
            grid.push_back(cfg);
        }
    }
    return grid;
}

std::vector<ScenarioMetrics> sweep(const Topology& t, int jobs) {
    std::vector<ScenarioMetrics> out;
    for (const ScenarioConfig& cfg : sweep_grid(t, jobs)) out.push_back(run_scenario(t, cfg));
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Manipulable: return "manipulable";
        case Verdict::NotManipulable: return "not_manipulable";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string join_indices(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(xs[i]);
    }
    return out;
}

void summary_row(std::ostream& os, const ScenarioMetrics& sm, const char* system,
                 const SystemMetrics& m) {
    const ScenarioConfig& c = sm.config;
    os << c.label() << ',' << c.m_min << ',' << c.delta_min << ',' << c.cost_name << ','
       << fmt(c.cost.c0) << ',' << fmt(c.cost.d0) << ',' << fmt(sm.fare) << ',' << sm.num_demands
       << ',' << fmt(sm.avg_candidates) << ',' << sm.clamp_incidents << ',' << system << ','
       << fmt(m.sincere_efficiency) << ',' << fmt(m.tm_rate) << ',' << fmt(m.cm_lower) << ','
       << fmt(m.cm_upper) << ',' << fmt(m.inconclusive_rate) << ','
       << fmt(m.insincere_efficiency_avg) << ',' << fmt(m.insincere_efficiency_worst) << ','
       << fmt(sm.random_efficiency) << ',' << fmt(sm.worst_efficiency) << '\n';
}

void detail_row(std::ostream& os, const ScenarioMetrics& sm, const DemandRecord& rec,
                const char* system, const SystemRecord& r) {
    os << sm.config.label() << ',' << system << ',' << rec.demand.ingress << ','
       << rec.demand.egress << ',' << rec.num_candidates << ',' << rec.delta_h << ','
       << r.sincere_winner << ',' << verdict_name(r.verdict) << ',' << verdict_name(r.tm) << ','
       << verdict_name(r.upper) << ',' << join_indices(r.successful_challengers) << ','
       << fmt(r.sincere_income) << ',' << fmt(rec.optimal_income) << ',' << fmt(r.insincere_avg)
       << ',' << fmt(r.insincere_worst) << ',' << fmt(rec.mean_income) << ','
       << fmt(rec.worst_income) << ',' << fmt(100.0 * (r.sincere_income / rec.optimal_income))
       << ',' << rec.clamped_notes << '\n';
}

nlohmann::json system_json(const SystemMetrics& m) {
    return {{"sincere_efficiency", m.sincere_efficiency},
            {"tm_rate", m.tm_rate},
            {"cm_lower", m.cm_lower},
            {"cm_upper", m.cm_upper},
            {"inconclusive_rate", m.inconclusive_rate},
            {"insincere_efficiency_avg", m.insincere_efficiency_avg},
            {"insincere_efficiency_worst", m.insincere_efficiency_worst}};
}

nlohmann::json record_json(const DemandRecord& rec) {
    auto side = [](const SystemRecord& r) {
        return nlohmann::json{{"sincere_winner", r.sincere_winner},
                              {"sincere_income", r.sincere_income},
                              {"verdict", verdict_name(r.verdict)},
                              {"tm", verdict_name(r.tm)},
                              {"upper", verdict_name(r.upper)},
                              {"successful_challengers", r.successful_challengers},
                              {"insincere_avg", r.insincere_avg},
                              {"insincere_worst", r.insincere_worst}};
    };
    return {{"ingress", rec.demand.ingress},
            {"egress", rec.demand.egress},
            {"num_candidates", rec.num_candidates},
            {"delta_h", rec.delta_h},
            {"optimal_income", rec.optimal_income},
            {"mean_income", rec.mean_income},
            {"worst_income", rec.worst_income},
            {"clamped_notes", rec.clamped_notes},
            {"range", side(rec.range)},
            {"stv", side(rec.stv)}};
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios) {
    os << "scenario,m_min,delta_min,cost_model,c0,d0,fare,demands,avg_candidates,"
          "clamp_incidents,system,sincere_efficiency,tm_rate,cm_lower,cm_upper,"
          "inconclusive_rate,insincere_efficiency_avg,insincere_efficiency_worst,"
          "random_efficiency,worst_efficiency\n";
    for (const ScenarioMetrics& sm : scenarios) {
        summary_row(os, sm, "range", sm.range);
        summary_row(os, sm, "stv", sm.stv);
    }
}

void write_details_csv(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios) {
    os << "scenario,system,ingress,egress,num_candidates,delta_h,sincere_winner,verdict,tm,"
          "upper,successful_challengers,sincere_income,optimal_income,insincere_avg_income,"
          "insincere_worst_income,mean_income,worst_income,sincere_pct,clamped_notes\n";
    for (const ScenarioMetrics& sm : scenarios) {
        for (const DemandRecord& rec : sm.demands) {
            detail_row(os, sm, rec, "range", rec.range);
            detail_row(os, sm, rec, "stv", rec.stv);
        }
    }
}

void write_report_json(std::ostream& os, const std::vector<ScenarioMetrics>& scenarios) {
    nlohmann::json doc;
    doc["scenarios"] = nlohmann::json::array();
    for (const ScenarioMetrics& sm : scenarios) {
        nlohmann::json entry = {{"label", sm.config.label()},
                                {"m_min", sm.config.m_min},
                                {"delta_min", sm.config.delta_min},
                                {"cost_model", sm.config.cost_name},
                                {"c0", sm.config.cost.c0},
                                {"d0", sm.config.cost.d0},
                                {"fare", sm.fare},
                                {"demands", sm.num_demands},
                                {"avg_candidates", sm.avg_candidates},
                                {"clamp_incidents", sm.clamp_incidents},
                                {"random_efficiency", sm.random_efficiency},
                                {"worst_efficiency", sm.worst_efficiency},
                                {"range", system_json(sm.range)},
                                {"stv", system_json(sm.stv)}};
        entry["records"] = nlohmann::json::array();
        for (const DemandRecord& rec : sm.demands) entry["records"].push_back(record_json(rec));
        doc["scenarios"].push_back(std::move(entry));
    }
    os << doc.dump(2) << '\n';
}

}  // namespace pathvote
