// pathvote: elections over interconnection paths.
//
// Subcommands:
//   gen-topology  write a seeded synthetic topology file
//   paths         list the candidate paths of one demand
//   economics     fare, costs and incomes for one demand
//   vote          run the sincere election(s) for one demand
//   manipulate    manipulability verdict for one demand
//   scenario      one full-topology scenario (all demands)
//   sweep         the 2x3 configuration grid, with CSV/JSON reports

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathvote/candidates.hpp"
#include "pathvote/economics.hpp"
#include "pathvote/experiment.hpp"
#include "pathvote/manipulation.hpp"
#include "pathvote/topology.hpp"
#include "pathvote/voting.hpp"

namespace pv = pathvote;

namespace {

struct Options {
    std::string topology_path;
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    int gen_n = 0;
    std::uint64_t gen_seed = 1;
    double gen_degree = 4.5;

    std::string ingress;
    std::string egress;
    int m_min = 5;
    int delta_min = 0;
    std::string cost_name = "intermediate";
    double fare_factor = 1.4;
    int max_m = 25;
    std::string system = "both";  // range | stv | both
    bool show_matrix = false;
};

// Keys a --config file may provide; a flag given on the command line wins.
void apply_config(const CLI::App& cmd, Options& o) {
    if (o.config_path.empty()) return;
    std::ifstream in(o.config_path);
    if (!in) throw std::runtime_error("cannot open config file '" + o.config_path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("config file '" + o.config_path + "': " + e.what());
    }
    auto take = [&](const char* flag, const char* key, auto& slot) {
        const CLI::Option* opt = cmd.get_option_no_throw(flag);
        if (opt != nullptr && opt->count() > 0) return;  // explicit flag wins
        if (j.contains(key)) j.at(key).get_to(slot);
    };
    take("--topology", "topology", o.topology_path);
    take("--out", "out", o.out_dir);
    take("--jobs", "jobs", o.jobs);
    take("--gen-n", "gen_n", o.gen_n);
    take("--gen-seed", "gen_seed", o.gen_seed);
    take("--gen-degree", "gen_degree", o.gen_degree);
    take("--m-min", "m_min", o.m_min);
    take("--delta-min", "delta_min", o.delta_min);
    take("--cost-model", "cost_model", o.cost_name);
    take("--fare-factor", "fare_factor", o.fare_factor);
    take("--max-m", "max_m", o.max_m);
    take("--system", "system", o.system);
}

// Exactly one topology source: a file or generator parameters.
pv::Topology resolve_topology(const Options& o) {
    const bool from_file = !o.topology_path.empty();
    const bool from_gen = o.gen_n > 0;
    if (from_file == from_gen)
        throw std::runtime_error("exactly one topology source required: --topology FILE or "
                                 "--gen-n N [--gen-seed S --gen-degree D]");
    if (from_file) return pv::load_topology_file(o.topology_path);
    return pv::generate_geometric_topology(o.gen_n, o.gen_seed, o.gen_degree);
}

int parse_carrier(const pv::Topology& t, const std::string& text, const char* what) {
    if (!text.empty() && std::isdigit(static_cast<unsigned char>(text[0]))) {
        const int index = std::stoi(text);
        if (index < 0 || index >= t.carrier_count())
            throw std::runtime_error(std::string(what) + " index out of range: " + text);
        return index;
    }
    const int index = t.find_carrier(text);
    if (index < 0) throw std::runtime_error(std::string(what) + ": no carrier named '" + text + "'");
    return index;
}

pv::Demand resolve_demand(const pv::Topology& t, const Options& o) {
    if (o.ingress.empty() || o.egress.empty())
        throw std::runtime_error("--ingress and --egress are required");
    const pv::Demand d{parse_carrier(t, o.ingress, "--ingress"),
                       parse_carrier(t, o.egress, "--egress")};
    if (d.ingress == d.egress) throw std::runtime_error("ingress and egress must differ");
    return d;
}

std::string path_names(const pv::Topology& t, const pv::CandidatePath& p) {
    std::string out;
    for (std::size_t i = 0; i < p.carriers.size(); ++i) {
        if (i) out += '>';
        out += t.carrier(p.carriers[i]).name;
    }
    return out;
}

pv::ScenarioConfig scenario_config(const pv::Topology& t, const Options& o) {
    pv::ScenarioConfig cfg;
    cfg.m_min = o.m_min;
    cfg.delta_min = o.delta_min;
    cfg.cost_name = o.cost_name;
    cfg.cost = pv::cost_model_by_name(o.cost_name, t);
    cfg.fare_factor = o.fare_factor;
    cfg.max_m = o.max_m;
    cfg.jobs = o.jobs;
    return cfg;
}

void print_metrics_table(const std::vector<pv::ScenarioMetrics>& scenarios) {
    std::cout << std::left << std::setw(22) << "scenario" << std::setw(7) << "system"
              << std::right << std::setw(9) << "sinc%" << std::setw(8) << "tm%" << std::setw(8)
              << "cm_lo%" << std::setw(8) << "cm_hi%" << std::setw(8) << "inc%" << std::setw(10)
              << "ins_avg%" << std::setw(10) << "ins_wst%" << '\n';
    auto row = [](const pv::ScenarioMetrics& sm, const char* system,
                  const pv::SystemMetrics& m) {
        std::cout << std::left << std::setw(22) << sm.config.label() << std::setw(7) << system
                  << std::right << std::fixed << std::setprecision(2) << std::setw(9)
                  << m.sincere_efficiency << std::setw(8) << m.tm_rate << std::setw(8)
                  << m.cm_lower << std::setw(8) << m.cm_upper << std::setw(8)
                  << m.inconclusive_rate << std::setw(10) << m.insincere_efficiency_avg
                  << std::setw(10) << m.insincere_efficiency_worst << '\n';
        std::cout.unsetf(std::ios::fixed);
        std::cout << std::setprecision(6);
    };
    for (const auto& sm : scenarios) {
        row(sm, "range", sm.range);
        row(sm, "stv", sm.stv);
    }
}

void write_reports(const std::vector<pv::ScenarioMetrics>& scenarios, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream os(fs::path(dir) / name, std::ios::binary);
        if (!os) throw std::runtime_error(std::string("cannot write ") + name + " in " + dir);
        return os;
    };
    {
        auto os = open("scenario_summary.csv");
        pv::write_summary_csv(os, scenarios);
    }
    {
        auto os = open("demands_detail.csv");
        pv::write_details_csv(os, scenarios);
    }
    {
        auto os = open("report.json");
        pv::write_report_json(os, scenarios);
    }
    std::cout << "wrote scenario_summary.csv, demands_detail.csv, report.json to " << dir << '\n';
}

int run_gen_topology(const Options& o) {
    if (o.gen_n <= 1) throw std::runtime_error("gen-topology requires --gen-n >= 2");
    if (o.out_dir.empty()) throw std::runtime_error("gen-topology requires --out FILE");
    const pv::Topology t = pv::generate_geometric_topology(o.gen_n, o.gen_seed, o.gen_degree);
    pv::save_topology_file(t, o.out_dir);
    std::cout << "wrote " << o.out_dir << ": " << t.carrier_count() << " carriers, "
              << t.links().size() << " links, longest " << t.max_link_distance() << '\n';
    return 0;
}

int run_paths(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const pv::Demand d = resolve_demand(t, o);
    const pv::CandidateSet cs = pv::enumerate_candidates(t, d, o.m_min, o.delta_min);
    std::cout << "demand " << t.carrier(d.ingress).name << " -> " << t.carrier(d.egress).name
              << ": h_min=" << cs.h_min << " delta_h=" << cs.delta_h << " candidates="
              << cs.size() << '\n';
    for (int j = 0; j < cs.size(); ++j)
        std::cout << std::setw(4) << j << "  hops=" << cs.paths[j].hops() << "  "
                  << path_names(t, cs.paths[j]) << '\n';
    return 0;
}

int run_economics(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const pv::Demand d = resolve_demand(t, o);
    const pv::ScenarioConfig cfg = scenario_config(t, o);
    const pv::CandidateSet cs = pv::enumerate_candidates(t, d, cfg.m_min, cfg.delta_min);
    const pv::Fare fare = pv::calibrate_fare(t, cfg.cost, cfg.fare_factor);
    const pv::UtilityMatrix u = pv::utility_matrix(cs, t, cfg.cost, fare);

    std::cout << "cost model " << cfg.cost_name << " (c0=" << cfg.cost.c0 << ", d0=" << cfg.cost.d0
              << "), fare A=" << fare.amount << ", electorate " << u.elector_count() << '\n';
    std::cout << std::setw(4) << "j" << std::setw(6) << "hops" << std::setw(14) << "cost"
              << std::setw(14) << "income" << "  path\n";
    for (int j = 0; j < cs.size(); ++j) {
        const double cost = pv::path_total_cost(t, cfg.cost, cs.paths[j]);
        std::cout << std::setw(4) << j << std::setw(6) << cs.paths[j].hops() << std::setw(14)
                  << cost << std::setw(14) << pv::global_net_income(u, j) << "  "
                  << path_names(t, cs.paths[j]) << '\n';
    }
    if (o.show_matrix) {
        std::cout << "utilities (rows: electors; 0 = off path):\n";
        for (const pv::Elector& e : u.electors) {
            std::cout << std::setw(12) << t.carrier(e.carrier).name << ":";
            for (double v : e.utility) std::cout << ' ' << v;
            std::cout << '\n';
        }
    }
    return 0;
}

int run_vote(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const pv::Demand d = resolve_demand(t, o);
    const pv::ScenarioConfig cfg = scenario_config(t, o);
    const pv::CandidateSet cs = pv::enumerate_candidates(t, d, cfg.m_min, cfg.delta_min);
    const pv::Fare fare = pv::calibrate_fare(t, cfg.cost, cfg.fare_factor);
    const pv::UtilityMatrix u = pv::utility_matrix(cs, t, cfg.cost, fare);

    if (o.system == "range" || o.system == "both") {
        const pv::RangeResult r = pv::range_winner(pv::sincere_range_profile(u));
        std::cout << "range winner: " << r.winner << "  (" << path_names(t, cs.paths[r.winner])
                  << ")\n  sums:";
        for (double s : r.sums) std::cout << ' ' << s;
        std::cout << '\n';
    }
    if (o.system == "stv" || o.system == "both") {
        const pv::StvResult r = pv::stv_winner(pv::sincere_order_profile(u), cs.size());
        for (const pv::StvRound& round : r.rounds) {
            std::cout << "stv round:";
            for (std::size_t k = 0; k < round.remaining.size(); ++k)
                std::cout << "  " << round.remaining[k] << "=" << round.tallies[k].str();
            std::cout << "  -> eliminate " << round.eliminated << '\n';
        }
        std::cout << "stv winner: " << r.winner << "  (" << path_names(t, cs.paths[r.winner])
                  << ")\n";
    }
    return 0;
}

int run_manipulate(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const pv::Demand d = resolve_demand(t, o);
    const pv::ScenarioConfig cfg = scenario_config(t, o);
    const pv::CandidateSet cs = pv::enumerate_candidates(t, d, cfg.m_min, cfg.delta_min);
    const pv::Fare fare = pv::calibrate_fare(t, cfg.cost, cfg.fare_factor);
    const pv::UtilityMatrix u = pv::utility_matrix(cs, t, cfg.cost, fare);

    auto list = [](const std::vector<int>& xs) {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(xs[i]);
        }
        return out.empty() ? std::string("-") : out;
    };

    if (o.system == "range" || o.system == "both") {
        const pv::ManipulabilityVerdict v = pv::range_cm(u);
        std::cout << "range: sincere winner " << v.sincere_winner << ", verdict "
                  << pv::verdict_name(v.status) << ", successful challengers "
                  << list(v.successful_challengers) << '\n';
    }
    if (o.system == "stv" || o.system == "both") {
        const pv::StvManipAnalysis a = pv::stv_manipulability(u, cfg.max_m);
        std::cout << "stv: sincere winner " << a.tm.sincere_winner << ", combined verdict "
                  << pv::verdict_name(a.combined) << '\n';
        std::cout << "  trivial manipulation: " << pv::verdict_name(a.tm.status)
                  << ", successful challengers " << list(a.tm.successful_challengers) << '\n';
        std::cout << "  relaxation upper bound: " << pv::verdict_name(a.upper.status);
        if (!a.upper.elimination_order.empty())
            std::cout << ", elimination order " << list(a.upper.elimination_order);
        std::cout << '\n';
    }
    return 0;
}

int run_scenario_cmd(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const std::vector<pv::ScenarioMetrics> result{pv::run_scenario(t, scenario_config(t, o))};
    print_metrics_table(result);
    if (!o.out_dir.empty()) write_reports(result, o.out_dir);
    return 0;
}

int run_sweep(const Options& o) {
    const pv::Topology t = resolve_topology(o);
    const std::vector<pv::ScenarioMetrics> result = pv::sweep(t, o.jobs);
    print_metrics_table(result);
    write_reports(result, o.out_dir.empty() ? "." : o.out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path elections over multi-carrier topologies"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--topology", o.topology_path, "topology JSON file");
        cmd->add_option("--config", o.config_path, "JSON config file (flags win on conflict)");
        cmd->add_option("--out", o.out_dir, "output directory (or file for gen-topology)");
        cmd->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
        cmd->add_option("--gen-n", o.gen_n, "generate a topology with this many carriers");
        cmd->add_option("--gen-seed", o.gen_seed, "generator seed");
        cmd->add_option("--gen-degree", o.gen_degree, "generator average degree");
        return cmd;
    };
    auto add_demand = [&](CLI::App* cmd) {
        cmd->add_option("--ingress", o.ingress, "ingress carrier (index or name)");
        cmd->add_option("--egress", o.egress, "egress carrier (index or name)");
        return cmd;
    };
    auto add_scenario = [&](CLI::App* cmd) {
        cmd->add_option("--m-min", o.m_min, "minimum candidate count (default 5)");
        cmd->add_option("--delta-min", o.delta_min, "minimum hop slack (default 0)");
        cmd->add_option("--cost-model", o.cost_name, "constant | linear | intermediate");
        cmd->add_option("--fare-factor", o.fare_factor, "fare calibration factor (default 1.4)");
        cmd->add_option("--max-m", o.max_m, "skip the STV upper bound above this many candidates");
        return cmd;
    };

    CLI::App* gen = add_common(app.add_subcommand("gen-topology", "write a synthetic topology"));
    CLI::App* paths =
        add_scenario(add_demand(add_common(app.add_subcommand("paths", "list candidate paths"))));
    CLI::App* econ = add_scenario(
        add_demand(add_common(app.add_subcommand("economics", "fare, costs and incomes"))));
    econ->add_flag("--matrix", o.show_matrix, "also print the full utility matrix");
    CLI::App* vote =
        add_scenario(add_demand(add_common(app.add_subcommand("vote", "run sincere elections"))));
    vote->add_option("--system", o.system, "range | stv | both");
    CLI::App* manip = add_scenario(
        add_demand(add_common(app.add_subcommand("manipulate", "manipulability verdicts"))));
    manip->add_option("--system", o.system, "range | stv | both");
    CLI::App* scen =
        add_scenario(add_common(app.add_subcommand("scenario", "run one full scenario")));
    CLI::App* swp = add_common(app.add_subcommand("sweep", "run the 2x3 configuration grid"));

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        apply_config(*active, o);
        if (active == gen) return run_gen_topology(o);
        if (active == paths) return run_paths(o);
        if (active == econ) return run_economics(o);
        if (active == vote) return run_vote(o);
        if (active == manip) return run_manipulate(o);
        if (active == scen) return run_scenario_cmd(o);
        if (active == swp) return run_sweep(o);
        throw std::runtime_error("unhandled subcommand");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
