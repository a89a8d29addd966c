// msfab: magic-state distillation factory architecture explorer.
//
// Subcommands: estimate, optimize, sweep, simulate, workload.
// Exit codes: 0 ok, 2 infeasible design, 3 bad input or schema, 4 layout.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msfab/lattice_sim.hpp"
#include "msfab/optimizer.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInput = 3;
constexpr int kExitLayout = 4;

std::string fmt(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

struct NoiseFlags {
    double eps_in = 1e-4;
    double eps_inject = -1.0;  // default: equal to eps_in
    double p_success = 0.5;
    double n_gates = 0.0;      // default: workload T count
    bool eps_in_given = false;

    void attach(CLI::App* cmd) {
        auto* in = cmd->add_option("--eps-in", eps_in, "physical gate error rate")
                       ->capture_default_str();
        cmd->add_option("--eps-inject", eps_inject,
                        "injected magic-state error rate (default: --eps-in)");
        cmd->add_option("--p-success", p_success, "target application success probability")
            ->capture_default_str();
        cmd->add_option("--n-gates", n_gates,
                        "logical gate count (default: workload T count)");
        in->each([this](const std::string&) { eps_in_given = true; });
    }

    msfab::NoiseModel resolve(const msfab::Workload& workload) const {
        msfab::NoiseModel noise;
        noise.eps_in = eps_in;
        noise.eps_inject = eps_inject > 0.0 ? eps_inject : eps_in;
        noise.p_success_target = p_success;
        noise.n_gates = n_gates > 0.0
                            ? n_gates
                            : std::max<double>(1.0, static_cast<double>(workload.dist.t_count()));
        noise.validate();
        return noise;
    }
};

struct OutputSink {
    std::string path;
    std::ofstream file;

    std::ostream& stream() {
        if (path.empty())
            return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file)
                throw msfab::SchemaViolation("cannot write output file: " + path);
        }
        return file;
    }
};

json design_to_json(const msfab::DesignPoint& point) {
    json j;
    j["capacity"] = point.arch.capacity;
    j["factories"] = point.arch.factory_count;
    j["levels"] = point.arch.levels;
    j["round_distances"] = point.round_distances;
    j["eps_out"] = point.eps_out;
    j["k_output"] = point.k_output;
    j["area_physical_qubits"] = point.estimate.area_physical_qubits;
    j["total_cycles"] = point.estimate.total_cycles;
    j["volume"] = point.estimate.volume;
    return j;
}

void print_design_text(std::ostream& out, const std::string& label,
                       const msfab::DesignPoint& point) {
    out << label << ": K=" << point.arch.capacity << " X=" << point.arch.factory_count
        << " levels=" << point.arch.levels << '\n';
    out << "  round distances:";
    for (int d : point.round_distances)
        out << ' ' << d;
    out << '\n';
    out << "  eps_out: " << fmt(point.eps_out) << '\n';
    out << "  k_output: " << fmt(point.k_output) << '\n';
    out << "  area_physical_qubits: " << fmt(point.estimate.area_physical_qubits) << '\n';
    out << "  total_cycles: " << fmt(point.estimate.total_cycles) << '\n';
    out << "  volume: " << fmt(point.estimate.volume) << '\n';
}

std::optional<msfab::PresetKind> parse_preset(const std::string& name) {
    if (name == "surplus") return msfab::PresetKind::surplus;
    if (name == "singlet") return msfab::PresetKind::singlet;
    if (name == "unified") return msfab::PresetKind::optimized_unified;
    if (name == "distributed") return msfab::PresetKind::optimized_distributed;
    return std::nullopt;
}

struct SweepValues {
    std::string variable;
    std::vector<double> values;
};

SweepValues parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw msfab::SchemaViolation("--sweep expects VAR=start:stop:points");
    SweepValues out;
    out.variable = spec.substr(0, eq);
    if (out.variable != "eps-inject" && out.variable != "K" && out.variable != "X")
        throw msfab::SchemaViolation("--sweep variable must be eps-inject, K or X");
    std::string rest = spec.substr(eq + 1);
    bool log_spaced = false;
    if (rest.size() >= 3 && rest.substr(rest.size() - 3) == "log") {
        log_spaced = true;
        rest = rest.substr(0, rest.size() - 3);
    }
    double start = 0.0, stop = 0.0;
    int points = 0;
    if (std::sscanf(rest.c_str(), "%lf:%lf:%d", &start, &stop, &points) != 3 || points < 1)
        throw msfab::SchemaViolation("--sweep expects VAR=start:stop:points");
    if (points == 1) {
        out.values.push_back(start);
        return out;
    }
    if (start == stop)
        throw msfab::SchemaViolation("sweep values must be strictly monotone");
    if (log_spaced && (start <= 0.0 || stop <= 0.0))
        throw msfab::SchemaViolation("log sweeps need positive endpoints");
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        out.values.push_back(log_spaced
                                 ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                                 : start + f * (stop - start));
    }
    return out;
}

struct SweepRow {
    std::string value;
    std::string preset;
    std::optional<msfab::DesignPoint> point;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "# msfab sweep v1\n";
    out << "variable,preset,K,X,levels,area_physical,cycles,volume,eps_out,k_output,feasible\n";
    for (const SweepRow& row : rows) {
        out << row.value << ',' << row.preset << ',';
        if (row.point.has_value()) {
            const auto& p = *row.point;
            out << p.arch.capacity << ',' << p.arch.factory_count << ',' << p.arch.levels << ','
                << fmt(p.estimate.area_physical_qubits) << ',' << fmt(p.estimate.total_cycles)
                << ',' << fmt(p.estimate.volume) << ',' << fmt(p.eps_out) << ','
                << fmt(p.k_output) << ",1\n";
        } else {
            out << ",,,,,,,,0\n";
        }
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"magic-state distillation factory architecture explorer"};
    app.require_subcommand(1);

    std::string workload_path;
    std::string format = "text";
    std::string out_path;

    // ---- estimate ----
    auto* estimate = app.add_subcommand("estimate", "evaluate one architecture on a workload");
    NoiseFlags est_noise;
    est_noise.attach(estimate);
    std::uint64_t est_capacity = 1;
    std::uint32_t est_factories = 1;
    int est_levels = 0;
    int est_lmax = 5;
    std::string est_preset;
    double est_c = 1.0;
    estimate->add_option("--workload", workload_path, "workload file")->required();
    estimate->add_option("--capacity", est_capacity, "total states per distillation cycle (K)");
    estimate->add_option("--factories", est_factories, "number of distributed factories (X)");
    estimate->add_option("--levels", est_levels, "distillation rounds per cycle (default: min feasible)");
    estimate->add_option("--lmax", est_lmax, "maximum levels to consider")->capture_default_str();
    std::uint64_t est_kmax = 0;
    estimate->add_option("--kmax", est_kmax, "capacity cap for optimized presets");
    estimate->add_option("--preset", est_preset,
                         "surplus|singlet|unified|distributed instead of explicit flags");
    estimate->add_option("--congestion-c", est_c, "routing congestion constant")
        ->capture_default_str();
    estimate->add_option("--format", format, "text|json")->capture_default_str();
    estimate->add_option("--out", out_path, "write the report to a file");

    // ---- optimize ----
    auto* optimize_cmd = app.add_subcommand("optimize", "search the (K, X, levels) design space");
    NoiseFlags opt_noise;
    opt_noise.attach(optimize_cmd);
    int opt_lmax = 5;
    std::uint64_t opt_kmax = 0;
    double opt_c = 1.0;
    bool opt_compare = false;
    bool opt_all_levels = false;
    optimize_cmd->add_option("--workload", workload_path, "workload file")->required();
    optimize_cmd->add_option("--lmax", opt_lmax, "maximum levels to consider")
        ->capture_default_str();
    optimize_cmd->add_option("--kmax", opt_kmax, "capacity search cap (default: workload T peak)");
    optimize_cmd->add_option("--congestion-c", opt_c, "routing congestion constant")
        ->capture_default_str();
    optimize_cmd->add_flag("--compare", opt_compare, "also report the four presets");
    optimize_cmd->add_flag("--all-levels", opt_all_levels,
                           "search every feasible level, not just the lowest");
    optimize_cmd->add_option("--format", format, "text|json")->capture_default_str();
    optimize_cmd->add_option("--out", out_path, "write the report to a file");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "emit CSV rows across a parameter sweep");
    NoiseFlags swp_noise;
    swp_noise.attach(sweep_cmd);
    std::string sweep_spec;
    std::vector<std::string> swp_presets;
    std::uint64_t swp_capacity = 1;
    std::uint32_t swp_factories = 1;
    int swp_levels = 0;
    int swp_lmax = 5;
    std::uint64_t swp_kmax = 0;
    double swp_c = 1.0;
    double swp_design_eps = 0.0;
    sweep_cmd->add_option("--workload", workload_path, "workload file")->required();
    sweep_cmd->add_option("--sweep", sweep_spec, "VAR=start:stop:points[log], VAR in {eps-inject,K,X}")
        ->required();
    sweep_cmd->add_option("--preset", swp_presets,
                          "presets to trace (default all; eps-inject sweeps only)");
    sweep_cmd->add_option("--capacity", swp_capacity, "fixed K for K/X sweeps");
    sweep_cmd->add_option("--factories", swp_factories, "fixed X for K/X sweeps");
    sweep_cmd->add_option("--levels", swp_levels, "fixed levels (default: min feasible per point)");
    sweep_cmd->add_option("--lmax", swp_lmax, "maximum levels to consider")->capture_default_str();
    sweep_cmd->add_option("--kmax", swp_kmax, "capacity search cap for optimized presets");
    sweep_cmd->add_option("--congestion-c", swp_c, "routing congestion constant")
        ->capture_default_str();
    sweep_cmd->add_option("--design-eps", swp_design_eps,
                          "freeze designs at this eps-inject, then re-evaluate across the sweep");
    std::string swp_format = "csv";
    sweep_cmd->add_option("--format", swp_format, "csv")->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "write CSV to a file (default stdout)");

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "cycle-level lattice validation run");
    NoiseFlags sim_noise;
    sim_noise.attach(simulate);
    std::uint64_t sim_capacity = 1;
    std::uint32_t sim_factories = 1;
    std::uint32_t sim_levels = 1;
    int sim_width = 40;
    int sim_height = 40;
    int sim_data_qubits = 0;
    int sim_distance = 0;
    std::string sim_placement = "central";
    std::uint64_t sim_seed = 0;
    std::uint32_t sim_limit = 0;
    double sim_c = 1.0;
    std::string trace_path;
    simulate->add_option("--workload", workload_path, "workload file with a schedule payload")
        ->required();
    simulate->add_option("--capacity", sim_capacity, "total states per cycle (K)")
        ->capture_default_str();
    simulate->add_option("--factories", sim_factories, "factory count (X)")->capture_default_str();
    simulate->add_option("--levels", sim_levels, "distillation rounds")->capture_default_str();
    simulate->add_option("--width", sim_width, "lattice width in tiles")->capture_default_str();
    simulate->add_option("--height", sim_height, "lattice height in tiles")->capture_default_str();
    simulate->add_option("--data-qubits", sim_data_qubits,
                         "data qubits on the lattice (default: workload n_qubits)");
    simulate->add_option("--distance", sim_distance,
                         "override the code distance (default: solved from the noise model)");
    simulate->add_option("--placement", sim_placement, "central|mesh")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "simulation seed")->capture_default_str();
    simulate->add_option("--limit", sim_limit, "truncate the schedule to this many timesteps");
    simulate->add_option("--congestion-c", sim_c, "congestion constant for the analytic triple")
        ->capture_default_str();
    simulate->add_option("--trace", trace_path, "write a JSON-lines event trace");
    simulate->add_option("--format", format, "text|json")->capture_default_str();
    simulate->add_option("--out", out_path, "write the report to a file");

    // ---- workload ----
    auto* workload_cmd = app.add_subcommand("workload", "inspect or generate workloads");
    workload_cmd->require_subcommand(1);
    auto* wl_stats = workload_cmd->add_subcommand("stats", "summary statistics");
    wl_stats->add_option("--workload", workload_path, "workload file")->required();
    wl_stats->add_option("--format", format, "text|json")->capture_default_str();
    wl_stats->add_option("--out", out_path, "write the report to a file");

    std::uint32_t gen_qubits = 500;
    std::uint32_t gen_orbitals = 5;
    std::uint32_t gen_steps = 1000;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* wl_ising = workload_cmd->add_subcommand("gen-ising", "synthetic high-parallelism workload");
    wl_ising->add_option("--qubits", gen_qubits, "spin chain size")->capture_default_str();
    wl_ising->add_option("--steps", gen_steps, "schedule length")->capture_default_str();
    wl_ising->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    wl_ising->add_option("--out", gen_out, "output workload file")->required();
    auto* wl_gse = workload_cmd->add_subcommand("gen-gse", "synthetic low-parallelism workload");
    wl_gse->add_option("--orbitals", gen_orbitals, "spin orbital count")->capture_default_str();
    wl_gse->add_option("--steps", gen_steps, "schedule length")->capture_default_str();
    wl_gse->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    wl_gse->add_option("--out", gen_out, "output workload file")->required();

    CLI11_PARSE(app, argc, argv);

    OutputSink sink;
    sink.path = out_path;

    if (estimate->parsed()) {
        const auto workload = msfab::load_workload(workload_path);
        const auto noise = est_noise.resolve(workload);
        const msfab::CongestionModel congestion{est_c};
        msfab::SearchConstraints constraints;
        constraints.l_max = est_lmax;
        constraints.k_max = est_kmax;
        msfab::DesignPoint point;
        if (!est_preset.empty()) {
            const auto kind = parse_preset(est_preset);
            if (!kind.has_value())
                throw msfab::SchemaViolation("unknown preset: " + est_preset);
            point = msfab::preset(*kind, workload.dist, noise, constraints, congestion);
        } else {
            msfab::FactoryArchitecture arch{est_capacity, est_factories, 1};
            if (est_levels > 0) {
                arch.levels = static_cast<std::uint32_t>(est_levels);
            } else {
                // lowest level at which this (K, X) reaches the target
                int level = 0;
                for (int l = 1; l <= est_lmax; ++l) {
                    arch.levels = static_cast<std::uint32_t>(l);
                    if (msfab::round_error(arch, noise, l) <= noise.target_error()) {
                        level = l;
                        break;
                    }
                }
                if (level == 0)
                    throw msfab::NoFeasibleLevel("no level reaches the target for this design");
            }
            point = msfab::evaluate_design(arch, workload.dist, noise, congestion);
        }
        if (format == "json") {
            json j = design_to_json(point);
            j["workload"] = workload.name;
            sink.stream() << j.dump() << '\n';
        } else {
            print_design_text(sink.stream(), "design", point);
        }
        return kExitOk;
    }

    if (optimize_cmd->parsed()) {
        const auto workload = msfab::load_workload(workload_path);
        const auto noise = opt_noise.resolve(workload);
        const msfab::CongestionModel congestion{opt_c};
        msfab::SearchConstraints constraints;
        constraints.l_max = opt_lmax;
        constraints.k_max = opt_kmax;
        constraints.search_all_levels = opt_all_levels;
        const auto best = msfab::optimize(workload.dist, noise, constraints, congestion);
        const msfab::PresetKind kinds[] = {
            msfab::PresetKind::surplus, msfab::PresetKind::singlet,
            msfab::PresetKind::optimized_unified, msfab::PresetKind::optimized_distributed};
        if (format == "json") {
            json j;
            j["workload"] = workload.name;
            j["optimized"] = design_to_json(best);
            if (opt_compare) {
                json rows = json::object();
                for (const auto kind : kinds) {
                    try {
                        rows[msfab::preset_name(kind)] = design_to_json(
                            msfab::preset(kind, workload.dist, noise, constraints, congestion));
                    } catch (const msfab::Error& e) {
                        rows[msfab::preset_name(kind)] = json{{"infeasible", e.what()}};
                    }
                }
                j["presets"] = std::move(rows);
            }
            sink.stream() << j.dump() << '\n';
        } else {
            auto& out = sink.stream();
            print_design_text(out, "optimized", best);
            if (opt_compare) {
                for (const auto kind : kinds) {
                    try {
                        print_design_text(out, msfab::preset_name(kind),
                                          msfab::preset(kind, workload.dist, noise, constraints,
                                                        congestion));
                    } catch (const msfab::Error& e) {
                        out << msfab::preset_name(kind) << ": infeasible (" << e.what() << ")\n";
                    }
                }
            }
        }
        return kExitOk;
    }

    if (sweep_cmd->parsed()) {
        if (swp_format != "csv")
            throw msfab::SchemaViolation("sweep emits csv only");
        const auto workload = msfab::load_workload(workload_path);
        const auto sweep = parse_sweep(sweep_spec);
        const msfab::CongestionModel congestion{swp_c};
        msfab::SearchConstraints constraints;
        constraints.l_max = swp_lmax;
        constraints.k_max = swp_kmax;
        std::vector<SweepRow> rows;

        if (sweep.variable == "eps-inject") {
            std::vector<msfab::PresetKind> kinds;
            if (swp_presets.empty()) {
                kinds = {msfab::PresetKind::surplus, msfab::PresetKind::singlet,
                         msfab::PresetKind::optimized_unified,
                         msfab::PresetKind::optimized_distributed};
            } else {
                for (const auto& name : swp_presets) {
                    const auto kind = parse_preset(name);
                    if (!kind.has_value())
                        throw msfab::SchemaViolation("unknown preset: " + name);
                    kinds.push_back(*kind);
                }
            }
            auto noise_at = [&](double eps) {
                msfab::NoiseModel noise = swp_noise.resolve(workload);
                noise.eps_inject = eps;
                if (!swp_noise.eps_in_given)
                    noise.eps_in = eps;
                return noise;
            };
            std::vector<std::optional<msfab::DesignPoint>> frozen(kinds.size());
            if (swp_design_eps > 0.0) {
                const auto design_noise = noise_at(swp_design_eps);
                for (std::size_t i = 0; i < kinds.size(); ++i) {
                    try {
                        frozen[i] = msfab::preset(kinds[i], workload.dist, design_noise,
                                                  constraints, congestion);
                    } catch (const msfab::Error&) {
                        frozen[i] = std::nullopt;
                    }
                }
            }
            for (double value : sweep.values) {
                const auto noise = noise_at(value);
                for (std::size_t i = 0; i < kinds.size(); ++i) {
                    SweepRow row;
                    row.value = fmt(value);
                    row.preset = msfab::preset_name(kinds[i]);
                    try {
                        if (swp_design_eps > 0.0) {
                            if (!frozen[i].has_value())
                                throw msfab::Infeasible("design infeasible at --design-eps");
                            row.point = msfab::reevaluate_design(*frozen[i], workload.dist, noise,
                                                                 congestion);
                        } else {
                            row.point = msfab::preset(kinds[i], workload.dist, noise, constraints,
                                                      congestion);
                        }
                    } catch (const msfab::Error&) {
                        row.point = std::nullopt;
                    }
                    rows.push_back(std::move(row));
                }
            }
        } else {
            const auto noise = swp_noise.resolve(workload);
            for (double value : sweep.values) {
                msfab::FactoryArchitecture arch;
                arch.capacity = sweep.variable == "K"
                                    ? static_cast<std::uint64_t>(std::llround(value))
                                    : swp_capacity;
                arch.factory_count = sweep.variable == "X"
                                         ? static_cast<std::uint32_t>(std::llround(value))
                                         : swp_factories;
                SweepRow row;
                row.value = fmt(value);
                row.preset = "fixed";
                try {
                    int level = swp_levels;
                    if (level == 0) {
                        for (int l = 1; l <= swp_lmax; ++l) {
                            arch.levels = static_cast<std::uint32_t>(l);
                            if (msfab::round_error(arch, noise, l) <= noise.target_error()) {
                                level = l;
                                break;
                            }
                        }
                        if (level == 0)
                            throw msfab::NoFeasibleLevel("no feasible level for this point");
                    }
                    arch.levels = static_cast<std::uint32_t>(level);
                    row.point = msfab::evaluate_design(arch, workload.dist, noise, congestion);
                } catch (const msfab::Error&) {
                    row.point = std::nullopt;
                }
                rows.push_back(std::move(row));
            }
        }
        write_sweep_csv(sink.stream(), rows);
        return kExitOk;
    }

    if (simulate->parsed()) {
        const auto workload = msfab::load_workload(workload_path);
        if (!workload.schedule.has_value())
            throw msfab::SchemaViolation("simulate needs a workload with a schedule payload");
        std::vector<std::uint32_t> schedule = *workload.schedule;
        if (sim_limit > 0 && schedule.size() > sim_limit)
            schedule.resize(sim_limit);
        const auto noise = sim_noise.resolve(workload);
        msfab::FactoryArchitecture arch{sim_capacity, sim_factories, sim_levels};

        std::vector<int> distances;
        if (sim_distance > 0) {
            distances.assign(sim_levels, sim_distance);
        } else {
            for (const auto& profile : msfab::compute_round_profiles(arch, noise))
                distances.push_back(profile.code_distance);
        }
        msfab::SimConfig config;
        config.arch = arch;
        config.code_distance = distances.back();
        config.t_distill_cycles =
            static_cast<std::uint32_t>(msfab::distill_time(distances));
        config.seed = sim_seed;

        const int data_qubits =
            sim_data_qubits > 0 ? sim_data_qubits : static_cast<int>(workload.n_qubits);
        const auto placement =
            sim_placement == "mesh" ? msfab::Placement::mesh : msfab::Placement::central;
        const auto layout = msfab::build_layout(arch, data_qubits, placement, sim_width, sim_height);
        const auto bound = msfab::bind_requests(schedule, layout);

        std::ofstream trace_file;
        std::ostream* trace = nullptr;
        if (!trace_path.empty()) {
            trace_file.open(trace_path);
            if (!trace_file)
                throw msfab::SchemaViolation("cannot write trace file: " + trace_path);
            trace = &trace_file;
        }
        const auto result = msfab::run(bound, layout, config, trace);

        const auto dist = msfab::from_schedule(schedule, workload.name);
        const double k_eff = msfab::effective_output(arch, noise);
        const double analytic =
            msfab::total_time(dist, k_eff, arch.factory_count,
                              msfab::t_gate_latency(config.code_distance),
                              config.t_distill_cycles, msfab::CongestionModel{sim_c});
        const auto lower = msfab::lower_bound_cycles(schedule, config);

        double latency_sum = 0.0;
        for (auto cycles : result.per_timestep_latency)
            latency_sum += cycles;
        const double latency_mean =
            result.per_timestep_latency.empty()
                ? 0.0
                : latency_sum / static_cast<double>(result.per_timestep_latency.size());

        if (format == "json") {
            json j;
            j["workload"] = workload.name;
            j["timesteps"] = schedule.size();
            j["capacity"] = arch.capacity;
            j["factories"] = arch.factory_count;
            j["levels"] = arch.levels;
            j["code_distance"] = config.code_distance;
            j["t_distill_cycles"] = config.t_distill_cycles;
            j["seed"] = config.seed;
            j["simulated_cycles"] = result.total_cycles;
            j["analytical_cycles"] = analytic;
            j["lower_bound_cycles"] = lower;
            j["stall_events"] = result.stall_events;
            j["reroute_events"] = result.reroute_events;
            j["max_concurrent_braids"] = result.max_concurrent_braids;
            j["mean_timestep_latency"] = latency_mean;
            j["trace_events"] = result.trace_events;
            sink.stream() << j.dump() << '\n';
        } else {
            auto& out = sink.stream();
            out << "simulation: K=" << arch.capacity << " X=" << arch.factory_count
                << " levels=" << arch.levels << " d=" << config.code_distance
                << " t_distill=" << config.t_distill_cycles << " seed=" << config.seed << '\n';
            out << "  timesteps: " << schedule.size() << '\n';
            out << "  simulated_cycles: " << result.total_cycles << '\n';
            out << "  analytical_cycles: " << fmt(analytic) << '\n';
            out << "  lower_bound_cycles: " << lower << '\n';
            out << "  stall_events: " << result.stall_events << '\n';
            out << "  reroute_events: " << result.reroute_events << '\n';
            out << "  max_concurrent_braids: " << result.max_concurrent_braids << '\n';
            out << "  mean_timestep_latency: " << fmt(latency_mean) << '\n';
            out << "  trace_events: " << result.trace_events << '\n';
        }
        return kExitOk;
    }

    if (wl_stats->parsed()) {
        const auto workload = msfab::load_workload(workload_path);
        const auto s = msfab::stats(workload.dist, workload.n_qubits);
        if (format == "json") {
            json j;
            j["name"] = workload.name;
            j["n_qubits"] = s.n_qubits;
            j["t_count"] = s.t_count;
            j["schedule_length"] = s.schedule_length;
            j["t_avg"] = s.t_avg;
            j["t_std"] = s.t_std;
            j["t_peak"] = s.t_peak;
            sink.stream() << j.dump() << '\n';
        } else {
            auto& out = sink.stream();
            out << "workload: " << workload.name << '\n';
            out << "  n_qubits: " << s.n_qubits << '\n';
            out << "  t_count: " << s.t_count << '\n';
            out << "  schedule_length: " << s.schedule_length << '\n';
            out << "  t_avg: " << fmt(s.t_avg) << '\n';
            out << "  t_std: " << fmt(s.t_std) << '\n';
            out << "  t_peak: " << s.t_peak << '\n';
        }
        return kExitOk;
    }

    if (wl_ising->parsed() || wl_gse->parsed()) {
        const auto workload =
            wl_ising->parsed() ? msfab::generate_ising_like(gen_qubits, gen_steps, gen_seed)
                               : msfab::generate_gse_like(gen_orbitals, gen_steps, gen_seed);
        msfab::save_workload(workload, gen_out);
        const auto s = msfab::stats(workload.dist, workload.n_qubits);
        std::cout << "wrote " << workload.name << ": L=" << s.schedule_length
                  << " t_avg=" << fmt(s.t_avg) << " t_peak=" << s.t_peak << '\n';
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const msfab::Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const msfab::NoFeasibleLevel& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const msfab::StarvedFactory& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const msfab::DoesNotFit& e) {
        std::cerr << "layout: " << e.what() << '\n';
        return kExitLayout;
    } catch (const msfab::UnroutableRequest& e) {
        std::cerr << "layout: " << e.what() << '\n';
        return kExitLayout;
    } catch (const msfab::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
