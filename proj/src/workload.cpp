#include "msfab/workload.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace msfab {

namespace {

// Uniform double in (0, 1), explicit 53-bit construction.
double uniform01(std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

// Standard normal via the polar method; only sqrt/log, no trig.
double standard_normal(std::mt19937_64& rng) {
    for (;;) {
        const double v1 = 2.0 * uniform01(rng) - 1.0;
        const double v2 = 2.0 * uniform01(rng) - 1.0;
        const double s = v1 * v1 + v2 * v2;
        if (s > 0.0 && s < 1.0)
            return v1 * std::sqrt(-2.0 * std::log(s) / s);
    }
}

}  // namespace

std::uint64_t TLoadDistribution::schedule_length() const {
    std::uint64_t total = 0;
    for (const auto& [t, count] : histogram)
        total += count;
    return total;
}

std::uint64_t TLoadDistribution::t_count() const {
    std::uint64_t total = 0;
    for (const auto& [t, count] : histogram)
        total += static_cast<std::uint64_t>(t) * count;
    return total;
}

std::uint32_t TLoadDistribution::t_peak() const {
    std::uint32_t peak = 0;
    for (const auto& [t, count] : histogram)
        if (count > 0 && t > peak)
            peak = t;
    return peak;
}

bool TLoadDistribution::empty_demand() const {
    for (const auto& [t, count] : histogram)
        if (t > 0 && count > 0)
            return false;
    return true;
}

TLoadDistribution from_schedule(const std::vector<std::uint32_t>& per_timestep_counts,
                                const std::string& name) {
    if (per_timestep_counts.empty())
        throw EmptySchedule("schedule must contain at least one timestep");
    TLoadDistribution dist;
    dist.name = name;
    for (std::uint32_t t : per_timestep_counts)
        ++dist.histogram[t];
    return dist;
}

WorkloadStats stats(const TLoadDistribution& dist, std::uint32_t n_qubits) {
    WorkloadStats out;
    out.n_qubits = n_qubits;
    out.schedule_length = dist.schedule_length();
    out.t_count = dist.t_count();
    out.t_peak = dist.t_peak();
    if (out.schedule_length == 0)
        return out;
    const double length = static_cast<double>(out.schedule_length);
    out.t_avg = static_cast<double>(out.t_count) / length;
    double sq = 0.0;
    for (const auto& [t, count] : dist.histogram) {
        const double dev = static_cast<double>(t) - out.t_avg;
        sq += dev * dev * static_cast<double>(count);
    }
    out.t_std = std::sqrt(sq / length);
    return out;
}

Workload generate_ising_like(std::uint32_t n_qubits, std::uint32_t timesteps,
                             std::uint64_t seed) {
    if (n_qubits < 1)
        throw std::invalid_argument("n_qubits must be >= 1");
    if (timesteps < 1)
        throw std::invalid_argument("timesteps must be >= 1");
    const double mean = 0.88 * n_qubits;
    const double stdev = 0.21 * n_qubits;
    const double cap = 2.0 * n_qubits;  // S gates decompose into two T gates
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> schedule;
    schedule.reserve(timesteps);
    for (std::uint32_t i = 0; i < timesteps; ++i) {
        double demand = std::round(mean + stdev * standard_normal(rng));
        if (demand < 0.0)
            demand = 0.0;
        if (demand > cap)
            demand = cap;
        schedule.push_back(static_cast<std::uint32_t>(demand));
    }
    Workload w;
    w.name = "ising-like-" + std::to_string(n_qubits);
    w.n_qubits = n_qubits;
    w.dist = from_schedule(schedule, w.name);
    w.schedule = std::move(schedule);
    return w;
}

Workload generate_gse_like(std::uint32_t n_spin_orbitals, std::uint32_t timesteps,
                           std::uint64_t seed) {
    if (n_spin_orbitals < 1)
        throw std::invalid_argument("n_spin_orbitals must be >= 1");
    if (timesteps < 1)
        throw std::invalid_argument("timesteps must be >= 1");
    const double mean = 1.42;
    const double p = 1.0 / (1.0 + mean);  // geometric success probability
    const auto cap = static_cast<std::uint32_t>(std::floor(2.4 * n_spin_orbitals));
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> schedule;
    schedule.reserve(timesteps);
    for (std::uint32_t i = 0; i < timesteps; ++i) {
        const double u = uniform01(rng);
        auto demand = static_cast<std::uint32_t>(std::log(u) / std::log(1.0 - p));
        if (demand > cap)
            demand = cap;
        schedule.push_back(demand);
    }
    Workload w;
    w.name = "gse-like-" + std::to_string(n_spin_orbitals);
    w.n_qubits = n_spin_orbitals;
    w.dist = from_schedule(schedule, w.name);
    w.schedule = std::move(schedule);
    return w;
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
    throw SchemaViolation("workload file: field '" + field + "': " + what);
}

std::uint64_t require_nonneg_int(const json& value, const std::string& field) {
    if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
        schema_error(field, "expected a nonnegative integer");
    return value.get<std::uint64_t>();
}

}  // namespace

Workload load_workload(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaViolation("cannot open workload file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaViolation("workload file: " + std::string(e.what()));
    }
    if (!doc.is_object())
        schema_error("<root>", "expected a JSON object");
    if (!doc.contains("version"))
        schema_error("version", "missing");
    if (!doc["version"].is_number_integer() || doc["version"].get<std::int64_t>() != 1)
        throw VersionMismatch("workload file: unsupported version " + doc["version"].dump());
    if (!doc.contains("name") || !doc["name"].is_string())
        schema_error("name", "expected a string");
    if (!doc.contains("n_qubits"))
        schema_error("n_qubits", "missing");
    const auto n_qubits = require_nonneg_int(doc["n_qubits"], "n_qubits");
    if (n_qubits < 1)
        schema_error("n_qubits", "must be positive");

    const bool has_hist = doc.contains("histogram");
    const bool has_sched = doc.contains("schedule");
    if (has_hist == has_sched)
        schema_error("<root>", "exactly one of 'histogram' or 'schedule' is required");

    Workload w;
    w.name = doc["name"].get<std::string>();
    w.n_qubits = static_cast<std::uint32_t>(n_qubits);
    w.dist.name = w.name;

    if (has_hist) {
        const json& hist = doc["histogram"];
        if (!hist.is_array())
            schema_error("histogram", "expected an array of [t, count] pairs");
        std::int64_t prev_t = -1;
        for (std::size_t i = 0; i < hist.size(); ++i) {
            const std::string field = "histogram[" + std::to_string(i) + "]";
            const json& entry = hist[i];
            if (!entry.is_array() || entry.size() != 2)
                schema_error(field, "expected a [t, count] pair");
            const auto t = require_nonneg_int(entry[0], field + ".t");
            const auto count = require_nonneg_int(entry[1], field + ".count");
            if (static_cast<std::int64_t>(t) <= prev_t)
                schema_error(field, "t values must be strictly increasing");
            prev_t = static_cast<std::int64_t>(t);
            if (count > 0)
                w.dist.histogram[static_cast<std::uint32_t>(t)] = count;
        }
    } else {
        const json& sched = doc["schedule"];
        if (!sched.is_array())
            schema_error("schedule", "expected an array of nonnegative integers");
        if (sched.empty())
            schema_error("schedule", "must be nonempty");
        std::vector<std::uint32_t> schedule;
        schedule.reserve(sched.size());
        for (std::size_t i = 0; i < sched.size(); ++i) {
            const auto t = require_nonneg_int(sched[i], "schedule[" + std::to_string(i) + "]");
            schedule.push_back(static_cast<std::uint32_t>(t));
        }
        w.dist = from_schedule(schedule, w.name);
        w.schedule = std::move(schedule);
    }
    return w;
}

void save_workload(const Workload& workload, const std::string& path) {
    json doc;
    doc["version"] = 1;
    doc["name"] = workload.name;
    doc["n_qubits"] = workload.n_qubits;
    if (workload.schedule.has_value()) {
        doc["schedule"] = *workload.schedule;
    } else {
        json hist = json::array();
        for (const auto& [t, count] : workload.dist.histogram)
            if (count > 0)
                hist.push_back(json::array({t, count}));
        doc["histogram"] = std::move(hist);
    }
    std::ofstream out(path);
    if (!out)
        throw SchemaViolation("cannot write workload file: " + path);
    out << doc.dump() << '\n';
}

}  // namespace msfab
