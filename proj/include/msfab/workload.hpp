#pragma once

// T-gate demand distributions: ingestion, synthetic generators and summary
// statistics. A workload abstracts a program as a histogram D[t] counting the
// timesteps that demand t parallel T gates.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msfab/errors.hpp"

namespace msfab {

struct TLoadDistribution {
    std::map<std::uint32_t, std::uint64_t> histogram;  // t -> timestep count
    std::string name;

    std::uint64_t schedule_length() const;             // L = sum of counts
    std::uint64_t t_count() const;                     // sum t * D[t]
    std::uint32_t t_peak() const;                      // max t with D[t] > 0
    bool empty_demand() const;                         // no timestep with t > 0
};

struct WorkloadStats {
    std::uint32_t n_qubits = 0;
    std::uint64_t t_count = 0;
    std::uint64_t schedule_length = 0;
    double t_avg = 0.0;
    double t_std = 0.0;  // population standard deviation over timesteps
    std::uint32_t t_peak = 0;
};

// A workload as loaded from disk or produced by a generator. The histogram is
// always present; the raw schedule is kept when known (the simulator needs
// ordering, the analytical model does not).
struct Workload {
    std::string name;
    std::uint32_t n_qubits = 1;
    TLoadDistribution dist;
    std::optional<std::vector<std::uint32_t>> schedule;
};

TLoadDistribution from_schedule(const std::vector<std::uint32_t>& per_timestep_counts,
                                const std::string& name);

WorkloadStats stats(const TLoadDistribution& dist, std::uint32_t n_qubits);

// Synthetic high-parallelism workload shaped like the Ising-model benchmark:
// per-timestep demand ~ truncated normal(0.88*n, 0.21*n) clipped to [0, 2n].
Workload generate_ising_like(std::uint32_t n_qubits, std::uint32_t timesteps,
                             std::uint64_t seed);

// Synthetic low-parallelism workload shaped like the ground-state-estimation
// benchmark: geometric demand with mean ~1.42, peak capped at floor(2.4*n).
Workload generate_gse_like(std::uint32_t n_spin_orbitals, std::uint32_t timesteps,
                           std::uint64_t seed);

// JSON workload file, version 1:
//   {"version":1, "name":..., "n_qubits":..., "histogram":[[t,count],...]}
// with strictly increasing t, or a "schedule":[t0,t1,...] payload instead
// (exactly one of the two).
Workload load_workload(const std::string& path);
void save_workload(const Workload& workload, const std::string& path);

}  // namespace msfab
