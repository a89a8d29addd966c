#pragma once

// Design-space search over (K, X, l): per-level feasibility analysis, the
// four reference architectures, and full space-time-volume optimization.

#include <cstdint>
#include <string>
#include <vector>

#include "msfab/distillation.hpp"
#include "msfab/latency.hpp"
#include "msfab/workload.hpp"

namespace msfab {

struct SearchConstraints {
    int l_max = 5;
    std::uint64_t k_max = 0;          // 0: default to the workload's T_peak
    bool require_x_le_k = true;       // constraint C(i)
    bool enforce_protocol_threshold = true;  // constraint C(ii)
    bool search_all_levels = false;   // search every l in [l_min, l_max], not just l_min
    bool auto_escalate_levels = false;  // presets: raise l past yield collapse
    int distance_cap = kDefaultDistanceCap;
};

struct DesignPoint {
    FactoryArchitecture arch;
    std::vector<int> round_distances;  // d_1..d_l
    ResourceEstimate estimate;
    double k_output = 0.0;             // yield-adjusted output per cycle
    double eps_out = 0.0;              // achieved final-round error
};

enum class PresetKind { surplus, singlet, optimized_unified, optimized_distributed };

const char* preset_name(PresetKind kind);

// eps_target = P_s / N_gates.
double target_error(const NoiseModel& noise);

// Largest capacity ratio R = K/X whose final-round error meets the target at
// the given level; 0 when even R = 1 is infeasible. Bisection on R.
double max_feasible_ratio(int level, const NoiseModel& noise);

// Smallest l <= l_max with max_feasible_ratio(l) >= 1.
int min_feasible_level(const NoiseModel& noise, const SearchConstraints& constraints);

// Protocol-threshold cap on K/X from constraint C(ii): (1-8e)/(3e).
double protocol_ratio_cap(double eps_inject);

// Full evaluation of one design: per-round errors and distances, yield,
// latency, area and volume. Throws Infeasible when the final-round error
// misses the target, StarvedFactory when yield is zero under nonzero demand.
DesignPoint evaluate_design(const FactoryArchitecture& arch, const TLoadDistribution& dist,
                            const NoiseModel& noise, const CongestionModel& congestion,
                            int distance_cap = kDefaultDistanceCap);

// Re-evaluate a frozen design under a different noise environment. The
// architecture and code distances are kept; yield, latency and volume are
// recomputed. The error target is not rechecked (the design is already
// built); eps_out reports the achieved error. Sensitivity-analysis path.
DesignPoint reevaluate_design(const DesignPoint& design, const TLoadDistribution& dist,
                              const NoiseModel& noise, const CongestionModel& congestion);

// Exhaustive integer grid search for the volume-optimal (K, X) at the lowest
// feasible level, under C(i) and C(ii). Ties break to smallest X, then
// smallest K. Grid points are evaluated concurrently and reduced
// deterministically.
DesignPoint optimize(const TLoadDistribution& dist, const NoiseModel& noise,
                     const SearchConstraints& constraints, const CongestionModel& congestion);

// The four reference configurations: surplus (K = T_peak, X = 1), singlet
// (K = 1, X = 1), optimized-unified (search with X = 1) and
// optimized-distributed (full search). Fixed presets are evaluated at their
// own minimal feasible level.
DesignPoint preset(PresetKind kind, const TLoadDistribution& dist, const NoiseModel& noise,
                   const SearchConstraints& constraints, const CongestionModel& congestion);

}  // namespace msfab
