#pragma once

// Analytical execution-time model: converts a T-load distribution and a
// factory design into total surface-code cycles, accounting for contention
// (demand beyond supply) and routing congestion (~ c*sqrt(t)).

#include <cstdint>

#include "msfab/distillation.hpp"
#include "msfab/workload.hpp"

namespace msfab {

struct CongestionModel {
    double c = 1.0;  // routing-algorithm constant in C_g = c*sqrt(t)
};

// T_cnot = 2d + 2 cycles for one braid.
double cnot_latency(int code_distance);

// Expected T-gate latency: one CNOT plus an even-odds corrective pair, 4d + 4.
double t_gate_latency(int code_distance);

// C_g = c * sqrt(t).
double congestion_factor(std::uint64_t t, const CongestionModel& model);

// Distillation iterations needed to serve t parallel T requests:
//   s = floor(t / K_eff)
//   n = (T_t / T_distill) * (s*sqrt(K_eff/X) + sqrt((t - s*K_eff)/X))
// K_eff is the yield-adjusted output of one cycle. Throws StarvedFactory when
// t > 0 and K_eff == 0.
double iterations_for_timestep(std::uint64_t t, double k_eff, std::uint32_t factory_count,
                               double t_gate, double t_distill);

// T_total = T_distill * sum_t n_distill(t) * D[t], with the congestion
// constant applied to every sqrt-delivery term.
double total_time(const TLoadDistribution& dist, double k_eff,
                  std::uint32_t factory_count, double t_gate, double t_distill,
                  const CongestionModel& congestion);

// Same, deriving K_eff, T_t and T_distill from the architecture's solved
// round distances.
double total_time(const TLoadDistribution& dist, const FactoryArchitecture& arch,
                  const NoiseModel& noise, const CongestionModel& congestion);

// Congestion-free analytic floor: ceil(t/K_eff) delivery waves, each costing
// one uncongested T_t window.
double congestion_free_time(const TLoadDistribution& dist, double k_eff,
                            double t_gate);

}  // namespace msfab
