#include "msfab/latency.hpp"

#include <cmath>
#include <stdexcept>

namespace msfab {

double cnot_latency(int code_distance) {
    if (code_distance < 3 || code_distance % 2 == 0)
        throw std::invalid_argument("code distance must be odd and >= 3");
    return 2.0 * code_distance + 2.0;
}

double t_gate_latency(int code_distance) {
    // One injection CNOT plus an even-odds pair of corrective CNOTs.
    return 2.0 * cnot_latency(code_distance);
}

double congestion_factor(std::uint64_t t, const CongestionModel& model) {
    if (!(model.c > 0.0))
        throw std::invalid_argument("congestion constant must be positive");
    return model.c * std::sqrt(static_cast<double>(t));
}

double iterations_for_timestep(std::uint64_t t, double k_eff, std::uint32_t factory_count,
                               double t_gate, double t_distill) {
    if (t == 0)
        return 0.0;
    if (!(k_eff > 0.0))
        throw StarvedFactory("factory yield is zero; requests can never be served");
    if (!(t_distill > 0.0))
        throw std::invalid_argument("t_distill must be positive");
    const double demand = static_cast<double>(t);
    const double x = static_cast<double>(factory_count);
    const double full_waves = std::floor(demand / k_eff);
    double residual = demand - full_waves * k_eff;
    if (residual < 0.0)
        residual = 0.0;
    return (t_gate / t_distill) *
           (full_waves * std::sqrt(k_eff / x) + std::sqrt(residual / x));
}

double total_time(const TLoadDistribution& dist, double k_eff,
                  std::uint32_t factory_count, double t_gate, double t_distill,
                  const CongestionModel& congestion) {
    if (!(congestion.c > 0.0))
        throw std::invalid_argument("congestion constant must be positive");
    double iterations = 0.0;
    for (const auto& [t, count] : dist.histogram) {
        if (t == 0 || count == 0)
            continue;
        iterations += iterations_for_timestep(t, k_eff, factory_count, t_gate, t_distill) *
                      static_cast<double>(count);
    }
    return t_distill * congestion.c * iterations;
}

double total_time(const TLoadDistribution& dist, const FactoryArchitecture& arch,
                  const NoiseModel& noise, const CongestionModel& congestion) {
    const auto profiles = compute_round_profiles(arch, noise);
    std::vector<int> distances;
    distances.reserve(profiles.size());
    for (const auto& profile : profiles)
        distances.push_back(profile.code_distance);
    const double t_distill = distill_time(distances);
    const double t_gate = t_gate_latency(distances.back());
    const double k_eff = effective_output(arch, noise);
    return total_time(dist, k_eff, arch.factory_count, t_gate, t_distill, congestion);
}

double congestion_free_time(const TLoadDistribution& dist, double k_eff, double t_gate) {
    double time = 0.0;
    for (const auto& [t, count] : dist.histogram) {
        if (t == 0 || count == 0)
            continue;
        if (!(k_eff > 0.0))
            throw StarvedFactory("factory yield is zero; requests can never be served");
        const double waves = std::ceil(static_cast<double>(t) / k_eff);
        time += waves * t_gate * static_cast<double>(count);
    }
    return time;
}

}  // namespace msfab
