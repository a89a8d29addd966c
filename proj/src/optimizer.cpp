#include "msfab/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace msfab {

const char* preset_name(PresetKind kind) {
    switch (kind) {
        case PresetKind::surplus: return "surplus";
        case PresetKind::singlet: return "singlet";
        case PresetKind::optimized_unified: return "unified";
        case PresetKind::optimized_distributed: return "distributed";
    }
    return "?";
}

double target_error(const NoiseModel& noise) {
    return noise.target_error();
}

namespace {

// Final-round error of a factory with capacity ratio R at the given level.
double final_round_error(double ratio, int level, double eps_inject) {
    const double k = std::pow(ratio, 1.0 / level);
    const double doublings = std::exp2(level);
    return std::pow(1.0 + 3.0 * k, doublings - 1.0) * std::pow(eps_inject, doublings);
}

}  // namespace

double max_feasible_ratio(int level, const NoiseModel& noise) {
    if (level < 1)
        throw std::invalid_argument("level must be >= 1");
    const double target = noise.target_error();
    if (final_round_error(1.0, level, noise.eps_inject) > target)
        return 0.0;
    // Monotone increasing in R; bracket then bisect.
    double lo = 1.0;
    double hi = 2.0;
    constexpr double kRatioCap = 1e30;
    while (final_round_error(hi, level, noise.eps_inject) <= target) {
        lo = hi;
        hi *= 2.0;
        if (hi > kRatioCap)
            return kRatioCap;
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (final_round_error(mid, level, noise.eps_inject) <= target)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

int min_feasible_level(const NoiseModel& noise, const SearchConstraints& constraints) {
    for (int level = 1; level <= constraints.l_max; ++level) {
        if (max_feasible_ratio(level, noise) >= 1.0)
            return level;
    }
    throw NoFeasibleLevel("no level up to " + std::to_string(constraints.l_max) +
                          " meets the target error");
}

double protocol_ratio_cap(double eps_inject) {
    return (1.0 - 8.0 * eps_inject) / (3.0 * eps_inject);
}

DesignPoint evaluate_design(const FactoryArchitecture& arch, const TLoadDistribution& dist,
                            const NoiseModel& noise, const CongestionModel& congestion,
                            int distance_cap) {
    arch.validate();
    DesignPoint point;
    point.arch = arch;
    point.eps_out = round_error(arch, noise, static_cast<int>(arch.levels));
    if (point.eps_out > noise.target_error())
        throw Infeasible("final-round error exceeds the target");
    const auto profiles = compute_round_profiles(arch, noise, distance_cap);
    point.round_distances.reserve(profiles.size());
    for (const auto& profile : profiles)
        point.round_distances.push_back(profile.code_distance);
    point.k_output = effective_output(arch, noise);
    point.estimate.area_physical_qubits = factory_area(arch, profiles);
    const double t_distill = distill_time(point.round_distances);
    const double t_gate = t_gate_latency(point.round_distances.back());
    point.estimate.total_cycles =
        total_time(dist, point.k_output, arch.factory_count, t_gate, t_distill, congestion);
    point.estimate.volume = point.estimate.area_physical_qubits * point.estimate.total_cycles;
    return point;
}

DesignPoint reevaluate_design(const DesignPoint& design, const TLoadDistribution& dist,
                              const NoiseModel& noise, const CongestionModel& congestion) {
    DesignPoint point = design;
    point.eps_out = round_error(design.arch, noise, static_cast<int>(design.arch.levels));
    point.k_output = effective_output(design.arch, noise);
    const double t_distill = distill_time(point.round_distances);
    const double t_gate = t_gate_latency(point.round_distances.back());
    point.estimate.total_cycles = total_time(dist, point.k_output, design.arch.factory_count,
                                             t_gate, t_distill, congestion);
    point.estimate.volume = point.estimate.area_physical_qubits * point.estimate.total_cycles;
    return point;
}

namespace {

struct Candidate {
    double volume = std::numeric_limits<double>::infinity();
    std::uint64_t capacity = 0;
    std::uint32_t factory_count = 0;
    bool valid = false;
    DesignPoint point;

    // Smallest volume, ties to smallest X then smallest K.
    bool better_than(const Candidate& other) const {
        if (!other.valid)
            return valid;
        if (!valid)
            return false;
        if (volume != other.volume)
            return volume < other.volume;
        if (factory_count != other.factory_count)
            return factory_count < other.factory_count;
        return capacity < other.capacity;
    }
};

Candidate search_level(const TLoadDistribution& dist, const NoiseModel& noise,
                       const SearchConstraints& constraints, const CongestionModel& congestion,
                       int level, std::uint64_t k_max, bool fix_single_factory) {
    const double ratio_cap = constraints.enforce_protocol_threshold
                                 ? protocol_ratio_cap(noise.eps_inject)
                                 : std::numeric_limits<double>::infinity();
    const double error_ratio_cap = max_feasible_ratio(level, noise);

    auto evaluate_capacity = [&](std::uint64_t capacity) {
        Candidate best;
        const std::uint32_t x_hi =
            fix_single_factory ? 1u
                               : static_cast<std::uint32_t>(
                                     constraints.require_x_le_k
                                         ? capacity
                                         : std::min<std::uint64_t>(capacity, 0xffffffffull));
        for (std::uint32_t x = 1; x <= x_hi; ++x) {
            const double ratio = static_cast<double>(capacity) / x;
            if (ratio > ratio_cap || ratio > error_ratio_cap)
                continue;
            FactoryArchitecture arch{capacity, x, static_cast<std::uint32_t>(level)};
            Candidate candidate;
            try {
                candidate.point = evaluate_design(arch, dist, noise, congestion,
                                                  constraints.distance_cap);
            } catch (const Error&) {
                continue;  // infeasible or starved at this point
            }
            if (!(candidate.point.k_output > 0.0))
                continue;
            candidate.volume = candidate.point.estimate.volume;
            candidate.capacity = capacity;
            candidate.factory_count = x;
            candidate.valid = true;
            if (candidate.better_than(best))
                best = candidate;
        }
        return best;
    };

    // Capacities are independent; evaluate them concurrently and reduce in
    // deterministic (volume, X, K) order afterwards.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, k_max)));
    std::vector<Candidate> per_capacity(k_max);
    if (n_threads <= 1 || k_max < 4) {
        for (std::uint64_t capacity = 1; capacity <= k_max; ++capacity)
            per_capacity[capacity - 1] = evaluate_capacity(capacity);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            workers.emplace_back([&, w] {
                for (std::uint64_t capacity = w + 1; capacity <= k_max; capacity += n_threads)
                    per_capacity[capacity - 1] = evaluate_capacity(capacity);
            });
        }
        for (auto& worker : workers)
            worker.join();
    }
    Candidate best;
    for (const auto& candidate : per_capacity)
        if (candidate.better_than(best))
            best = candidate;
    return best;
}

DesignPoint optimize_impl(const TLoadDistribution& dist, const NoiseModel& noise,
                          const SearchConstraints& constraints,
                          const CongestionModel& congestion, bool fix_single_factory) {
    noise.validate();
    const int level_lo = min_feasible_level(noise, constraints);
    const int level_hi = constraints.search_all_levels ? constraints.l_max : level_lo;
    std::uint64_t k_max = constraints.k_max;
    if (k_max == 0)
        k_max = std::max<std::uint64_t>(1, dist.t_peak());

    Candidate best;
    for (int level = level_lo; level <= level_hi; ++level) {
        Candidate candidate =
            search_level(dist, noise, constraints, congestion, level, k_max, fix_single_factory);
        if (candidate.better_than(best))
            best = candidate;
    }
    if (!best.valid)
        throw Infeasible("no design point satisfies the constraints");
    return best.point;
}

// Smallest level at which a fixed (K, X) meets the error target.
int min_feasible_level_for(const FactoryArchitecture& base, const NoiseModel& noise,
                           const SearchConstraints& constraints, bool require_yield) {
    for (int level = 1; level <= constraints.l_max; ++level) {
        FactoryArchitecture arch = base;
        arch.levels = static_cast<std::uint32_t>(level);
        if (round_error(arch, noise, level) > noise.target_error())
            continue;
        if (require_yield && !(noise.eps_inject < yield_threshold(arch)))
            continue;
        return level;
    }
    throw NoFeasibleLevel("architecture cannot reach the target error by level " +
                          std::to_string(constraints.l_max));
}

}  // namespace

DesignPoint optimize(const TLoadDistribution& dist, const NoiseModel& noise,
                     const SearchConstraints& constraints, const CongestionModel& congestion) {
    return optimize_impl(dist, noise, constraints, congestion, false);
}

DesignPoint preset(PresetKind kind, const TLoadDistribution& dist, const NoiseModel& noise,
                   const SearchConstraints& constraints, const CongestionModel& congestion) {
    noise.validate();
    switch (kind) {
        case PresetKind::optimized_unified:
            return optimize_impl(dist, noise, constraints, congestion, true);
        case PresetKind::optimized_distributed:
            return optimize_impl(dist, noise, constraints, congestion, false);
        case PresetKind::surplus:
        case PresetKind::singlet:
            break;
    }
    FactoryArchitecture arch;
    arch.factory_count = 1;
    arch.capacity = kind == PresetKind::surplus ? std::max<std::uint64_t>(1, dist.t_peak()) : 1;
    arch.levels = static_cast<std::uint32_t>(min_feasible_level_for(
        arch, noise, constraints, constraints.auto_escalate_levels));
    if (constraints.enforce_protocol_threshold && !constraints.auto_escalate_levels &&
        arch.capacity_ratio() > protocol_ratio_cap(noise.eps_inject)) {
        throw Infeasible(std::string(preset_name(kind)) +
                         " preset exceeds the protocol threshold K/X <= (1-8e)/(3e)");
    }
    return evaluate_design(arch, dist, noise, congestion, constraints.distance_cap);
}

}  // namespace msfab
