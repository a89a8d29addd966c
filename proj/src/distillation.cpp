#include "msfab/distillation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace msfab {

void NoiseModel::validate() const {
    if (!(eps_in > 0.0 && eps_in < 1.0))
        throw std::invalid_argument("eps_in must be in (0, 1)");
    if (!(eps_inject > 0.0 && eps_inject < 1.0))
        throw std::invalid_argument("eps_inject must be in (0, 1)");
    if (!(p_success_target > 0.0 && p_success_target <= 1.0))
        throw std::invalid_argument("p_success_target must be in (0, 1]");
    if (!(n_gates >= 1.0))
        throw std::invalid_argument("n_gates must be >= 1");
    const double target = target_error();
    if (!(target > 0.0 && target <= 1.0))
        throw std::invalid_argument("target error P_s/N_gates must be in (0, 1]");
}

double FactoryArchitecture::round_output_count() const {
    return std::pow(capacity_ratio(), 1.0 / static_cast<double>(levels));
}

void FactoryArchitecture::validate() const {
    if (capacity < 1)
        throw std::invalid_argument("capacity K must be >= 1");
    if (factory_count < 1)
        throw std::invalid_argument("factory count X must be >= 1");
    if (levels < 1)
        throw std::invalid_argument("levels must be >= 1");
    if (factory_count > capacity)
        throw std::invalid_argument("factory count X must not exceed capacity K");
}

double logical_error_rate(int code_distance, double eps_in) {
    if (code_distance < 3 || code_distance % 2 == 0)
        throw std::invalid_argument("code distance must be odd and >= 3");
    if (eps_in < 0.0)
        throw std::invalid_argument("eps_in must be nonnegative");
    const double base = 100.0 * eps_in;
    const double exponent = (code_distance + 1) / 2;
    return code_distance * std::pow(base, exponent);
}

int solve_code_distance(double eps_in, double eps_target, int distance_cap) {
    if (!(eps_target > 0.0))
        throw std::invalid_argument("eps_target must be positive");
    if (100.0 * eps_in >= 1.0)
        throw NoConvergence("100*eps_in >= 1: logical error rate does not decay with distance");
    // a few ulps of slack so exact-boundary targets are not missed
    const double budget = eps_target * (1.0 + 8.0 * std::numeric_limits<double>::epsilon());
    for (int d = 3; d <= distance_cap; d += 2) {
        if (logical_error_rate(d, eps_in) <= budget)
            return d;
    }
    throw DistanceOverflow("required code distance exceeds cap of " +
                           std::to_string(distance_cap));
}

double bh_output_error(const BravyiHaahProtocol& protocol, double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("eps must be in [0, 1)");
    // Evaluation order keeps the threshold fixed point exact in floating point.
    return ((1.0 + 3.0 * protocol.output_count) * eps) * eps;
}

double bh_error_threshold(const BravyiHaahProtocol& protocol) {
    return 1.0 / (3.0 * protocol.output_count + 1.0);
}

double bh_success_prob(const BravyiHaahProtocol& protocol, double eps) {
    if (!(eps >= 0.0 && eps < 1.0))
        throw std::invalid_argument("eps must be in [0, 1)");
    const double p = 1.0 - protocol.input_count() * eps;
    return p > 0.0 ? p : 0.0;
}

double round_error(const FactoryArchitecture& arch, const NoiseModel& noise, int round) {
    if (round < 1 || round > static_cast<int>(arch.levels))
        throw std::invalid_argument("round out of range [1, levels]");
    const double k = arch.round_output_count();
    const double doublings = std::exp2(round);  // 2^r
    return std::pow(1.0 + 3.0 * k, doublings - 1.0) * std::pow(noise.eps_inject, doublings);
}

double effective_output(const FactoryArchitecture& arch, const NoiseModel& noise) {
    const double k = arch.round_output_count();
    const double n = 3.0 * k + 8.0;
    double output = static_cast<double>(arch.capacity);
    double eps_prev = noise.eps_inject;  // eps_0
    for (int r = 1; r <= static_cast<int>(arch.levels); ++r) {
        const double factor = 1.0 - n * eps_prev;
        if (factor <= 0.0)
            return 0.0;
        output *= factor;
        if (r < static_cast<int>(arch.levels))
            eps_prev = round_error(arch, noise, r);
    }
    return output;
}

double yield_threshold(const FactoryArchitecture& arch) {
    return 1.0 / (3.0 * arch.round_output_count() + 8.0);
}

double protocol_count(const BravyiHaahProtocol& protocol, int levels) {
    if (levels < 1)
        throw std::invalid_argument("levels must be >= 1");
    const double k = protocol.output_count;
    const double n = protocol.input_count();
    double total = 0.0;
    for (int r = 1; r <= levels; ++r)
        total += std::pow(k, r - 1) * std::pow(n, levels - r);
    return total;
}

double round_area(const FactoryArchitecture& arch, int round, int code_distance) {
    if (round < 1 || round > static_cast<int>(arch.levels))
        throw std::invalid_argument("round out of range [1, levels]");
    const double k = arch.round_output_count();
    const double n = 3.0 * k + 8.0;
    const int levels = static_cast<int>(arch.levels);
    const double logical = arch.factory_count * std::pow(k, round - 1) *
                           std::pow(n, levels - round) * (6.0 * k + 14.0);
    return logical * code_distance * static_cast<double>(code_distance);
}

double factory_area(const FactoryArchitecture& arch, int round1_distance) {
    const double k = arch.round_output_count();
    const double n = 3.0 * k + 8.0;
    const double logical = arch.factory_count *
                           std::pow(n, static_cast<int>(arch.levels) - 1) * (6.0 * k + 14.0);
    return logical * round1_distance * static_cast<double>(round1_distance);
}

double factory_area(const FactoryArchitecture& arch, std::span<const RoundProfile> rounds) {
    if (rounds.empty())
        throw std::invalid_argument("round profiles must be nonempty");
    return factory_area(arch, rounds.front().code_distance);
}

double distill_time(std::span<const int> code_distances) {
    if (code_distances.empty())
        throw std::invalid_argument("need at least one round distance");
    double sum = 0.0;
    for (int d : code_distances)
        sum += d;
    return 11.0 * sum;
}

std::vector<RoundProfile> compute_round_profiles(const FactoryArchitecture& arch,
                                                 const NoiseModel& noise, int distance_cap) {
    arch.validate();
    const int levels = static_cast<int>(arch.levels);
    std::vector<RoundProfile> profiles;
    profiles.reserve(levels);
    for (int r = 1; r <= levels; ++r) {
        RoundProfile profile;
        profile.round = r;
        profile.eps_out = round_error(arch, noise, r);
        // The delivered state only needs the application target; inner rounds
        // must actually reach their own output error.
        const double distance_target = (r == levels) ? noise.target_error() : profile.eps_out;
        profile.code_distance = solve_code_distance(noise.eps_in, distance_target, distance_cap);
        const double physical = round_area(arch, r, profile.code_distance);
        profile.area_physical = physical;
        profile.area_logical = physical / (profile.code_distance *
                                           static_cast<double>(profile.code_distance));
        profiles.push_back(profile);
    }
    return profiles;
}

}  // namespace msfab
