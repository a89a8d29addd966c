#pragma once

// Closed-form error, yield, count, area and timing model of single- and
// multi-level Bravyi-Haah magic-state distillation factories on a surface
// code. All functions here are pure; they can be called concurrently.

#include <cstdint>
#include <span>
#include <vector>

#include "msfab/errors.hpp"

namespace msfab {

// The (3k+8 -> k) distillation circuit. The output count is real-valued in
// the analytical model; the lattice simulator restricts it to integers.
struct BravyiHaahProtocol {
    double output_count = 1.0;  // k >= 1

    double input_count() const { return 3.0 * output_count + 8.0; }
};

struct NoiseModel {
    double eps_in = 1e-4;            // physical gate error rate
    double eps_inject = 1e-4;        // raw injected magic-state error rate
    double p_success_target = 0.5;   // desired application success probability
    double n_gates = 1.0;            // logical gate count of the application

    // Required logical error per gate: P_L <= P_s / N_gates.
    double target_error() const { return p_success_target / n_gates; }

    void validate() const;
};

// A factory design point: total output capacity K, factory count X, and the
// number of block-code distillation rounds l executed per cycle.
struct FactoryArchitecture {
    std::uint64_t capacity = 1;      // K, magic states per distillation cycle (all factories)
    std::uint32_t factory_count = 1; // X, identical distributed factories
    std::uint32_t levels = 1;        // l, rounds per cycle

    // Per-round protocol output k = (K/X)^(1/l).
    double round_output_count() const;
    double capacity_ratio() const {  // K/X
        return static_cast<double>(capacity) / static_cast<double>(factory_count);
    }

    void validate() const;  // 1 <= X <= K, k >= 1
};

struct RoundProfile {
    int round = 1;               // r in [1, l]
    double eps_out = 0.0;        // achieved output error after round r
    int code_distance = 3;       // odd, >= 3
    double area_logical = 0.0;   // logical qubits, all factories
    double area_physical = 0.0;  // area_logical * d_r^2
};

struct ResourceEstimate {
    double area_physical_qubits = 0.0;
    double total_cycles = 0.0;   // surface-code cycles
    double volume = 0.0;         // area * time
};

// P_L = d * (100*eps_in)^((d+1)/2). Not clamped; may exceed 1 when the
// formula is not in its suppression regime.
double logical_error_rate(int code_distance, double eps_in);

inline constexpr int kDefaultDistanceCap = 1001;

// Smallest odd d >= 3 with logical_error_rate(d) <= eps_target.
int solve_code_distance(double eps_in, double eps_target,
                        int distance_cap = kDefaultDistanceCap);

// One round of distillation: eps_out = (1+3k) * eps^2.
double bh_output_error(const BravyiHaahProtocol& protocol, double eps);

// Input error above which distillation stops improving: 1/(3k+1).
double bh_error_threshold(const BravyiHaahProtocol& protocol);

// First-order success probability 1 - (3k+8)*eps, clamped at 0.
double bh_success_prob(const BravyiHaahProtocol& protocol, double eps);

// Output error after round r of an l-level factory:
// eps_r = (1 + 3k)^(2^r - 1) * eps_inject^(2^r), k = (K/X)^(1/l).
double round_error(const FactoryArchitecture& arch, const NoiseModel& noise, int round);

// Yield-adjusted output K_output = K * prod_r max(0, 1 - (3k+8)*eps_{r-1}).
double effective_output(const FactoryArchitecture& arch, const NoiseModel& noise);

// Injected error above which effective_output collapses to 0: 1/(3k+8).
double yield_threshold(const FactoryArchitecture& arch);

// Total protocol instances in an l-level block code: sum_r k^(r-1) n^(l-r).
double protocol_count(const BravyiHaahProtocol& protocol, int levels);

// Physical-qubit area of round r: X * k^(r-1) * (3k+8)^(l-r) * (6k+14) * d_r^2.
double round_area(const FactoryArchitecture& arch, int round, int code_distance);

// Round-1 upper bound locked for the whole cycle:
// X * (3k+8)^(l-1) * (6k+14) * d_1^2.
double factory_area(const FactoryArchitecture& arch, std::span<const RoundProfile> rounds);
double factory_area(const FactoryArchitecture& arch, int round1_distance);

// T_distill = 11 * sum_r d_r, in surface-code cycles.
double distill_time(std::span<const int> code_distances);

// Per-round achieved errors, distances and areas for a design. Distances are
// solved minimally against each round's output error, except the final round
// which only needs the application target error.
std::vector<RoundProfile> compute_round_profiles(const FactoryArchitecture& arch,
                                                 const NoiseModel& noise,
                                                 int distance_cap = kDefaultDistanceCap);

}  // namespace msfab
