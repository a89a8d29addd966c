#pragma once

// Cycle-level discrete-time simulator of a surface-code lattice with
// black-boxed factory regions. Validates the analytical latency model:
// factories replenish perimeter ports every distillation cycle, T requests
// claim states and hold braid paths, contention stalls and routing conflicts
// emerge from the grid.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "msfab/distillation.hpp"
#include "msfab/errors.hpp"

namespace msfab {

struct Tile {
    int x = 0;
    int y = 0;

    bool operator==(const Tile&) const = default;
};

struct Rect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + width && py >= y && py < y + height;
    }
};

struct Port {
    Tile tile;
    int factory = 0;
};

enum class Placement { central, mesh };

struct LatticeLayout {
    int width = 0;
    int height = 0;
    std::vector<Rect> factory_regions;
    std::vector<Port> output_ports;  // port id = index
    std::vector<Tile> data_tiles;
};

struct SimConfig {
    FactoryArchitecture arch;       // requires integer per-round k: K = X*k^l
    int code_distance = 3;          // d, braids hold 2d+2 cycles
    std::uint32_t t_distill_cycles = 33;  // replenishment period, from distill_time
    std::uint64_t seed = 0;
};

struct SimResult {
    std::uint64_t total_cycles = 0;
    std::vector<std::uint32_t> per_timestep_latency;
    std::uint64_t stall_events = 0;
    std::uint64_t reroute_events = 0;
    std::uint32_t max_concurrent_braids = 0;
    // conservation accounting
    std::uint64_t states_produced = 0;
    std::uint64_t states_consumed = 0;
    std::uint64_t states_expired = 0;
    std::uint64_t trace_events = 0;

    bool operator==(const SimResult&) const = default;
};

// One T request: the data tile it targets and its statically assigned port.
struct Request {
    int data_tile = 0;   // index into layout.data_tiles
    int port = 0;        // index into layout.output_ports
};

// Deterministic layout: per-factory rectangles sized from the round-1
// logical footprint (3k+8)^(l-1) * (6k+14), centered (X = 1) or on a uniform
// mesh (X > 1); K/X ports spread evenly on each perimeter; data tiles fill
// the remaining area row-major.
LatticeLayout build_layout(const FactoryArchitecture& arch, int n_data_qubits,
                           Placement placement, int width, int height);

// Bind a per-timestep demand schedule to concrete requests: targets cycle
// through the data tiles, each request statically assigned its nearest port.
std::vector<std::vector<Request>> bind_requests(const std::vector<std::uint32_t>& schedule,
                                                const LatticeLayout& layout);

// Nearest available port by Manhattan distance from the request's data tile
// (ties: lowest port index starting from the assigned one); nullopt = stall.
std::optional<int> reallocate_state(const Request& request, const LatticeLayout& layout,
                                    const std::vector<bool>& port_available);

SimResult run(const std::vector<std::vector<Request>>& schedule, const LatticeLayout& layout,
              const SimConfig& config, std::ostream* trace = nullptr);

// Contention-only floor no simulation can beat: every consumed state waits
// for its production epoch and every nonempty timestep holds at least one
// braid for T_cnot cycles.
std::uint64_t lower_bound_cycles(const std::vector<std::uint32_t>& schedule,
                                 const SimConfig& config);

}  // namespace msfab
