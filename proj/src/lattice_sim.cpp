#include "msfab/lattice_sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <stdexcept>

namespace msfab {

namespace {

// Integer per-round protocol output; the simulator cannot split states.
int integer_round_output(const FactoryArchitecture& arch) {
    arch.validate();
    if (arch.capacity % arch.factory_count != 0)
        throw std::invalid_argument("simulator requires X to divide K");
    const std::uint64_t per_factory = arch.capacity / arch.factory_count;
    const auto k = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(per_factory),
                              1.0 / static_cast<double>(arch.levels))));
    std::uint64_t check = 1;
    for (std::uint32_t r = 0; r < arch.levels; ++r)
        check *= k;
    if (k < 1 || check != per_factory)
        throw std::invalid_argument("simulator requires integer k with K = X * k^levels");
    return static_cast<int>(k);
}

std::uint64_t region_tile_count(int k, int levels) {
    std::uint64_t tiles = 6ull * k + 14ull;
    for (int r = 1; r < levels; ++r)
        tiles *= 3ull * k + 8ull;
    return tiles;
}

int manhattan(const Tile& a, const Tile& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

std::vector<Tile> perimeter_clockwise(const Rect& r) {
    std::vector<Tile> out;
    if (r.width == 1 && r.height == 1) {
        out.push_back({r.x, r.y});
        return out;
    }
    for (int x = r.x; x < r.x + r.width; ++x)
        out.push_back({x, r.y});
    for (int y = r.y + 1; y < r.y + r.height; ++y)
        out.push_back({r.x + r.width - 1, y});
    if (r.height > 1)
        for (int x = r.x + r.width - 2; x >= r.x; --x)
            out.push_back({x, r.y + r.height - 1});
    if (r.width > 1)
        for (int y = r.y + r.height - 2; y >= r.y + 1; --y)
            out.push_back({r.x, y});
    return out;
}

}  // namespace

LatticeLayout build_layout(const FactoryArchitecture& arch, int n_data_qubits,
                           Placement placement, int width, int height) {
    if (n_data_qubits < 1)
        throw std::invalid_argument("need at least one data qubit");
    if (width < 3 || height < 3)
        throw std::invalid_argument("lattice too small");
    const int k = integer_round_output(arch);
    const auto tiles = region_tile_count(k, static_cast<int>(arch.levels));
    const int region_w = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(tiles))));
    const int region_h = static_cast<int>((tiles + region_w - 1) / region_w);

    LatticeLayout layout;
    layout.width = width;
    layout.height = height;

    const int x_count = static_cast<int>(arch.factory_count);
    if (placement == Placement::central && x_count != 1)
        throw std::invalid_argument("central placement is for a single factory");
    const int grid_cols = placement == Placement::central
                              ? 1
                              : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(x_count))));
    const int grid_rows = (x_count + grid_cols - 1) / grid_cols;
    for (int i = 0; i < x_count; ++i) {
        const int col = i % grid_cols;
        const int row = i / grid_cols;
        // region centered within its mesh cell (whole grid when X = 1)
        const int x0 = ((2 * col + 1) * width - region_w * grid_cols) / (2 * grid_cols);
        const int y0 = ((2 * row + 1) * height - region_h * grid_rows) / (2 * grid_rows);
        Rect region{x0, y0, region_w, region_h};
        // Keep one free tile of margin so every perimeter port can route out.
        if (region.x < 1 || region.y < 1 || region.x + region.width > width - 1 ||
            region.y + region.height > height - 1)
            throw DoesNotFit("factory region does not fit on the lattice");
        for (const Rect& other : layout.factory_regions) {
            const bool gap = region.x >= other.x + other.width + 1 ||
                             other.x >= region.x + region.width + 1 ||
                             region.y >= other.y + other.height + 1 ||
                             other.y >= region.y + region.height + 1;
            if (!gap)
                throw DoesNotFit("factory regions overlap");
        }
        layout.factory_regions.push_back(region);
    }

    const auto ports_per_factory = arch.capacity / arch.factory_count;
    for (int f = 0; f < x_count; ++f) {
        const auto perimeter = perimeter_clockwise(layout.factory_regions[f]);
        if (ports_per_factory > perimeter.size())
            throw DoesNotFit("more output ports than perimeter tiles");
        for (std::uint64_t j = 0; j < ports_per_factory; ++j) {
            const auto idx = static_cast<std::size_t>(j * perimeter.size() / ports_per_factory);
            layout.output_ports.push_back({perimeter[idx], f});
        }
    }

    for (int y = 0; y < height && static_cast<int>(layout.data_tiles.size()) < n_data_qubits; ++y) {
        for (int x = 0; x < width && static_cast<int>(layout.data_tiles.size()) < n_data_qubits;
             ++x) {
            bool inside = false;
            for (const Rect& region : layout.factory_regions)
                if (region.contains(x, y)) {
                    inside = true;
                    break;
                }
            if (!inside)
                layout.data_tiles.push_back({x, y});
        }
    }
    if (static_cast<int>(layout.data_tiles.size()) < n_data_qubits)
        throw DoesNotFit("not enough free tiles for the data qubits");
    return layout;
}

std::vector<std::vector<Request>> bind_requests(const std::vector<std::uint32_t>& schedule,
                                                const LatticeLayout& layout) {
    std::vector<std::vector<Request>> bound;
    bound.reserve(schedule.size());
    const auto n_data = layout.data_tiles.size();
    if (n_data == 0)
        throw std::invalid_argument("layout has no data tiles");
    std::size_t cursor = 0;
    for (std::uint32_t t : schedule) {
        std::vector<Request> step;
        step.reserve(t);
        for (std::uint32_t j = 0; j < t; ++j) {
            Request request;
            request.data_tile = static_cast<int>(cursor % n_data);
            ++cursor;
            const Tile& target = layout.data_tiles[request.data_tile];
            int best = std::numeric_limits<int>::max();
            for (std::size_t p = 0; p < layout.output_ports.size(); ++p) {
                const int dist = manhattan(layout.output_ports[p].tile, target);
                if (dist < best) {
                    best = dist;
                    request.port = static_cast<int>(p);
                }
            }
            step.push_back(request);
        }
        bound.push_back(std::move(step));
    }
    return bound;
}

std::optional<int> reallocate_state(const Request& request, const LatticeLayout& layout,
                                    const std::vector<bool>& port_available) {
    if (port_available[request.port])
        return request.port;
    const Tile& target = layout.data_tiles[request.data_tile];
    int best_port = -1;
    int best_dist = std::numeric_limits<int>::max();
    for (std::size_t p = 0; p < layout.output_ports.size(); ++p) {
        if (!port_available[p])
            continue;
        const int dist = manhattan(layout.output_ports[p].tile, target);
        if (dist < best_dist) {
            best_dist = dist;
            best_port = static_cast<int>(p);
        }
    }
    if (best_port < 0)
        return std::nullopt;
    return best_port;
}

namespace {

struct PendingRequest {
    Request request;
    int timestep = 0;
    bool waiting_replenish = false;
    int reserved_port = -1;
    bool in_flight = false;
    bool done = false;
};

struct Braid {
    std::vector<int> tiles;
    std::uint64_t end_cycle = 0;
    int request = 0;
};

class Tracer {
public:
    Tracer(std::ostream* out, std::uint64_t& counter) : out_(out), counter_(counter) {}

    void emit(std::uint64_t cycle, const char* kind, int factory, int port, int tile) {
        ++counter_;
        if (!out_)
            return;
        char buf[160];
        int len = std::snprintf(buf, sizeof buf, "{\"cycle\":%llu,\"kind\":\"%s\"",
                                static_cast<unsigned long long>(cycle), kind);
        if (factory >= 0)
            len += std::snprintf(buf + len, sizeof buf - len, ",\"factory\":%d", factory);
        if (port >= 0)
            len += std::snprintf(buf + len, sizeof buf - len, ",\"port\":%d", port);
        if (tile >= 0)
            len += std::snprintf(buf + len, sizeof buf - len, ",\"tile\":%d", tile);
        std::snprintf(buf + len, sizeof buf - len, "}\n");
        *out_ << buf;
    }

private:
    std::ostream* out_;
    std::uint64_t& counter_;
};

}  // namespace

SimResult run(const std::vector<std::vector<Request>>& schedule, const LatticeLayout& layout,
              const SimConfig& config, std::ostream* trace) {
    integer_round_output(config.arch);  // validates the architecture
    if (config.code_distance < 3 || config.code_distance % 2 == 0)
        throw std::invalid_argument("code distance must be odd and >= 3");
    if (config.t_distill_cycles < 1)
        throw std::invalid_argument("t_distill_cycles must be positive");

    const int width = layout.width;
    const int height = layout.height;
    const int n_tiles = width * height;
    const auto hold_base = static_cast<std::uint64_t>(2 * config.code_distance + 2);

    std::vector<bool> blocked(n_tiles, false);  // static factory regions
    for (const Rect& region : layout.factory_regions)
        for (int y = region.y; y < region.y + region.height; ++y)
            for (int x = region.x; x < region.x + region.width; ++x)
                blocked[y * width + x] = true;

    std::vector<bool> occupied(n_tiles, false);  // active braids
    const auto n_ports = layout.output_ports.size();
    std::vector<bool> port_has_state(n_ports, false);
    std::vector<bool> port_reserved(n_ports, false);

    SimResult result;
    Tracer tracer(trace, result.trace_events);
    std::mt19937_64 rng(config.seed);

    std::vector<PendingRequest> requests;
    std::vector<std::size_t> step_first(schedule.size() + 1, 0);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        for (const Request& r : schedule[i]) {
            if (r.data_tile < 0 || r.data_tile >= static_cast<int>(layout.data_tiles.size()))
                throw std::invalid_argument("request names an unknown data tile");
            if (r.port < 0 || r.port >= static_cast<int>(n_ports))
                throw std::invalid_argument("request names an unknown port");
            requests.push_back({r, static_cast<int>(i), false, -1, false, false});
        }
        step_first[i + 1] = requests.size();
    }
    result.per_timestep_latency.assign(schedule.size(), 0);
    if (schedule.empty())
        return result;

    std::vector<Braid> active;
    std::vector<int> bfs_parent(n_tiles, -1);
    std::vector<int> bfs_queue;
    bfs_queue.reserve(n_tiles);

    auto tile_id = [width](const Tile& t) { return t.y * width + t.x; };

    // Shortest free path from the port tile to the data tile. The port tile
    // is a legal source even though it sits inside a blocked region.
    auto route = [&](int from, int to, bool ignore_braids) -> std::vector<int> {
        if (occupied[from] && !ignore_braids)
            return {};
        std::fill(bfs_parent.begin(), bfs_parent.end(), -1);
        bfs_queue.clear();
        bfs_parent[from] = from;
        bfs_queue.push_back(from);
        for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
            const int cur = bfs_queue[head];
            if (cur == to)
                break;
            const int cx = cur % width;
            const int cy = cur / width;
            const int neighbors[4] = {cur + 1, cur - 1, cur + width, cur - width};
            const bool legal[4] = {cx + 1 < width, cx - 1 >= 0, cy + 1 < height, cy - 1 >= 0};
            for (int i = 0; i < 4; ++i) {
                if (!legal[i])
                    continue;
                const int next = neighbors[i];
                if (bfs_parent[next] != -1 || blocked[next])
                    continue;
                if (occupied[next] && !ignore_braids)
                    continue;
                bfs_parent[next] = cur;
                bfs_queue.push_back(next);
            }
        }
        if (bfs_parent[to] == -1)
            return {};
        std::vector<int> path;
        for (int cur = to; cur != from; cur = bfs_parent[cur])
            path.push_back(cur);
        path.push_back(from);
        std::reverse(path.begin(), path.end());
        return path;
    };

    std::size_t activated_steps = 0;
    std::vector<std::uint64_t> step_start(schedule.size(), 0);
    std::vector<std::uint64_t> step_done_at(schedule.size(), 0);
    std::vector<std::size_t> step_remaining(schedule.size(), 0);
    for (std::size_t i = 0; i < schedule.size(); ++i)
        step_remaining[i] = schedule[i].size();

    std::uint64_t available_states = 0;
    std::uint32_t concurrent = 0;
    std::uint64_t cycle = 0;
    constexpr std::uint64_t kCycleCap = 1ull << 40;

    // Factories run continuously; the first batch is ready when the program
    // starts and epochs follow every t_distill cycles.
    for (std::size_t p = 0; p < n_ports; ++p) {
        port_has_state[p] = true;
        ++result.states_produced;
        ++available_states;
        tracer.emit(0, "produce", layout.output_ports[p].factory, static_cast<int>(p), -1);
    }

    while (true) {
        // 1. release braids completing now
        for (std::size_t b = 0; b < active.size();) {
            if (active[b].end_cycle == cycle) {
                for (int t : active[b].tiles)
                    occupied[t] = false;
                PendingRequest& pr = requests[active[b].request];
                pr.done = true;
                tracer.emit(cycle, "complete", -1, -1, pr.request.data_tile);
                auto& remaining = step_remaining[pr.timestep];
                if (--remaining == 0)
                    step_done_at[pr.timestep] = cycle;
                active[b] = active.back();
                active.pop_back();
                --concurrent;
            } else {
                ++b;
            }
        }

        // 2. replenish every t_distill cycles
        if (cycle > 0 && cycle % config.t_distill_cycles == 0) {
            for (std::size_t p = 0; p < n_ports; ++p) {
                if (port_has_state[p]) {
                    ++result.states_expired;
                    --available_states;
                }
                port_has_state[p] = true;
                ++result.states_produced;
                ++available_states;
                tracer.emit(cycle, "produce", layout.output_ports[p].factory,
                            static_cast<int>(p), -1);
            }
            for (PendingRequest& pr : requests)
                pr.waiting_replenish = false;
        }

        // 3. timestep barrier: admit the next timestep once the current one is done
        if (activated_steps < schedule.size() &&
            (activated_steps == 0 || step_remaining[activated_steps - 1] == 0)) {
            step_start[activated_steps] = cycle;
            if (step_remaining[activated_steps] == 0)
                step_done_at[activated_steps] = cycle;
            ++activated_steps;
        }

        // 4. serve pending requests in order. The timestep barrier admits a
        // new step only once the previous one completed, so only the newest
        // activated step can hold pending work.
        const std::size_t scan_begin = activated_steps > 0 ? step_first[activated_steps - 1] : 0;
        const std::size_t scan_end = step_first[activated_steps];
        std::vector<bool> port_available(n_ports);
        for (std::size_t p = 0; p < n_ports; ++p)
            port_available[p] = port_has_state[p] && !port_reserved[p];
        for (std::size_t ri = scan_begin; ri < scan_end; ++ri) {
            PendingRequest& pr = requests[ri];
            if (pr.done || pr.in_flight || pr.waiting_replenish)
                continue;
            if (pr.reserved_port < 0) {
                const auto claimed = reallocate_state(pr.request, layout, port_available);
                if (!claimed.has_value()) {
                    pr.waiting_replenish = true;
                    ++result.stall_events;
                    tracer.emit(cycle, "stall", -1, -1, pr.request.data_tile);
                    continue;
                }
                pr.reserved_port = *claimed;
                port_reserved[pr.reserved_port] = true;
                port_available[pr.reserved_port] = false;
            }
            const int from = tile_id(layout.output_ports[pr.reserved_port].tile);
            const int to = tile_id(layout.data_tiles[pr.request.data_tile]);
            auto path = route(from, to, false);
            if (path.empty()) {
                if (route(from, to, true).empty())
                    throw UnroutableRequest("data tile is permanently enclosed");
                ++result.reroute_events;
                tracer.emit(cycle, "reroute", -1, pr.reserved_port, pr.request.data_tile);
                continue;
            }
            port_has_state[pr.reserved_port] = false;
            port_reserved[pr.reserved_port] = false;
            --available_states;
            ++result.states_consumed;
            const bool needs_correction = (rng() & 1ull) != 0;
            const std::uint64_t hold = needs_correction ? 3 * hold_base : hold_base;
            for (int t : path)
                occupied[t] = true;
            active.push_back({std::move(path), cycle + hold, static_cast<int>(ri)});
            ++concurrent;
            result.max_concurrent_braids = std::max(result.max_concurrent_braids, concurrent);
            tracer.emit(cycle, "claim", layout.output_ports[pr.reserved_port].factory,
                        pr.reserved_port, pr.request.data_tile);
            pr.reserved_port = -1;
            pr.in_flight = true;
        }

        if (activated_steps == schedule.size() && step_remaining[schedule.size() - 1] == 0 &&
            active.empty())
            break;
        ++cycle;
        if (cycle > kCycleCap)
            throw Error("simulation exceeded the cycle cap");
    }

    for (std::size_t i = 0; i < schedule.size(); ++i) {
        result.per_timestep_latency[i] =
            static_cast<std::uint32_t>(step_done_at[i] - step_start[i]);
        result.total_cycles = std::max(result.total_cycles, step_done_at[i]);
    }
    assert(result.states_produced ==
           result.states_consumed + result.states_expired + available_states);
    return result;
}

std::uint64_t lower_bound_cycles(const std::vector<std::uint32_t>& schedule,
                                 const SimConfig& config) {
    std::uint64_t total_demand = 0;
    std::uint64_t busy_steps = 0;
    for (std::uint32_t t : schedule) {
        total_demand += t;
        if (t > 0)
            ++busy_steps;
    }
    if (total_demand == 0)
        return 0;
    const auto t_cnot = static_cast<std::uint64_t>(2 * config.code_distance + 2);
    const std::uint64_t capacity = config.arch.capacity;
    // One batch is ready at cycle 0; each further batch costs one full
    // distillation cycle. The last braid still needs its T_cnot hold.
    const std::uint64_t epochs = (total_demand + capacity - 1) / capacity;
    const std::uint64_t production_bound = (epochs - 1) * config.t_distill_cycles + t_cnot;
    const std::uint64_t braid_bound = busy_steps * t_cnot;
    return std::max(production_bound, braid_bound);
}

}  // namespace msfab
