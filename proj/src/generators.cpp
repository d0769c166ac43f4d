#include "dvrp/generators.hpp"

#include <algorithm>

#include "dvrp/binpack.hpp"
#include "dvrp/rng.hpp"

namespace dvrp {

LowerBoundInfo lower_bound_info(const LowerBoundParams& params) {
    if (params.k < 1 || params.gamma < 1) throw ContractError("k and gamma must be positive");
    const int k = params.k;
    const long long u_next = harmonic_u(k + 1);
    const long long u_k = harmonic_u(k);

    LowerBoundInfo info;
    if (__builtin_mul_overflow(2ll * k, u_next, &info.distance_bound))
        throw OverflowError("distance bound exceeds 64 bits");
    info.tours_per_component = params.gamma;
    for (int i = 1; i <= k; ++i) {
        const long long u_i = harmonic_u(i);
        if (u_next % (u_i + 1) != 0 || u_k % u_i != 0)
            throw Error("internal: sequence divisibility failed");
        long long x;
        if (__builtin_mul_overflow(static_cast<long long>(k), u_next / (u_i + 1), &x) ||
            __builtin_add_overflow(x, 1ll, &x))
            throw OverflowError("edge weight exceeds 64 bits");
        info.edge_weight.push_back(x);
        info.components_per_type.push_back(u_k / u_i);
        long long terms;
        if (__builtin_mul_overflow(static_cast<long long>(params.gamma), u_i, &terms))
            throw OverflowError("terminal count exceeds 64 bits");
        info.terminals_per_component.push_back(terms);
    }
    return info;
}

RoutingInstance gen_lower_bound(const LowerBoundParams& params) {
    const LowerBoundInfo info = lower_bound_info(params);

    RoutingInstance inst;
    inst.distance_bound = info.distance_bound;
    inst.root = 0;
    auto add_vertex = [&](VertexId parent, Weight w, bool terminal) {
        inst.parent.push_back(parent);
        inst.parent_weight.push_back(w);
        inst.external_id.push_back(static_cast<long long>(inst.parent.size()) - 1);
        inst.terminal.push_back(terminal ? 1 : 0);
        return static_cast<VertexId>(inst.parent.size() - 1);
    };
    add_vertex(-1, 0, false);  // depot
    for (int i = 0; i < params.k; ++i) {
        for (long long c = 0; c < info.components_per_type[static_cast<std::size_t>(i)]; ++c) {
            VertexId hub = add_vertex(0, 0, false);
            for (long long t = 0; t < info.terminals_per_component[static_cast<std::size_t>(i)];
                 ++t)
                add_vertex(hub, info.edge_weight[static_cast<std::size_t>(i)], true);
        }
    }
    inst.finalize();
    return inst;
}

std::pair<long long, long long> expected_lb_behavior(const LowerBoundParams& params) {
    const LowerBoundInfo info = lower_bound_info(params);
    const long long u_k = harmonic_u(params.k);
    long long algorithm_tours = 0;
    for (long long per_type : info.components_per_type) {
        long long add;
        if (__builtin_mul_overflow(per_type, static_cast<long long>(params.gamma), &add) ||
            __builtin_add_overflow(algorithm_tours, add, &algorithm_tours))
            throw OverflowError("tour count exceeds 64 bits");
        (void)add;
    }
    long long opt_upper;
    if (__builtin_mul_overflow(static_cast<long long>(params.gamma), u_k, &opt_upper))
        throw OverflowError("tour count exceeds 64 bits");
    return {algorithm_tours, opt_upper};
}

RoutingInstance gen_random(const RandomSpec& spec) {
    if (spec.terminals < 1) throw ContractError("need at least one terminal");
    if (spec.max_weight < 0) throw ContractError("max weight must be non-negative");
    if (spec.depth_policy_halves < 4 || spec.depth_policy_halves > 8)
        throw ContractError("depth policy is lambda in half units, 4..8");
    SplitMix64 rng(spec.seed);

    RoutingInstance inst;
    auto add_vertex = [&](VertexId parent, Weight w, bool terminal) {
        inst.parent.push_back(parent);
        inst.parent_weight.push_back(w);
        inst.external_id.push_back(static_cast<long long>(inst.parent.size()) - 1);
        inst.terminal.push_back(terminal ? 1 : 0);
        return static_cast<VertexId>(inst.parent.size() - 1);
    };
    add_vertex(-1, 0, false);

    const int skeleton = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.terminals) + 1));
    for (int i = 1; i < skeleton; ++i)
        add_vertex(static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(i))),
                   rng.range(0, spec.max_weight), false);

    int placed = 0;
    while (placed < spec.terminals) {
        const auto count = static_cast<std::uint64_t>(inst.parent.size());
        if (rng.below(4) == 0) {
            // Mark an existing vertex; normalization will pendant it if needed.
            const auto v = static_cast<VertexId>(rng.below(count));
            if (inst.terminal[static_cast<std::size_t>(v)]) continue;
            inst.terminal[static_cast<std::size_t>(v)] = 1;
        } else {
            add_vertex(static_cast<VertexId>(rng.below(count)), rng.range(0, spec.max_weight),
                       true);
        }
        ++placed;
    }
    inst.finalize();

    long long max_depth = 0;
    for (VertexId t : inst.terminal_list()) max_depth = std::max(max_depth, inst.depth[t]);
    inst.distance_bound =
        std::max<long long>(1, (max_depth * spec.depth_policy_halves + 1) / 2);
    return inst;
}

RoutingInstance binpack_to_dvrp(long long capacity, const std::vector<long long>& sizes) {
    if (capacity < 1) throw ContractError("bin capacity must be positive");
    for (long long a : sizes)
        if (a < 0 || a > capacity)
            throw ContractError("item size " + std::to_string(a) + " is outside [0, capacity]");
    RoutingInstance inst;
    inst.distance_bound = 2 * capacity;
    inst.root = 0;
    inst.parent.assign(sizes.size() + 1, 0);
    inst.parent_weight.assign(sizes.size() + 1, 0);
    inst.external_id.assign(sizes.size() + 1, 0);
    inst.terminal.assign(sizes.size() + 1, 1);
    inst.parent[0] = -1;
    inst.terminal[0] = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        inst.parent_weight[i + 1] = sizes[i];
        inst.external_id[i + 1] = static_cast<long long>(i) + 1;
    }
    inst.finalize();
    return inst;
}

}  // namespace dvrp
