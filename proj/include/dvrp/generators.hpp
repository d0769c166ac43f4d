#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dvrp/instance.hpp"

namespace dvrp {

// Parameters of the tight worst-case family: k component types, each a star
// of gamma * u_i terminals at edge weight x_i = k u_{k+1} / (u_i + 1) + 1,
// with u_k / u_i stars of type i hanging off the depot by weight-0 edges and
// D = 2 k u_{k+1}. All derived quantities are exact integers.
struct LowerBoundParams {
    int k = 1;
    int gamma = 1;
};

struct LowerBoundInfo {
    long long distance_bound = 0;                 // 2 k u_{k+1}
    std::vector<long long> edge_weight;           // x_i per type, i = 1..k
    std::vector<long long> components_per_type;   // u_k / u_i
    std::vector<long long> terminals_per_component;  // gamma * u_i
    long long tours_per_component = 0;            // gamma
};

LowerBoundInfo lower_bound_info(const LowerBoundParams& params);
RoutingInstance gen_lower_bound(const LowerBoundParams& params);

// (solver tour count, certified optimum upper bound) for the family:
// (gamma * u_k * sum 1/u_i, gamma * u_k), both exact integers.
std::pair<long long, long long> expected_lb_behavior(const LowerBoundParams& params);

// Reproducible random instance. The depth policy is lambda in half units
// (4..8 meaning 2.0..4.0); D = ceil(lambda * max terminal depth), which
// keeps every terminal reachable.
struct RandomSpec {
    std::uint64_t seed = 0;
    int terminals = 1;
    long long max_weight = 5;
    int depth_policy_halves = 6;
};

RoutingInstance gen_random(const RandomSpec& spec);

// Star reduction from bin packing: one terminal per item at edge weight
// a_i, with D = 2 * capacity. Optimal tour count equals the optimal offline
// bin count. Sizes must lie in [0, capacity].
RoutingInstance binpack_to_dvrp(long long capacity, const std::vector<long long>& sizes);

}  // namespace dvrp
