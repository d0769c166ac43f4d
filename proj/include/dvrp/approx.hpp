#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvrp/decomposition.hpp"
#include "dvrp/instance.hpp"
#include "dvrp/rational.hpp"

namespace dvrp {

// Gamma = ceil(1 / epsilon^2), exact.
int gamma_from_epsilon(const Rat& epsilon);

struct ApproxConfig {
    // Must satisfy epsilon^2 <= 1/20, so the derived gamma is at least 20.
    Rat epsilon = Rat(1, 5);
    // Overrides the derived gamma; meant for exercising small decompositions.
    std::optional<int> gamma_override;
    // Also return one tour set realizing the reported count.
    bool materialize_tours = false;
    // Solve independent components on the OpenMP worker pool. The serial
    // path computes the identical report and is kept for testing.
    bool parallel = true;

    int gamma() const;
};

struct ComponentOutcome {
    bool leaf = true;
    bool big = false;
    VertexId root_vertex = -1;  // vertex of the normalized tree
    std::size_t edge_count = 0;
    int local_tours = 0;
};

struct ApproxReport {
    long long total_tours = 0;
    std::vector<ComponentOutcome> per_component;
    int gamma_used = 0;
    std::map<std::string, double> timings_ms;
    // External terminal ids per tour; filled when materialize_tours is set.
    std::vector<std::vector<long long>> tours;
};

// Normalizes, decomposes with the configured gamma, solves every component
// exactly and sums the per-component tour counts. The result is always
// achievable by an explicit tour set, hence at least the optimum.
ApproxReport approx_solve(const RoutingInstance& inst, const ApproxConfig& cfg = {});

// Checks a materialized solution: every terminal covered, every tour's
// minimal closed walk within the bound. Violations are returned, not thrown.
std::vector<std::string> verify_solution(const RoutingInstance& inst,
                                         const std::vector<std::vector<long long>>& tours);

}  // namespace dvrp
