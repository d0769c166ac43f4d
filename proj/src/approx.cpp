#include "dvrp/approx.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dvrp {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct ComponentSolution {
    int tours = 0;
    std::vector<std::vector<long long>> materialized;
};

ComponentSolution solve_component(const NormalizedInstance& norm, const RoutingInstance& input,
                                  const Component& comp, int gamma, bool materialize) {
    ComponentSolution result;
    if (comp.terminals.empty() && !(comp.edges.empty() && norm.tree.terminal[comp.root_vertex]))
        return result;
    LocalInstance local = component_local_instance(norm, comp);
    if (!materialize) {
        auto tours = solve_bounded(local.instance, gamma);
        if (!tours.has_value())
            throw Error("component rooted at vertex " +
                        std::to_string(norm.tree.external_id[comp.root_vertex]) +
                        " needs more than gamma tours; the decomposition is broken");
        result.tours = *tours;
        return result;
    }
    auto tours = reconstruct_tours(local.instance, gamma);
    if (!tours.has_value())
        throw Error("component rooted at vertex " +
                    std::to_string(norm.tree.external_id[comp.root_vertex]) +
                    " needs more than gamma tours; the decomposition is broken");
    result.tours = static_cast<int>(tours->size());
    for (const auto& tour : *tours) {
        std::vector<long long> ids;
        for (VertexId v : tour) {
            // local normalized vertex -> local raw vertex -> normalized tree
            // vertex -> input vertex -> external id
            VertexId raw_local = local.instance.source_vertex[v];
            VertexId norm_vertex = local.to_parent[raw_local];
            VertexId input_vertex = norm.source_vertex[norm_vertex];
            ids.push_back(input.external_id[input_vertex]);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        result.materialized.push_back(std::move(ids));
    }
    return result;
}

}  // namespace

int gamma_from_epsilon(const Rat& epsilon) {
    if (!(epsilon > Rat(0))) throw ContractError("epsilon must be positive");
    const __int128 p = epsilon.num();
    const __int128 q = epsilon.den();
    const __int128 gamma = (q * q + p * p - 1) / (p * p);
    if (gamma > 1'000'000'000) throw OverflowError("gamma from epsilon exceeds practical range");
    return static_cast<int>(gamma);
}

int ApproxConfig::gamma() const {
    if (gamma_override.has_value()) {
        if (*gamma_override < 1) throw ContractError("gamma override must be positive");
        return *gamma_override;
    }
    return gamma_from_epsilon(epsilon);
}

ApproxReport approx_solve(const RoutingInstance& inst, const ApproxConfig& cfg) {
    // epsilon^2 <= 1/20 keeps the derived gamma at 20 or more.
    {
        const __int128 p = cfg.epsilon.num();
        const __int128 q = cfg.epsilon.den();
        if (!(cfg.epsilon > Rat(0)) || 20 * p * p > q * q)
            throw ContractError("epsilon must lie in (0, 1/sqrt(20)]");
    }
    ApproxReport report;
    report.gamma_used = cfg.gamma();

    auto t0 = std::chrono::steady_clock::now();
    NormalizedInstance norm = normalize(inst);
    report.timings_ms["normalize"] = ms_since(t0);

    auto t1 = std::chrono::steady_clock::now();
    Decomposition decomp = decompose(norm, report.gamma_used);
    report.timings_ms["decompose"] = ms_since(t1);

    auto t2 = std::chrono::steady_clock::now();
    const auto count = decomp.components.size();
    std::vector<ComponentSolution> solved(count);
    std::exception_ptr failure;
    if (cfg.parallel && count > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::size_t i = 0; i < count; ++i) {
            try {
                solved[i] = solve_component(norm, inst, decomp.components[i], report.gamma_used,
                                            cfg.materialize_tours);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (!failure) failure = std::current_exception();
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            solved[i] = solve_component(norm, inst, decomp.components[i], report.gamma_used,
                                        cfg.materialize_tours);
    }
    if (failure) std::rethrow_exception(failure);
    report.timings_ms["solve"] = ms_since(t2);

    for (std::size_t i = 0; i < count; ++i) {
        const Component& comp = decomp.components[i];
        ComponentOutcome outcome;
        outcome.leaf = comp.is_leaf();
        outcome.big = comp.is_big;
        outcome.root_vertex = comp.root_vertex;
        outcome.edge_count = comp.edges.size();
        outcome.local_tours = solved[i].tours;
        report.per_component.push_back(outcome);
        report.total_tours += solved[i].tours;
        for (auto& tour : solved[i].materialized) report.tours.push_back(std::move(tour));
    }
    return report;
}

std::vector<std::string> verify_solution(const RoutingInstance& inst,
                                         const std::vector<std::vector<long long>>& tours) {
    std::vector<std::string> violations;
    std::unordered_map<long long, VertexId> by_id;
    for (std::size_t v = 0; v < inst.vertex_count(); ++v)
        by_id.emplace(inst.external_id[v], static_cast<VertexId>(v));

    std::unordered_set<long long> covered;
    for (std::size_t i = 0; i < tours.size(); ++i) {
        std::vector<VertexId> vertices;
        for (long long id : tours[i]) {
            auto it = by_id.find(id);
            if (it == by_id.end()) {
                violations.push_back("tour " + std::to_string(i) + " visits unknown vertex " +
                                     std::to_string(id));
                continue;
            }
            if (!inst.is_terminal(it->second)) {
                violations.push_back("tour " + std::to_string(i) + " lists non-terminal vertex " +
                                     std::to_string(id));
                continue;
            }
            vertices.push_back(it->second);
            covered.insert(id);
        }
        const long long len = 2 * steiner_weight(inst, inst.root, vertices);
        if (len > inst.distance_bound)
            violations.push_back("tour " + std::to_string(i) + " has length " +
                                 std::to_string(len) + ", exceeding D = " +
                                 std::to_string(inst.distance_bound));
    }
    for (VertexId t : inst.terminal_list())
        if (!covered.count(inst.external_id[t]))
            violations.push_back("terminal " + std::to_string(inst.external_id[t]) +
                                 " is uncovered");
    return violations;
}

}  // namespace dvrp
