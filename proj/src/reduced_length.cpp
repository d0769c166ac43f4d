#include "dvrp/reduced_length.hpp"

#include <algorithm>
#include <map>

namespace dvrp {

namespace {

const Component& component_at(const Decomposition& decomp, int index) {
    if (index < 0 || static_cast<std::size_t>(index) >= decomp.components.size())
        throw ContractError("component index out of range");
    return decomp.components[static_cast<std::size_t>(index)];
}

bool strictly_below(const RoutingInstance& t, VertexId v, VertexId anc) {
    if (v == anc) return false;
    while (v != -1 && t.hops[v] > t.hops[anc]) v = t.parent[v];
    return v == anc;
}

Length subtour_length(const RoutingInstance& t, const Component& comp,
                      const std::vector<VertexId>& terminals, SubtourCategory category) {
    std::vector<VertexId> targets = terminals;
    if (category == SubtourCategory::passing) targets.push_back(*comp.exit_vertex);
    return 2 * steiner_weight(t, comp.root_vertex, targets);
}

}  // namespace

Subtour make_subtour(const NormalizedInstance& inst, const Decomposition& decomp, int component,
                     SubtourCategory category, const std::vector<VertexId>& terminals) {
    const Component& comp = component_at(decomp, component);
    if (terminals.empty()) throw ContractError("a subtour visits at least one terminal");
    if (category == SubtourCategory::passing && comp.is_leaf())
        throw ContractError("passing subtours require an internal component");
    for (VertexId t : terminals)
        if (decomp.edge_assignment[t] != component)
            throw ContractError("terminal " + std::to_string(t) + " is not inside the component");
    Subtour s;
    s.component = component;
    s.category = category;
    s.terminals = terminals;
    std::sort(s.terminals.begin(), s.terminals.end());
    s.terminals.erase(std::unique(s.terminals.begin(), s.terminals.end()), s.terminals.end());
    s.length = subtour_length(inst.tree, comp, s.terminals, category);
    return s;
}

Rat reduced_length(const NormalizedInstance& inst, const Decomposition& decomp, const Subtour& s) {
    const RoutingInstance& t = inst.tree;
    const Component& comp = component_at(decomp, s.component);
    Length numerator;
    long long denominator;
    if (s.category == SubtourCategory::ending) {
        numerator = s.length;
        denominator = t.distance_bound - 2 * t.depth[comp.root_vertex];
    } else {
        if (comp.is_leaf()) throw ContractError("passing subtour in a leaf component");
        numerator = s.length - 2 * dist(t, comp.root_vertex, *comp.exit_vertex);
        denominator = t.distance_bound - 2 * t.depth[*comp.exit_vertex];
    }
    if (numerator < 0) throw ContractError("subtour shorter than its exit round trip");
    if (denominator <= 0) {
        if (numerator == 0) return Rat(0);
        throw InfeasibleError("subtour of length " + std::to_string(s.length) +
                              " has no feasible tour within the bound");
    }
    return Rat(numerator, denominator);
}

std::vector<Subtour> split_tour(const NormalizedInstance& inst, const Decomposition& decomp,
                                const std::vector<VertexId>& tour_terminals) {
    const RoutingInstance& t = inst.tree;
    std::map<int, std::vector<VertexId>> by_component;
    for (VertexId v : tour_terminals) {
        if (v < 0 || static_cast<std::size_t>(v) >= t.vertex_count() || !t.terminal[v])
            throw ContractError("tour visits a non-terminal vertex " + std::to_string(v));
        int comp = v == t.root ? -1 : decomp.edge_assignment[v];
        if (comp < 0) throw ContractError("terminal " + std::to_string(v) + " is outside every component");
        by_component[comp].push_back(v);
    }
    std::vector<Subtour> out;
    for (auto& [index, terms] : by_component) {
        const Component& comp = component_at(decomp, index);
        SubtourCategory category = SubtourCategory::ending;
        if (!comp.is_leaf()) {
            for (VertexId v : tour_terminals)
                if (strictly_below(t, v, *comp.exit_vertex)) {
                    category = SubtourCategory::passing;
                    break;
                }
        }
        out.push_back(make_subtour(inst, decomp, index, category, terms));
    }
    return out;
}

Rat tour_reduced_sum(const NormalizedInstance& inst, const Decomposition& decomp,
                     const std::vector<VertexId>& tour_terminals) {
    const RoutingInstance& t = inst.tree;
    const Length tour_len = 2 * steiner_weight(t, t.root, tour_terminals);
    if (tour_len > t.distance_bound)
        throw ContractError("tour of length " + std::to_string(tour_len) + " exceeds the bound " +
                            std::to_string(t.distance_bound));
    Rat sum(0);
    for (const Subtour& s : split_tour(inst, decomp, tour_terminals))
        sum += reduced_length(inst, decomp, s);
    return sum;
}

CombinedTour combine_subtours(const NormalizedInstance& inst, const Decomposition& decomp,
                              const std::vector<Subtour>& subtours) {
    if (subtours.empty()) throw ContractError("cannot combine an empty subtour bundle");
    const int comp_index = subtours.front().component;
    const SubtourCategory category = subtours.front().category;
    for (const Subtour& s : subtours)
        if (s.component != comp_index || s.category != category)
            throw ContractError("subtours must share component and category");
    Rat sum(0);
    for (const Subtour& s : subtours) sum += reduced_length(inst, decomp, s);
    if (sum > Rat(1))
        throw ContractError("reduced lengths sum to " + sum.str() + " > 1");

    const RoutingInstance& t = inst.tree;
    const Component& comp = component_at(decomp, comp_index);
    CombinedTour out;
    if (category == SubtourCategory::ending) {
        out.length = 2 * t.depth[comp.root_vertex];
        for (const Subtour& s : subtours) out.length += s.length;
    } else {
        const Length exit_trip = 2 * dist(t, comp.root_vertex, *comp.exit_vertex);
        out.length = 2 * t.depth[*comp.exit_vertex];
        for (const Subtour& s : subtours) out.length += s.length - exit_trip;
    }
    for (const Subtour& s : subtours)
        out.terminals.insert(out.terminals.end(), s.terminals.begin(), s.terminals.end());
    std::sort(out.terminals.begin(), out.terminals.end());
    out.terminals.erase(std::unique(out.terminals.begin(), out.terminals.end()),
                        out.terminals.end());
    return out;
}

}  // namespace dvrp
