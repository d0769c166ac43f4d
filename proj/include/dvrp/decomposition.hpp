#pragma once

#include <optional>
#include <vector>

#include "dvrp/exact_dp.hpp"
#include "dvrp/instance.hpp"

namespace dvrp {

// A connected set of tree edges. Edges are keyed by their child endpoint.
// A leaf component owns everything below its root; an internal component
// additionally meets the components below it at its exit vertex.
struct Component {
    std::vector<VertexId> edges;
    VertexId root_vertex = -1;
    std::optional<VertexId> exit_vertex;
    bool is_big = false;
    std::vector<VertexId> terminals;        // terminals strictly inside
    std::optional<int> local_tours;         // bounded solve of the local instance

    bool is_leaf() const { return !exit_vertex.has_value(); }
};

struct Decomposition {
    std::vector<Component> components;
    std::vector<int> edge_assignment;  // component index per edge (child id); -1 at the root
    int gamma = 0;
};

// Partitions the edges into components such that every component's terminals
// can be covered by at most gamma tours under the component-local bound.
// Leaf components are the maximal subtrees whose bounded solve fits in gamma
// tours (an eligible root with no eligible ancestor); the remaining skeleton
// is carved into internal components path by path. A tree without terminals
// yields an empty decomposition.
Decomposition decompose(const NormalizedInstance& inst, int gamma, const SolveOptions& opts = {});

// The component as its own instance: rooted at the component root, keeping
// the component's terminals, with the bound reduced by the round trip from
// the depot. Re-normalized; `to_parent` maps sub-instance vertices (before
// re-normalization) back to vertices of `inst`.
struct LocalInstance {
    NormalizedInstance instance;
    std::vector<VertexId> to_parent;
    long long local_bound = 0;
};
LocalInstance component_local_instance(const NormalizedInstance& inst, const Component& comp);

// True when covering the component's terminals needs at least gamma/2 tours.
bool classify_big(const NormalizedInstance& inst, const Component& comp, int gamma,
                  const SolveOptions& opts = {});

// Testing helper: a decomposition made of nested path cuts. `cuts` must be a
// chain of internal vertices, each a strict descendant of the previous one;
// component i spans the edges below cut i-1 (the root initially) that are
// not below cut i, with cut i as its exit.
Decomposition split_at(const NormalizedInstance& inst, const std::vector<VertexId>& cuts);

}  // namespace dvrp
