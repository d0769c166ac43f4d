#include "dvrp/decomposition.hpp"

#include <algorithm>
#include <unordered_map>

namespace dvrp {

namespace {

// Edges below `from` (keyed by child endpoint), not descending into `skip`.
// The edge leading into `skip` itself is included.
std::vector<VertexId> subtree_edges(const RoutingInstance& t, VertexId from,
                                    VertexId skip = -1) {
    std::vector<VertexId> edges;
    if (from == skip) return edges;
    std::vector<VertexId> stack{from};
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId c : t.children[u]) {
            edges.push_back(c);
            if (c != skip) stack.push_back(c);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

struct SubTree {
    RoutingInstance inst;
    std::vector<VertexId> to_parent;
};

// The edge set as a standalone instance rooted at `root`. Terminal flags are
// taken over for vertices below the root; boundary vertices such as an exit
// keep their (non-terminal) status from the parent tree.
SubTree extract(const RoutingInstance& t, VertexId root, const std::vector<VertexId>& edges,
                long long bound) {
    SubTree sub;
    std::unordered_map<VertexId, VertexId> index;
    auto intern = [&](VertexId v) {
        auto [it, fresh] = index.emplace(v, static_cast<VertexId>(sub.to_parent.size()));
        if (fresh) sub.to_parent.push_back(v);
        return it->second;
    };
    intern(root);
    for (VertexId e : edges) intern(e);
    const std::size_t n = sub.to_parent.size();
    sub.inst.distance_bound = bound;
    sub.inst.root = 0;
    sub.inst.parent.assign(n, -1);
    sub.inst.parent_weight.assign(n, 0);
    sub.inst.external_id.assign(n, 0);
    sub.inst.terminal.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) sub.inst.external_id[i] = t.external_id[sub.to_parent[i]];
    for (VertexId e : edges) {
        VertexId c = index.at(e);
        sub.inst.parent[c] = index.at(t.parent[e]);
        sub.inst.parent_weight[c] = t.parent_weight[e];
        if (t.terminal[e]) sub.inst.terminal[c] = 1;
    }
    sub.inst.finalize();
    return sub;
}

std::vector<VertexId> terminals_in(const RoutingInstance& t, const std::vector<VertexId>& edges) {
    std::vector<VertexId> out;
    for (VertexId e : edges)
        if (t.terminal[e]) out.push_back(e);
    return out;
}

// Bounded solve of an edge set taken as its own instance rooted at `root`.
std::optional<int> piece_solve(const NormalizedInstance& inst, VertexId root,
                               const std::vector<VertexId>& edges, int gamma,
                               const SolveOptions& opts) {
    const RoutingInstance& t = inst.tree;
    if (terminals_in(t, edges).empty()) return 0;
    const long long bound = t.distance_bound - 2 * t.depth[root];
    SubTree sub = extract(t, root, edges, std::max<long long>(bound, 0));
    if (bound < 0) return std::nullopt;
    NormalizedInstance local;
    try {
        local = normalize(sub.inst);
    } catch (const InfeasibleError&) {
        return std::nullopt;
    }
    return solve_bounded(local, gamma, opts);
}

}  // namespace

Decomposition decompose(const NormalizedInstance& inst, int gamma, const SolveOptions& opts) {
    if (gamma < 1) throw ContractError("gamma must be at least 1");
    const RoutingInstance& t = inst.tree;
    Decomposition out;
    out.gamma = gamma;
    out.edge_assignment.assign(t.vertex_count(), -1);
    if (t.terminal_count() == 0) return out;

    // One bottom-up pass answers every subtree eligibility query: the table
    // at v is non-empty exactly when the subtree below v can be covered by
    // at most gamma tours of length at most D - 2*dist(root, v).
    DpTable table = build_profile_table(inst, gamma, opts);
    auto eligible = [&](VertexId v) { return !table.valid[static_cast<std::size_t>(v)].empty(); };

    std::vector<VertexId> leaf_roots;
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const auto vid = static_cast<VertexId>(v);
        if (!eligible(vid)) continue;
        if (vid == t.root || !eligible(t.parent[vid])) leaf_roots.push_back(vid);
    }

    for (VertexId r_c : leaf_roots) {
        Component comp;
        comp.root_vertex = r_c;
        comp.edges = subtree_edges(t, r_c);
        comp.terminals = terminals_in(t, comp.edges);
        if (t.is_leaf(r_c) && t.terminal[r_c]) comp.terminals.push_back(r_c);
        comp.local_tours = table_tours(table, r_c);
        if (!comp.edges.empty() || r_c == t.root) out.components.push_back(std::move(comp));
    }
    // A leaf component that is a bare terminal at the depot (single-vertex
    // tree) has no edges; it was kept above only when rooted at the depot.

    // Skeleton spanned by the depot and the leaf-component roots.
    std::vector<char> in_skeleton(t.vertex_count(), 0);
    for (VertexId r_c : leaf_roots) {
        VertexId u = r_c;
        while (u != -1 && !in_skeleton[u]) {
            in_skeleton[u] = 1;
            u = t.parent[u];
        }
    }
    std::vector<char> is_leaf_root(t.vertex_count(), 0);
    for (VertexId r_c : leaf_roots) is_leaf_root[r_c] = 1;
    auto skeleton_children = [&](VertexId v) {
        std::vector<VertexId> out_kids;
        if (!is_leaf_root[v])
            for (VertexId c : t.children[v])
                if (in_skeleton[c]) out_kids.push_back(c);
        return out_kids;
    };

    // Maximal downward skeleton paths whose interior vertices have a single
    // skeleton child, carved bottom-up into internal components.
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const auto v1 = static_cast<VertexId>(v);
        if (!in_skeleton[v1] || is_leaf_root[v1]) continue;
        auto kids = skeleton_children(v1);
        if (v1 != t.root && kids.size() == 1) continue;  // interior of some path
        for (VertexId c : kids) {
            std::vector<VertexId> path{v1, c};
            VertexId cur = c;
            while (!is_leaf_root[cur]) {
                auto next = skeleton_children(cur);
                if (next.size() != 1) break;
                path.push_back(next[0]);
                cur = next[0];
            }
            const VertexId top_child = path[1];
            VertexId cur_exit = path.back();
            // Repeatedly take the least deep vertex strictly above the
            // current exit whose hanging piece still fits in gamma tours.
            while (true) {
                VertexId found = -1;
                std::optional<int> found_tours;
                for (std::size_t i = 1; i + 1 < path.size() && path[i] != cur_exit; ++i) {
                    VertexId cand = path[i];
                    auto edges = subtree_edges(t, cand, cur_exit);
                    auto tours = piece_solve(inst, cand, edges, gamma, opts);
                    if (tours.has_value()) {
                        found = cand;
                        found_tours = tours;
                        break;
                    }
                }
                if (found == -1 || found == top_child) break;
                Component comp;
                comp.root_vertex = found;
                comp.exit_vertex = cur_exit;
                comp.edges = subtree_edges(t, found, cur_exit);
                comp.terminals = terminals_in(t, comp.edges);
                comp.local_tours = found_tours;
                out.components.push_back(std::move(comp));
                cur_exit = found;
            }
            Component comp;
            comp.root_vertex = v1;
            comp.exit_vertex = cur_exit;
            comp.edges = subtree_edges(t, top_child, cur_exit);
            comp.edges.push_back(top_child);
            std::sort(comp.edges.begin(), comp.edges.end());
            comp.edges.erase(std::unique(comp.edges.begin(), comp.edges.end()), comp.edges.end());
            comp.terminals = terminals_in(t, comp.edges);
            comp.local_tours = piece_solve(inst, v1, comp.edges, gamma, opts);
            out.components.push_back(std::move(comp));
        }
    }

    for (std::size_t i = 0; i < out.components.size(); ++i) {
        Component& comp = out.components[i];
        comp.is_big = !comp.local_tours.has_value() || 2 * *comp.local_tours >= gamma;
        for (VertexId e : comp.edges) {
            if (out.edge_assignment[e] != -1) throw Error("internal: edge in two components");
            out.edge_assignment[e] = static_cast<int>(i);
        }
    }
    for (std::size_t v = 0; v < t.vertex_count(); ++v)
        if (static_cast<VertexId>(v) != t.root && out.edge_assignment[v] == -1)
            throw Error("internal: edge missing from the decomposition");
    return out;
}

LocalInstance component_local_instance(const NormalizedInstance& inst, const Component& comp) {
    const RoutingInstance& t = inst.tree;
    const long long bound = t.distance_bound - 2 * t.depth[comp.root_vertex];
    for (VertexId term : comp.terminals)
        if (2 * (t.depth[term] - t.depth[comp.root_vertex]) > bound)
            throw InfeasibleError("component bound " + std::to_string(bound) +
                                  " cannot reach terminal " +
                                  std::to_string(t.external_id[term]));
    SubTree sub = extract(t, comp.root_vertex, comp.edges, std::max<long long>(bound, 0));
    if (comp.edges.empty() && t.terminal[comp.root_vertex]) sub.inst.terminal[0] = 1;
    LocalInstance local;
    local.instance = normalize(sub.inst);
    local.to_parent = std::move(sub.to_parent);
    local.local_bound = bound;
    return local;
}

bool classify_big(const NormalizedInstance& inst, const Component& comp, int gamma,
                  const SolveOptions& opts) {
    if (comp.terminals.empty() && !(comp.edges.empty() && inst.tree.terminal[comp.root_vertex]))
        return false;
    LocalInstance local = component_local_instance(inst, comp);
    auto tours = solve_bounded(local.instance, gamma, opts);
    if (!tours.has_value()) return true;  // needs more than gamma, so at least gamma/2
    return 2 * *tours >= gamma;
}

Decomposition split_at(const NormalizedInstance& inst, const std::vector<VertexId>& cuts) {
    const RoutingInstance& t = inst.tree;
    Decomposition out;
    out.gamma = 0;
    out.edge_assignment.assign(t.vertex_count(), -1);
    VertexId boundary = t.root;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
        const bool last = i == cuts.size();
        if (!last) {
            VertexId cut = cuts[i];
            if (t.is_leaf(cut)) throw ContractError("cut vertex must be internal");
            VertexId u = t.parent[cut];
            while (u != -1 && u != boundary) u = t.parent[u];
            if (u != boundary || cut == boundary)
                throw ContractError("cuts must form a strictly descending chain");
        }
        Component comp;
        comp.root_vertex = boundary;
        if (!last) comp.exit_vertex = cuts[i];
        comp.edges = subtree_edges(t, boundary, last ? -1 : cuts[i]);
        comp.terminals = terminals_in(t, comp.edges);
        if (comp.edges.empty()) throw ContractError("cut produces an empty component");
        out.components.push_back(std::move(comp));
        if (!last) boundary = cuts[i];
    }
    for (std::size_t i = 0; i < out.components.size(); ++i)
        for (VertexId e : out.components[i].edges) out.edge_assignment[e] = static_cast<int>(i);
    return out;
}

}  // namespace dvrp
