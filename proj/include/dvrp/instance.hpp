#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dvrp/error.hpp"

namespace dvrp {

using VertexId = int;
using Weight = long long;

// A rooted tree with non-negative integer edge weights, a terminal set and a
// distance bound. Vertices are dense indices; `external_id` carries the ids
// used in instance files. Call finalize() after mutating the raw fields.
struct RoutingInstance {
    long long distance_bound = 1;
    VertexId root = 0;
    std::vector<VertexId> parent;        // parent[v]; -1 at the root
    std::vector<Weight> parent_weight;   // weight of edge (v, parent[v]); 0 at the root
    std::vector<long long> external_id;  // ids used by parse/serialize
    std::vector<char> terminal;          // terminal[v] != 0 iff v is a terminal

    // Derived by finalize().
    std::vector<std::vector<VertexId>> children;
    std::vector<long long> depth;  // weighted distance from the root
    std::vector<int> hops;         // edge count from the root

    std::size_t vertex_count() const { return parent.size(); }
    bool is_terminal(VertexId v) const { return terminal[static_cast<std::size_t>(v)] != 0; }
    bool is_leaf(VertexId v) const { return children[static_cast<std::size_t>(v)].empty(); }
    std::vector<VertexId> terminal_list() const;
    std::size_t terminal_count() const;

    // Builds children/depth/hops and validates the tree shape
    // (single root, acyclic parent links, non-negative weights).
    void finalize();
};

// Distance between two vertices (sum of edge weights on the unique path).
long long dist(const RoutingInstance& inst, VertexId u, VertexId v);

// Total weight of the union of base-to-target paths. This is the weight of
// the minimal subtree spanning {base} and the targets, so twice the value is
// the length of the minimal closed walk from base through all targets.
long long steiner_weight(const RoutingInstance& inst, VertexId base,
                         const std::vector<VertexId>& targets);

// Instance text format (UTF-8, '#' starts a comment anywhere on a line):
//   dvrp 1
//   D <integer>
//   root <id>
//   edge <child-id> <parent-id> <weight>     (one line per non-root vertex)
//   terminals <id> <id> ...                  (final line; may list nothing)
RoutingInstance parse_instance(std::istream& in);
RoutingInstance parse_instance(const std::string& text);
std::string serialize_instance(const RoutingInstance& inst);

// Normal form: every leaf is a terminal, every terminal is a leaf, and every
// non-leaf vertex has exactly two children. `source_vertex` maps each vertex
// back to the vertex of the pre-normalization instance it stands for.
struct NormalizedInstance {
    RoutingInstance tree;
    std::vector<VertexId> source_vertex;
};

// Rewrites the instance into normal form, preserving the optimal tour count:
// subtrees without terminals are dropped, terminals with children get a
// zero-weight pendant leaf, single-child vertices are spliced out (at the
// root this moves the depot and shrinks D), and wide vertices are split with
// zero-weight copies. Throws InfeasibleError if a terminal sits strictly
// farther than D/2 from the depot.
NormalizedInstance normalize(const RoutingInstance& inst);

}  // namespace dvrp
