#pragma once

#include <optional>
#include <vector>

#include "dvrp/instance.hpp"

namespace dvrp {

using Length = long long;

// Multiset of subtour lengths rooted at a vertex, kept sorted ascending.
using Profile = std::vector<Length>;

struct SolveOptions {
    // Dominance pruning: a stored profile that is entrywise >= another stored
    // profile of no greater size (after padding the shorter one with zeros)
    // can never produce a strictly better parent, so it is dropped. Exact
    // either way; OFF keeps the full enumeration for cross-checks.
    bool prune = true;
    // The pairwise dominance sweep is quadratic, so it is skipped for
    // per-vertex sets larger than this; deduplication always runs.
    std::size_t pareto_limit = 512;
};

// Per-vertex sets of achievable profiles for the whole tree. entry_cap[v] is
// the largest subtour length kept at v; an entry above the cap cannot extend
// to a feasible tour through v, so dropping it never changes any answer.
struct DpTable {
    std::vector<std::vector<Profile>> valid;
    std::vector<Length> entry_cap;
    int gamma = 0;
};

// All-zero profiles of size 1..gamma (the profiles of a bare terminal leaf).
// Empty when gamma == 0 or d_tilde < 0.
std::vector<Profile> leaf_profiles(int gamma, Length d_tilde);

// Every parent profile reachable by pairing up profiles from the two child
// sets: each child element either stands alone (adding twice its edge
// weight) or merges with one element from the other child (adding both edge
// weights). Profiles longer than gamma or with an entry above d_tilde are
// excluded. Exhaustive; no pruning.
std::vector<Profile> combine_children(const std::vector<Profile>& left,
                                      const std::vector<Profile>& right, Weight left_edge,
                                      Weight right_edge, int gamma, Length d_tilde);

// Bottom-up profile table for the normalized tree.
DpTable build_profile_table(const NormalizedInstance& inst, int gamma,
                            const SolveOptions& opts = {});

// Minimum profile size at vertex v, or nullopt when no profile is achievable.
std::optional<int> table_tours(const DpTable& table, VertexId v);

// Minimum number of tours covering all terminals when that minimum is at
// most gamma; nullopt otherwise. Deterministic.
std::optional<int> solve_bounded(const NormalizedInstance& inst, int gamma,
                                 const SolveOptions& opts = {});

// Exact optimum by enumerating set partitions of the terminals; each block
// is charged twice the weight of the minimal subtree spanning the depot and
// the block. Test oracle; exponential, capped at kBruteForceCap terminals.
// nullopt when some terminal alone exceeds the bound.
inline constexpr int kBruteForceCap = 12;
std::optional<int> brute_force_opt(const RoutingInstance& inst);

// Same search, but returns one optimal set of tours (terminal blocks).
std::optional<std::vector<std::vector<VertexId>>> brute_force_tours(const RoutingInstance& inst);

// One optimal tour set (terminal vertices per tour) recovered from the
// profile table, or nullopt when solve_bounded would be infeasible.
std::optional<std::vector<std::vector<VertexId>>> reconstruct_tours(
    const NormalizedInstance& inst, int gamma, const SolveOptions& opts = {});

}  // namespace dvrp
