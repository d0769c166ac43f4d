#pragma once

#include <vector>

#include "dvrp/rational.hpp"
#include "dvrp/reduced_length.hpp"

namespace dvrp {

// u_1 = 1, u_k = u_{k-1} (u_{k-1} + 1). Exact; overflows past u_7 throw.
long long harmonic_u(int k);

// Partial sum of 1/u_i for i = 1..k, exact.
Rat alpha_partial(int k);

// The series limit, truncated to `digits` decimal places (the tail beyond
// u_7 is far below every supported precision).
std::string alpha_approx(int digits);

struct Bin {
    int cls = 0;  // 1..M-1 hold sizes in (1/(cls+1), 1/cls]; class M holds sizes <= 1/M
    Rat load;
    std::vector<int> items;  // item indices in arrival order
};

struct BinPackState {
    std::vector<Bin> open_bins;
    std::vector<Bin> closed_bins;
    int space_bound = 0;      // M
    int max_open_seen = 0;    // peak open-bin count over the run
    std::vector<int> assignment;  // per item: bin id in opening order

    std::size_t bins_used() const { return open_bins.size() + closed_bins.size(); }
};

// Online bounded-space packing with one open bin per size class: an item of
// class j < M closes its bin once it holds j items; class-M items go next
// fit. Never more than M bins are open. Items must lie in [0, 1]; M >= 2.
BinPackState harmonic_pack(const std::vector<Rat>& items, int space_bound);

// Exact offline optimum by exhaustive search over item subsets (the first
// open item anchors each bin, which kills permutation symmetry). Capped.
inline constexpr int kOfflinePackCap = 14;
int offline_opt_bp(const std::vector<Rat>& items);

// The guaranteed bin count for bounded space M against an offline optimum:
// (sum_{i<=k} 1/u_i + M/((M-1) u_{k+1})) * opt + (M - 1), with u_k < M <= u_{k+1}.
Rat bounded_space_guarantee(int space_bound, int offline_opt);

// One item of the packing instance derived from a tour set: the reduced
// length of one subtour, tagged with its component and category.
struct ReducedItem {
    Rat value;
    int component = -1;
    SubtourCategory category = SubtourCategory::ending;
    int subtour = -1;  // index into ReductionSequence::subtours
};

struct ReductionSequence {
    std::vector<ReducedItem> items;
    std::vector<Subtour> subtours;
};

// The packing instance listing every subtour's reduced length, grouped so
// that each component's ending items are consecutive, then its passing items.
ReductionSequence build_reduction_sequence(const NormalizedInstance& inst,
                                           const Decomposition& decomp,
                                           const std::vector<std::vector<VertexId>>& tours);

struct RefinedBin {
    int component = -1;
    SubtourCategory category = SubtourCategory::ending;
    Rat load;
    std::vector<int> items;  // indices into the sequence
};

// Splits every packed bin by (component, category). Each refined bin holds
// same-component, same-category items with total load at most 1, so it can
// be turned into a single feasible tour.
std::vector<RefinedBin> refine_bins(const BinPackState& packed, const ReductionSequence& seq);

}  // namespace dvrp
