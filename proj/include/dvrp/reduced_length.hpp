#pragma once

#include <vector>

#include "dvrp/decomposition.hpp"
#include "dvrp/instance.hpp"
#include "dvrp/rational.hpp"

namespace dvrp {

enum class SubtourCategory { ending, passing };

// A closed walk inside one component, starting and ending at the component
// root and visiting the listed terminals. The length is twice the weight of
// the minimal in-component subtree spanning the root and the terminals; a
// passing subtour additionally spans the exit vertex.
struct Subtour {
    int component = -1;
    SubtourCategory category = SubtourCategory::ending;
    Length length = 0;
    std::vector<VertexId> terminals;
};

// Builds a subtour over the given terminals, all of which must lie strictly
// inside the component. `passing` requires an internal component.
Subtour make_subtour(const NormalizedInstance& inst, const Decomposition& decomp, int component,
                     SubtourCategory category, const std::vector<VertexId>& terminals);

// Normalized cost of a subtour in [0, 1]:
//   ending:  length / (D - 2 dist(r, r_c))
//   passing: (length - 2 dist(r_c, e_c)) / (D - 2 dist(r, e_c))
// A zero denominator with a zero numerator is 0; with a nonzero numerator it
// is an infeasible subtour and throws.
Rat reduced_length(const NormalizedInstance& inst, const Decomposition& decomp, const Subtour& s);

// Splits a tour (given by the terminals it visits) into its per-component
// subtours. A subtour is passing when the tour also visits some terminal
// strictly below the component's exit vertex.
std::vector<Subtour> split_tour(const NormalizedInstance& inst, const Decomposition& decomp,
                                const std::vector<VertexId>& tour_terminals);

// Sum of the reduced lengths of the tour's subtours. The tour must be
// feasible (minimal closed-walk length at most D).
Rat tour_reduced_sum(const NormalizedInstance& inst, const Decomposition& decomp,
                     const std::vector<VertexId>& tour_terminals);

struct CombinedTour {
    std::vector<VertexId> terminals;
    Length length = 0;
};

// Merges same-component, same-category subtours whose reduced lengths sum to
// at most 1 into a single depot tour:
//   ending:  2 dist(r, r_c) + sum of lengths
//   passing: 2 dist(r, e_c) + sum of (length - 2 dist(r_c, e_c))
// The result has length at most D.
CombinedTour combine_subtours(const NormalizedInstance& inst, const Decomposition& decomp,
                              const std::vector<Subtour>& subtours);

}  // namespace dvrp
