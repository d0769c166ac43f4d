#include "dvrp/suites.hpp"

#include <algorithm>

#include "dvrp/approx.hpp"
#include "dvrp/binpack.hpp"
#include "dvrp/generators.hpp"
#include "dvrp/reduced_length.hpp"
#include "dvrp/rng.hpp"

namespace dvrp {

namespace {

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(trial) + 1;
}

NormalizedInstance random_normalized(SplitMix64& rng, int max_terminals) {
    RandomSpec spec;
    spec.seed = rng.next();
    spec.terminals = static_cast<int>(rng.range(2, max_terminals));
    spec.max_weight = rng.range(1, 6);
    spec.depth_policy_halves = static_cast<int>(rng.range(4, 8));
    return normalize(gen_random(spec));
}

// Either a real decomposition at a small gamma or a synthetic chain of path
// cuts. The synthetic ones exercise internal components that hold terminals,
// hence passing subtours.
Decomposition random_decomposition(SplitMix64& rng, const NormalizedInstance& norm) {
    if (rng.below(2) == 0) {
        std::vector<VertexId> internals;
        for (std::size_t v = 1; v < norm.tree.vertex_count(); ++v)
            if (!norm.tree.is_leaf(static_cast<VertexId>(v)))
                internals.push_back(static_cast<VertexId>(v));
        if (!internals.empty()) {
            std::vector<VertexId> cuts{
                internals[rng.below(internals.size())]};
            // Try to nest a second cut below the first.
            std::vector<VertexId> below;
            for (VertexId v : internals) {
                VertexId u = norm.tree.parent[v];
                while (u != -1 && u != cuts[0]) u = norm.tree.parent[u];
                if (u == cuts[0]) below.push_back(v);
            }
            if (!below.empty() && rng.below(2) == 0)
                cuts.push_back(below[rng.below(below.size())]);
            return split_at(norm, cuts);
        }
    }
    return decompose(norm, static_cast<int>(rng.range(1, 3)));
}

// A feasible tour grown greedily from a random terminal order. Never empty:
// a lone terminal is always coverable in a feasible instance.
std::vector<VertexId> random_feasible_tour(SplitMix64& rng, const NormalizedInstance& norm) {
    std::vector<VertexId> terms = norm.tree.terminal_list();
    for (std::size_t i = terms.size(); i > 1; --i)
        std::swap(terms[i - 1], terms[rng.below(i)]);
    std::vector<VertexId> tour;
    for (VertexId t : terms) {
        tour.push_back(t);
        if (2 * steiner_weight(norm.tree, norm.tree.root, tour) > norm.tree.distance_bound) {
            tour.pop_back();
            if (!tour.empty() && rng.below(2) == 0) break;
        }
    }
    return tour;
}

}  // namespace

SuiteResult reduced_sum_suite(std::uint64_t seed, int trials) {
    SuiteResult result;
    result.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(trial_seed(seed, trial));
        NormalizedInstance norm = random_normalized(rng, 7);
        if (norm.tree.terminal_count() == 0) continue;
        Decomposition decomp = random_decomposition(rng, norm);
        std::vector<VertexId> tour = random_feasible_tour(rng, norm);
        if (tour.empty()) continue;
        Rat sum = tour_reduced_sum(norm, decomp, tour);
        if (sum > Rat(1)) {
            ++result.failures;
            result.notes.push_back("trial " + std::to_string(trial) + ": reduced sum " +
                                   sum.str() + " > 1\n" + serialize_instance(norm.tree));
        }
    }
    return result;
}

SuiteResult combine_suite(std::uint64_t seed, int trials) {
    SuiteResult result;
    result.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(trial_seed(seed, trial));
        NormalizedInstance norm = random_normalized(rng, 7);
        if (norm.tree.terminal_count() == 0) continue;
        Decomposition decomp = random_decomposition(rng, norm);

        std::vector<int> candidates;
        for (std::size_t i = 0; i < decomp.components.size(); ++i)
            if (!decomp.components[i].terminals.empty()) candidates.push_back(static_cast<int>(i));
        if (candidates.empty()) continue;
        const int comp_index = candidates[rng.below(candidates.size())];
        const Component& comp = decomp.components[static_cast<std::size_t>(comp_index)];
        const bool passing = !comp.is_leaf() && rng.below(2) == 0;
        const auto category = passing ? SubtourCategory::passing : SubtourCategory::ending;

        std::vector<Subtour> bundle;
        Rat sum(0);
        const int attempts = static_cast<int>(rng.range(1, 5));
        for (int a = 0; a < attempts; ++a) {
            std::vector<VertexId> picks;
            const auto want = 1 + rng.below(3);
            for (std::uint64_t p = 0; p < want; ++p)
                picks.push_back(comp.terminals[rng.below(comp.terminals.size())]);
            Subtour s = make_subtour(norm, decomp, comp_index, category, picks);
            Rat value = reduced_length(norm, decomp, s);
            if (sum + value > Rat(1)) continue;
            sum += value;
            bundle.push_back(std::move(s));
        }
        if (bundle.empty()) continue;

        CombinedTour combined = combine_subtours(norm, decomp, bundle);
        bool bad = combined.length > norm.tree.distance_bound;
        // The constructed walk must also dominate the minimal walk over the
        // same terminals.
        if (2 * steiner_weight(norm.tree, norm.tree.root, combined.terminals) > combined.length)
            bad = true;
        if (bad) {
            ++result.failures;
            result.notes.push_back("trial " + std::to_string(trial) + ": combined length " +
                                   std::to_string(combined.length) + " vs D " +
                                   std::to_string(norm.tree.distance_bound) + "\n" +
                                   serialize_instance(norm.tree));
        }
    }
    return result;
}

SuiteResult component_count_suite(std::uint64_t seed, int trials) {
    SuiteResult result;
    result.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng(trial_seed(seed, trial));
        const int gamma = 20 + static_cast<int>(rng.below(6));
        NormalizedInstance norm;
        std::optional<int> opt;
        bool found = false;
        for (int attempt = 0; attempt < 200 && !found; ++attempt) {
            RandomSpec spec;
            spec.seed = rng.next();
            spec.terminals = static_cast<int>(rng.range(2, 6));
            spec.max_weight = rng.range(1, 6);
            spec.depth_policy_halves = 4;  // tight bound drives the optimum up
            norm = normalize(gen_random(spec));
            opt = brute_force_opt(norm.tree);
            found = opt.has_value() && *opt >= 2;
        }
        if (!found) {
            ++result.failures;
            result.notes.push_back("trial " + std::to_string(trial) +
                                   ": no instance with optimum >= 2 found");
            continue;
        }
        Decomposition decomp = decompose(norm, gamma);
        const auto count = static_cast<long long>(decomp.components.size());
        if (count * gamma > 15ll * *opt) {
            ++result.failures;
            result.notes.push_back("trial " + std::to_string(trial) + ": " +
                                   std::to_string(count) + " components, gamma " +
                                   std::to_string(gamma) + ", opt " + std::to_string(*opt) +
                                   "\n" + serialize_instance(norm.tree));
        }
    }
    return result;
}

}  // namespace dvrp
