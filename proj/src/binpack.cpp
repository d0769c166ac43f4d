#include "dvrp/binpack.hpp"

#include <algorithm>
#include <map>

namespace dvrp {

long long harmonic_u(int k) {
    if (k < 1) throw ContractError("u_k is defined for k >= 1");
    long long u = 1;
    for (int i = 2; i <= k; ++i) {
        long long next;
        if (__builtin_mul_overflow(u, u + 1, &next))
            throw OverflowError("u_" + std::to_string(i) + " exceeds 64 bits");
        u = next;
    }
    return u;
}

Rat alpha_partial(int k) {
    if (k < 1) throw ContractError("partial sums start at k = 1");
    Rat sum(0);
    for (int i = 1; i <= k; ++i) sum += Rat(1, harmonic_u(i));
    return sum;
}

std::string alpha_approx(int digits) {
    if (digits < 0 || digits > 20) throw ContractError("supported precision is 0..20 digits");
    // The term after u_7 is below 10^-26; seven terms cover every request.
    return alpha_partial(7).decimal(digits);
}

namespace {

// Size class of an item for space bound M: class j < M holds sizes in
// (1/(j+1), 1/j]; class M holds everything at most 1/M, zero included.
int size_class(const Rat& item, int space_bound) {
    if (item.is_zero()) return space_bound;
    long long j = item.den() / item.num();  // floor(1/item), item > 0
    return static_cast<int>(std::min<long long>(j, space_bound));
}

}  // namespace

BinPackState harmonic_pack(const std::vector<Rat>& items, int space_bound) {
    if (space_bound < 2) throw ContractError("space bound must be at least 2");
    BinPackState state;
    state.space_bound = space_bound;
    state.assignment.assign(items.size(), -1);

    std::map<int, Bin> open;  // one open bin per class
    std::map<int, int> open_id;
    int next_id = 0;
    auto track_open = [&] {
        state.max_open_seen = std::max(state.max_open_seen, static_cast<int>(open.size()));
        if (static_cast<int>(open.size()) > space_bound)
            throw Error("internal: open bins exceed the space bound");
    };

    for (std::size_t i = 0; i < items.size(); ++i) {
        const Rat& item = items[i];
        if (item < Rat(0) || item > Rat(1))
            throw ContractError("item " + item.str() + " is outside [0, 1]");
        const int cls = size_class(item, space_bound);
        auto it = open.find(cls);
        if (it != open.end() && cls == space_bound && it->second.load + item > Rat(1)) {
            // Next fit: the open small-item bin cannot take this one.
            state.closed_bins.push_back(std::move(it->second));
            open.erase(it);
            open_id.erase(cls);
            it = open.end();
        }
        if (it == open.end()) {
            Bin fresh;
            fresh.cls = cls;
            it = open.emplace(cls, std::move(fresh)).first;
            open_id[cls] = next_id++;
            track_open();
        }
        Bin& bin = it->second;
        bin.load += item;
        bin.items.push_back(static_cast<int>(i));
        state.assignment[i] = open_id[cls];
        if (cls < space_bound && static_cast<int>(bin.items.size()) == cls) {
            state.closed_bins.push_back(std::move(bin));
            open.erase(it);
            open_id.erase(cls);
        }
    }
    for (auto& [cls, bin] : open) state.open_bins.push_back(std::move(bin));
    return state;
}

int offline_opt_bp(const std::vector<Rat>& items) {
    const std::size_t n = items.size();
    if (n == 0) return 0;
    if (n > kOfflinePackCap)
        throw ContractError("offline packing oracle capped at " +
                            std::to_string(kOfflinePackCap) + " items");
    for (const Rat& item : items)
        if (item < Rat(0) || item > Rat(1))
            throw ContractError("item " + item.str() + " is outside [0, 1]");

    const unsigned full = (1u << n) - 1;
    std::vector<char> fits(full + 1, 0);
    for (unsigned mask = 1; mask <= full; ++mask) {
        Rat sum(0);
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) sum += items[i];
        fits[mask] = sum <= Rat(1);
    }
    std::vector<int> best(full + 1, static_cast<int>(n) + 1);
    best[0] = 0;
    for (unsigned mask = 1; mask <= full; ++mask) {
        unsigned anchor = mask & (~mask + 1);
        for (unsigned sub = mask;; sub = (sub - 1) & mask) {
            if ((sub & anchor) && fits[sub]) best[mask] = std::min(best[mask], best[mask ^ sub] + 1);
            if (sub == 0) break;
        }
    }
    return best[full];
}

Rat bounded_space_guarantee(int space_bound, int offline_opt) {
    if (space_bound < 2) throw ContractError("space bound must be at least 2");
    int k = 1;
    while (harmonic_u(k + 1) < space_bound) ++k;  // u_k < M <= u_{k+1}
    Rat beta = alpha_partial(k) + Rat(space_bound, (space_bound - 1) * harmonic_u(k + 1));
    return beta * Rat(offline_opt) + Rat(space_bound - 1);
}

ReductionSequence build_reduction_sequence(const NormalizedInstance& inst,
                                           const Decomposition& decomp,
                                           const std::vector<std::vector<VertexId>>& tours) {
    ReductionSequence seq;
    // (component, category) buckets; tours contribute in order.
    std::map<std::pair<int, int>, std::vector<int>> buckets;
    for (const auto& tour : tours) {
        const Length len = 2 * steiner_weight(inst.tree, inst.tree.root, tour);
        if (len > inst.tree.distance_bound)
            throw ContractError("tour of length " + std::to_string(len) + " exceeds the bound");
        for (Subtour& s : split_tour(inst, decomp, tour)) {
            const int idx = static_cast<int>(seq.subtours.size());
            buckets[{s.component, s.category == SubtourCategory::passing ? 1 : 0}].push_back(idx);
            seq.subtours.push_back(std::move(s));
        }
    }
    for (const auto& [key, indices] : buckets)
        for (int idx : indices) {
            const Subtour& s = seq.subtours[static_cast<std::size_t>(idx)];
            seq.items.push_back({reduced_length(inst, decomp, s), s.component, s.category, idx});
        }
    return seq;
}

std::vector<RefinedBin> refine_bins(const BinPackState& packed, const ReductionSequence& seq) {
    std::vector<const Bin*> bins;
    for (const Bin& b : packed.closed_bins) bins.push_back(&b);
    for (const Bin& b : packed.open_bins) bins.push_back(&b);

    std::vector<RefinedBin> out;
    for (const Bin* bin : bins) {
        std::map<std::pair<int, int>, RefinedBin> parts;
        for (int item : bin->items) {
            const ReducedItem& ri = seq.items[static_cast<std::size_t>(item)];
            auto key = std::make_pair(ri.component, ri.category == SubtourCategory::passing ? 1 : 0);
            RefinedBin& part = parts[key];
            part.component = ri.component;
            part.category = ri.category;
            part.load += ri.value;
            part.items.push_back(item);
        }
        for (auto& [key, part] : parts) {
            if (part.load > Rat(1)) throw Error("internal: refined bin overflows");
            out.push_back(std::move(part));
        }
    }
    return out;
}

}  // namespace dvrp
