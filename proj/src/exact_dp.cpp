#include "dvrp/exact_dp.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace dvrp {

namespace {

struct ProfileHash {
    std::size_t operator()(const Profile& p) const {
        std::size_t h = 1469598103934665603ull;
        for (Length v : p) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

using ProfilePool = std::unordered_set<Profile, ProfileHash>;

struct ValueGroup {
    Length value;
    int first_index;
    int count;
};

std::vector<ValueGroup> group_values(const Profile& p) {
    std::vector<ValueGroup> groups;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (!groups.empty() && groups.back().value == p[i])
            ++groups.back().count;
        else
            groups.push_back({p[i], i, 1});
    }
    return groups;
}

// One part of an assembled parent profile: its length plus the indices of
// the child elements it consumed (-1 when a side is unused).
struct Part {
    Length value;
    int left_index;
    int right_index;
};

// Enumerates every way to assemble a parent profile from two child profiles.
// Each child element is consumed exactly once: alone, paying twice its edge
// weight, or merged with one element of the other child, paying both edge
// weights. Branches with a part above `cap` or more than `gamma` parts are
// cut. sink(parts) returns false to stop the enumeration.
template <typename Sink>
class Assembler {
  public:
    Assembler(const Profile& left, const Profile& right, Weight left_edge, Weight right_edge,
              int gamma, Length cap, Sink& sink)
        : lg_(group_values(left)),
          rg_(group_values(right)),
          lw_(2 * left_edge),
          rw_(2 * right_edge),
          gamma_(gamma),
          cap_(cap),
          sink_(sink) {
        used_right_.assign(rg_.size(), 0);
        parts_.reserve(left.size() + right.size());
    }

    // False when the sink asked to stop.
    bool run() {
        if (lg_.empty() || rg_.empty()) return true;
        return left_group(0);
    }

  private:
    bool left_group(std::size_t gi) {
        if (static_cast<int>(parts_.size()) > gamma_) return true;
        if (gi == lg_.size()) return flush_right();
        return choose_partners(gi, 0, 0);
    }

    // Distributes the elements of left group gi over the right groups; the
    // leftovers stay single.
    bool choose_partners(std::size_t gi, std::size_t rj, int paired) {
        const ValueGroup& g = lg_[gi];
        if (rj == rg_.size()) {
            const int singles = g.count - paired;
            if (singles > 0 && g.value + lw_ > cap_) return true;
            for (int s = 0; s < singles; ++s)
                parts_.push_back({g.value + lw_, g.first_index + paired + s, -1});
            const bool cont = left_group(gi + 1);
            parts_.resize(parts_.size() - static_cast<std::size_t>(singles));
            return cont;
        }
        const ValueGroup& r = rg_[rj];
        const Length merged = g.value + lw_ + r.value + rw_;
        int max_q = std::min(g.count - paired, r.count - used_right_[rj]);
        if (merged > cap_) max_q = 0;
        for (int q = 0; q <= max_q; ++q) {
            for (int t = 0; t < q; ++t)
                parts_.push_back({merged, g.first_index + paired + t, r.first_index + used_right_[rj] + t});
            used_right_[rj] += q;
            const bool cont = choose_partners(gi, rj + 1, paired + q);
            used_right_[rj] -= q;
            parts_.resize(parts_.size() - static_cast<std::size_t>(q));
            if (!cont) return false;
        }
        return true;
    }

    bool flush_right() {
        std::size_t added = 0;
        bool ok = true;
        for (std::size_t rj = 0; rj < rg_.size(); ++rj) {
            const int rest = rg_[rj].count - used_right_[rj];
            if (rest == 0) continue;
            const Length v = rg_[rj].value + rw_;
            if (v > cap_) {
                ok = false;
                break;
            }
            for (int s = 0; s < rest; ++s) {
                parts_.push_back({v, -1, rg_[rj].first_index + used_right_[rj] + s});
                ++added;
            }
        }
        bool cont = true;
        if (ok && !parts_.empty() && static_cast<int>(parts_.size()) <= gamma_) cont = sink_(parts_);
        parts_.resize(parts_.size() - added);
        return cont;
    }

    std::vector<ValueGroup> lg_, rg_;
    Length lw_, rw_;
    int gamma_;
    Length cap_;
    Sink& sink_;
    std::vector<int> used_right_;
    std::vector<Part> parts_;
};

template <typename Sink>
void assemble(const Profile& left, const Profile& right, Weight left_edge, Weight right_edge,
              int gamma, Length cap, Sink sink) {
    Assembler<Sink> a(left, right, left_edge, right_edge, gamma, cap, sink);
    a.run();
}

Profile parts_to_profile(const std::vector<Part>& parts) {
    Profile p;
    p.reserve(parts.size());
    for (const Part& q : parts) p.push_back(q.value);
    std::sort(p.begin(), p.end());
    return p;
}

// True when `a`, padded in front with zeros, is entrywise <= `b`.
bool dominates(const Profile& a, const Profile& b) {
    if (a.size() > b.size()) return false;
    for (std::size_t i = 1; i <= a.size(); ++i)
        if (a[a.size() - i] > b[b.size() - i]) return false;
    return true;
}

void sort_profiles(std::vector<Profile>& set) {
    std::sort(set.begin(), set.end(), [](const Profile& a, const Profile& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

// Keeps only profiles not dominated by another kept profile. Quadratic, so
// callers skip it for large sets.
void pareto_filter(std::vector<Profile>& set) {
    std::vector<std::pair<Length, std::size_t>> order;  // (sum, index), sums ascend
    order.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        order.emplace_back(std::accumulate(set[i].begin(), set[i].end(), Length{0}), i);
    std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        const Profile &a = set[x.second], &b = set[y.second];
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Profile> kept;
    for (const auto& [sum, idx] : order) {
        const Profile& cand = set[idx];
        bool dead = false;
        for (const Profile& k : kept)
            if (dominates(k, cand)) {
                dead = true;
                break;
            }
        if (!dead) kept.push_back(cand);
    }
    set = std::move(kept);
}

void check_normal_form(const NormalizedInstance& inst) {
    const RoutingInstance& t = inst.tree;
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const std::size_t kids = t.children[v].size();
        if (kids == 0 && !t.terminal[v] && t.vertex_count() > 1)
            throw ContractError("instance is not in normal form: non-terminal leaf");
        if (kids == 1 || kids > 2)
            throw ContractError("instance is not in normal form: vertex with " +
                                std::to_string(kids) + " children");
        if (kids > 0 && t.terminal[v])
            throw ContractError("instance is not in normal form: internal terminal");
    }
}

}  // namespace

std::vector<Profile> leaf_profiles(int gamma, Length d_tilde) {
    std::vector<Profile> out;
    if (d_tilde < 0) return out;
    for (int len = 1; len <= gamma; ++len) out.emplace_back(static_cast<std::size_t>(len), 0);
    return out;
}

std::vector<Profile> combine_children(const std::vector<Profile>& left,
                                      const std::vector<Profile>& right, Weight left_edge,
                                      Weight right_edge, int gamma, Length d_tilde) {
    ProfilePool pool;
    for (const Profile& a : left)
        for (const Profile& b : right) {
            if (static_cast<int>(std::max(a.size(), b.size())) > gamma) continue;
            assemble(a, b, left_edge, right_edge, gamma, d_tilde,
                     [&](const std::vector<Part>& parts) {
                         pool.insert(parts_to_profile(parts));
                         return true;
                     });
        }
    std::vector<Profile> out(pool.begin(), pool.end());
    sort_profiles(out);
    return out;
}

DpTable build_profile_table(const NormalizedInstance& inst, int gamma, const SolveOptions& opts) {
    if (gamma < 1) throw ContractError("gamma must be at least 1");
    check_normal_form(inst);
    const RoutingInstance& t = inst.tree;
    const std::size_t n = t.vertex_count();

    DpTable table;
    table.gamma = gamma;
    table.valid.assign(n, {});
    table.entry_cap.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) table.entry_cap[v] = t.distance_bound - 2 * t.depth[v];

    // Children precede parents in the preorder numbering, so a reverse sweep
    // is bottom-up.
    for (std::size_t i = n; i-- > 0;) {
        const auto v = static_cast<VertexId>(i);
        const Length cap = table.entry_cap[i];
        if (t.is_leaf(v)) {
            if (!t.terminal[v]) continue;  // single-vertex tree without terminals
            if (opts.prune) {
                if (cap >= 0) table.valid[i].push_back(Profile{0});
            } else {
                table.valid[i] = leaf_profiles(gamma, cap);
            }
            continue;
        }
        const VertexId c1 = t.children[v][0];
        const VertexId c2 = t.children[v][1];
        ProfilePool pool;
        for (const Profile& a : table.valid[c1]) {
            for (const Profile& b : table.valid[c2]) {
                if (static_cast<int>(std::max(a.size(), b.size())) > gamma) continue;
                assemble(a, b, t.parent_weight[c1], t.parent_weight[c2], gamma, cap,
                         [&](const std::vector<Part>& parts) {
                             pool.insert(parts_to_profile(parts));
                             return true;
                         });
            }
        }
        std::vector<Profile> set(pool.begin(), pool.end());
        if (opts.prune && set.size() <= opts.pareto_limit) pareto_filter(set);
        sort_profiles(set);
        table.valid[i] = std::move(set);
    }
    return table;
}

std::optional<int> table_tours(const DpTable& table, VertexId v) {
    const auto& set = table.valid[static_cast<std::size_t>(v)];
    if (set.empty()) return std::nullopt;
    std::size_t best = set.front().size();
    for (const Profile& p : set) best = std::min(best, p.size());
    return static_cast<int>(best);
}

std::optional<int> solve_bounded(const NormalizedInstance& inst, int gamma,
                                 const SolveOptions& opts) {
    if (gamma < 1) throw ContractError("gamma must be at least 1");
    if (inst.tree.terminal_count() == 0) return 0;
    DpTable table = build_profile_table(inst, gamma, opts);
    return table_tours(table, inst.tree.root);
}

namespace {

struct BruteContext {
    const RoutingInstance* inst;
    std::vector<VertexId> terms;
    std::vector<long long> block_cost;  // doubled Steiner weight per terminal mask
    int best = 0;
    std::vector<unsigned> best_blocks;
    std::vector<unsigned> blocks;

    void search(unsigned remaining, int used) {
        if (used + (remaining ? 1 : 0) >= best) return;
        if (!remaining) {
            best = used;
            best_blocks = blocks;
            return;
        }
        const unsigned anchor = remaining & (~remaining + 1);
        for (unsigned sub = remaining;; sub = (sub - 1) & remaining) {
            if ((sub & anchor) && block_cost[sub] <= inst->distance_bound) {
                blocks.push_back(sub);
                search(remaining & ~sub, used + 1);
                blocks.pop_back();
            }
            if (sub == 0) break;
        }
    }
};

std::optional<BruteContext> brute_force_search(const RoutingInstance& inst) {
    BruteContext ctx;
    ctx.inst = &inst;
    ctx.terms = inst.terminal_list();
    const std::size_t n = ctx.terms.size();
    if (n > kBruteForceCap)
        throw ContractError("brute-force oracle capped at " + std::to_string(kBruteForceCap) +
                            " terminals, got " + std::to_string(n));
    for (VertexId t : ctx.terms)
        if (2 * inst.depth[t] > inst.distance_bound) return std::nullopt;

    ctx.block_cost.assign(1u << n, 0);
    std::vector<VertexId> block;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        block.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) block.push_back(ctx.terms[i]);
        ctx.block_cost[mask] = 2 * steiner_weight(inst, inst.root, block);
    }
    ctx.best = static_cast<int>(n) + 1;
    ctx.search((1u << n) - 1, 0);
    return ctx;
}

}  // namespace

std::optional<int> brute_force_opt(const RoutingInstance& inst) {
    if (inst.terminal_count() == 0) return 0;
    auto ctx = brute_force_search(inst);
    if (!ctx) return std::nullopt;
    return ctx->best;
}

std::optional<std::vector<std::vector<VertexId>>> brute_force_tours(const RoutingInstance& inst) {
    if (inst.terminal_count() == 0) return std::vector<std::vector<VertexId>>{};
    auto ctx = brute_force_search(inst);
    if (!ctx) return std::nullopt;
    std::vector<std::vector<VertexId>> tours;
    for (unsigned mask : ctx->best_blocks) {
        std::vector<VertexId> tour;
        for (std::size_t i = 0; i < ctx->terms.size(); ++i)
            if (mask & (1u << i)) tour.push_back(ctx->terms[i]);
        tours.push_back(std::move(tour));
    }
    return tours;
}

namespace {

// Recovers, per profile entry, the set of terminals that entry's subtour
// visits. Any derivation of the profile from the children works.
std::vector<std::vector<VertexId>> assign_terminals(const NormalizedInstance& inst,
                                                    const DpTable& table, VertexId v,
                                                    const Profile& target) {
    const RoutingInstance& t = inst.tree;
    if (t.is_leaf(v)) return std::vector<std::vector<VertexId>>(target.size(), {v});

    const VertexId c1 = t.children[v][0];
    const VertexId c2 = t.children[v][1];
    for (const Profile& a : table.valid[c1]) {
        for (const Profile& b : table.valid[c2]) {
            if (std::max(a.size(), b.size()) > target.size()) continue;
            if (a.size() + b.size() < target.size()) continue;
            std::vector<Part> found;
            assemble(a, b, t.parent_weight[c1], t.parent_weight[c2],
                     static_cast<int>(target.size()), table.entry_cap[v],
                     [&](const std::vector<Part>& parts) {
                         if (parts.size() != target.size()) return true;
                         if (parts_to_profile(parts) != target) return true;
                         found = parts;
                         return false;
                     });
            if (found.empty()) continue;
            auto left_terms = assign_terminals(inst, table, c1, a);
            auto right_terms = assign_terminals(inst, table, c2, b);
            std::stable_sort(found.begin(), found.end(),
                             [](const Part& x, const Part& y) { return x.value < y.value; });
            std::vector<std::vector<VertexId>> out(target.size());
            for (std::size_t i = 0; i < found.size(); ++i) {
                if (found[i].left_index >= 0) {
                    const auto& src = left_terms[static_cast<std::size_t>(found[i].left_index)];
                    out[i].insert(out[i].end(), src.begin(), src.end());
                }
                if (found[i].right_index >= 0) {
                    const auto& src = right_terms[static_cast<std::size_t>(found[i].right_index)];
                    out[i].insert(out[i].end(), src.begin(), src.end());
                }
            }
            return out;
        }
    }
    throw Error("internal: stored profile has no derivation");
}

}  // namespace

std::optional<std::vector<std::vector<VertexId>>> reconstruct_tours(const NormalizedInstance& inst,
                                                                    int gamma,
                                                                    const SolveOptions& opts) {
    if (inst.tree.terminal_count() == 0) return std::vector<std::vector<VertexId>>{};
    DpTable table = build_profile_table(inst, gamma, opts);
    const auto& root_set = table.valid[static_cast<std::size_t>(inst.tree.root)];
    if (root_set.empty()) return std::nullopt;
    const Profile* best = &root_set.front();
    for (const Profile& p : root_set)
        if (p.size() < best->size()) best = &p;
    auto tours = assign_terminals(inst, table, inst.tree.root, *best);
    for (auto& tour : tours) {
        std::sort(tour.begin(), tour.end());
        tour.erase(std::unique(tour.begin(), tour.end()), tour.end());
    }
    return tours;
}

}  // namespace dvrp
