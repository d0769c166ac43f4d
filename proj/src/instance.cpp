#include "dvrp/instance.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dvrp {

std::vector<VertexId> RoutingInstance::terminal_list() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < terminal.size(); ++v)
        if (terminal[v]) out.push_back(static_cast<VertexId>(v));
    return out;
}

std::size_t RoutingInstance::terminal_count() const {
    std::size_t n = 0;
    for (char t : terminal) n += t != 0;
    return n;
}

void RoutingInstance::finalize() {
    const std::size_t n = parent.size();
    if (parent_weight.size() != n || external_id.size() != n || terminal.size() != n)
        throw ContractError("instance field sizes disagree");
    if (n == 0) throw ContractError("instance has no vertices");
    if (root < 0 || static_cast<std::size_t>(root) >= n || parent[root] != -1)
        throw ContractError("root vertex is not a parentless vertex");

    children.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        if (static_cast<VertexId>(v) == root) continue;
        VertexId p = parent[v];
        if (p < 0 || static_cast<std::size_t>(p) >= n)
            throw ContractError("vertex " + std::to_string(v) + " has an invalid parent");
        if (parent_weight[v] < 0) throw ContractError("negative weight on edge to vertex " + std::to_string(v));
        children[p].push_back(static_cast<VertexId>(v));
    }

    depth.assign(n, -1);
    hops.assign(n, -1);
    depth[root] = 0;
    hops[root] = 0;
    std::vector<VertexId> stack{root};
    std::size_t seen = 1;
    while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        for (VertexId c : children[v]) {
            depth[c] = depth[v] + parent_weight[c];
            hops[c] = hops[v] + 1;
            stack.push_back(c);
            ++seen;
        }
    }
    if (seen != n) throw ContractError("parent links are cyclic or disconnected");
}

long long dist(const RoutingInstance& inst, VertexId u, VertexId v) {
    const auto n = static_cast<VertexId>(inst.vertex_count());
    if (u < 0 || u >= n || v < 0 || v >= n) throw ContractError("unknown vertex id");
    long long d = 0;
    while (u != v) {
        if (inst.hops[u] >= inst.hops[v]) {
            d += inst.parent_weight[u];
            u = inst.parent[u];
        } else {
            d += inst.parent_weight[v];
            v = inst.parent[v];
        }
    }
    return d;
}

long long steiner_weight(const RoutingInstance& inst, VertexId base,
                         const std::vector<VertexId>& targets) {
    // Union of base-to-target paths, collected as edge ids (an edge is keyed
    // by its child endpoint).
    std::unordered_set<VertexId> edges;
    for (VertexId t : targets) {
        VertexId u = base, v = t;
        while (u != v) {
            if (inst.hops[u] >= inst.hops[v]) {
                edges.insert(u);
                u = inst.parent[u];
            } else {
                edges.insert(v);
                v = inst.parent[v];
            }
        }
    }
    long long total = 0;
    for (VertexId e : edges) total += inst.parent_weight[e];
    return total;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

long long parse_ll(const std::string& tok, int line_no, const char* what) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    }
    if (pos != tok.size())
        throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
    return v;
}

}  // namespace

RoutingInstance parse_instance(std::istream& in) {
    struct EdgeLine {
        long long child, parent;
        Weight w;
    };
    bool saw_header = false, saw_d = false, saw_root = false, saw_terminals = false;
    long long d_value = 0, root_id = 0;
    std::vector<EdgeLine> edges;
    std::vector<long long> terminal_ids;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (!saw_header) {
            if (kw != "dvrp" || toks.size() != 2 || toks[1] != "1")
                throw ParseError(line_no, "expected format header 'dvrp 1'");
            saw_header = true;
            continue;
        }
        if (saw_terminals) throw ParseError(line_no, "content after terminals line");
        if (kw == "D") {
            if (saw_d || toks.size() != 2) throw ParseError(line_no, "malformed D line");
            d_value = parse_ll(toks[1], line_no, "distance bound");
            if (d_value <= 0) throw ParseError(line_no, "distance bound must be positive");
            saw_d = true;
        } else if (kw == "root") {
            if (!saw_d || saw_root || toks.size() != 2) throw ParseError(line_no, "malformed root line");
            root_id = parse_ll(toks[1], line_no, "root id");
            saw_root = true;
        } else if (kw == "edge") {
            if (!saw_root || toks.size() != 4) throw ParseError(line_no, "malformed edge line");
            EdgeLine e;
            e.child = parse_ll(toks[1], line_no, "child id");
            e.parent = parse_ll(toks[2], line_no, "parent id");
            e.w = parse_ll(toks[3], line_no, "weight");
            if (e.w < 0) throw ParseError(line_no, "negative weight on edge to vertex " + toks[1]);
            edges.push_back(e);
        } else if (kw == "terminals") {
            if (!saw_root) throw ParseError(line_no, "terminals line before root");
            for (std::size_t i = 1; i < toks.size(); ++i)
                terminal_ids.push_back(parse_ll(toks[i], line_no, "terminal id"));
            saw_terminals = true;
        } else {
            throw ParseError(line_no, "unknown directive '" + kw + "'");
        }
    }
    if (!saw_header) throw ParseError("empty instance: missing 'dvrp 1' header");
    if (!saw_d || !saw_root) throw ParseError("missing D or root line");
    if (!saw_terminals) throw ParseError("missing terminals line");

    std::unordered_map<long long, VertexId> index;
    std::vector<long long> ids;
    auto intern = [&](long long id) {
        auto [it, fresh] = index.emplace(id, static_cast<VertexId>(ids.size()));
        if (fresh) ids.push_back(id);
        return it->second;
    };
    intern(root_id);
    for (const auto& e : edges) {
        if (e.child == root_id) throw ParseError("root " + std::to_string(root_id) + " listed as edge child");
        intern(e.child);
    }

    RoutingInstance inst;
    inst.distance_bound = d_value;
    std::unordered_set<long long> seen_children;
    for (const auto& e : edges)
        if (!seen_children.insert(e.child).second)
            throw ParseError("duplicate vertex id " + std::to_string(e.child));
    for (const auto& e : edges)
        if (!index.count(e.parent))
            throw ParseError("vertex " + std::to_string(e.parent) +
                             " is used as a parent but has no edge to the tree");

    const std::size_t n = ids.size();
    inst.root = 0;
    inst.parent.assign(n, -1);
    inst.parent_weight.assign(n, 0);
    inst.external_id = ids;
    inst.terminal.assign(n, 0);
    for (const auto& e : edges) {
        VertexId c = index.at(e.child);
        inst.parent[c] = index.at(e.parent);
        inst.parent_weight[c] = e.w;
    }
    for (long long t : terminal_ids) {
        auto it = index.find(t);
        if (it == index.end())
            throw ParseError("terminal " + std::to_string(t) + " is not a vertex of the tree");
        inst.terminal[it->second] = 1;
    }
    try {
        inst.finalize();
    } catch (const ContractError& e) {
        throw ParseError(e.what());
    }
    return inst;
}

RoutingInstance parse_instance(const std::string& text) {
    std::istringstream ss(text);
    return parse_instance(ss);
}

std::string serialize_instance(const RoutingInstance& inst) {
    std::ostringstream out;
    out << "dvrp 1\n";
    out << "D " << inst.distance_bound << "\n";
    out << "root " << inst.external_id[inst.root] << "\n";
    std::vector<VertexId> order;
    for (std::size_t v = 0; v < inst.vertex_count(); ++v)
        if (static_cast<VertexId>(v) != inst.root) order.push_back(static_cast<VertexId>(v));
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
        return inst.external_id[a] < inst.external_id[b];
    });
    for (VertexId v : order)
        out << "edge " << inst.external_id[v] << " " << inst.external_id[inst.parent[v]] << " "
            << inst.parent_weight[v] << "\n";
    std::vector<long long> terms;
    for (VertexId v : inst.terminal_list()) terms.push_back(inst.external_id[v]);
    std::sort(terms.begin(), terms.end());
    out << "terminals";
    for (long long t : terms) out << " " << t;
    out << "\n";
    return out.str();
}

namespace {

struct WorkNode {
    int parent = -1;
    Weight w = 0;
    std::vector<int> kids;
    bool terminal = false;
    int source = -1;
    bool alive = true;
};

}  // namespace

NormalizedInstance normalize(const RoutingInstance& inst) {
    for (VertexId t : inst.terminal_list())
        if (2 * inst.depth[t] > inst.distance_bound)
            throw InfeasibleError("terminal " + std::to_string(inst.external_id[t]) +
                                  " is unreachable: 2*dist(root,v) = " + std::to_string(2 * inst.depth[t]) +
                                  " > D = " + std::to_string(inst.distance_bound));

    std::vector<WorkNode> nodes(inst.vertex_count());
    for (std::size_t v = 0; v < inst.vertex_count(); ++v) {
        nodes[v].parent = inst.parent[v];
        nodes[v].w = inst.parent_weight[v];
        nodes[v].terminal = inst.is_terminal(static_cast<VertexId>(v));
        nodes[v].source = static_cast<int>(v);
    }
    int root = inst.root;
    long long d_bound = inst.distance_bound;

    // Drop subtrees that contain no terminal (post-order sweep).
    {
        std::vector<char> keep(nodes.size(), 0);
        std::vector<std::vector<int>> kids(nodes.size());
        for (std::size_t v = 0; v < nodes.size(); ++v)
            if (static_cast<int>(v) != root) kids[nodes[v].parent].push_back(static_cast<int>(v));
        std::vector<int> order;
        std::vector<int> dfs{root};
        while (!dfs.empty()) {
            int v = dfs.back();
            dfs.pop_back();
            order.push_back(v);
            for (int c : kids[v]) dfs.push_back(c);
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int v = *it;
            if (nodes[v].terminal) keep[v] = 1;
            for (int c : kids[v]) keep[v] |= keep[c];
        }
        keep[root] = 1;
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            nodes[v].alive = keep[v] != 0;
            if (keep[v] && static_cast<int>(v) != root && keep[nodes[v].parent])
                nodes[nodes[v].parent].kids.push_back(static_cast<int>(v));
        }
    }

    auto add_node = [&](int parent, Weight w, bool terminal, int source) {
        WorkNode n;
        n.parent = parent;
        n.w = w;
        n.terminal = terminal;
        n.source = source;
        nodes.push_back(n);
        if (parent >= 0) nodes[parent].kids.push_back(static_cast<int>(nodes.size() - 1));
        return static_cast<int>(nodes.size() - 1);
    };

    // Terminals with children get a zero-weight pendant leaf that takes over
    // the terminal role, so terminals and leaves coincide.
    {
        const std::size_t upto = nodes.size();
        for (std::size_t v = 0; v < upto; ++v) {
            if (!nodes[v].alive || !nodes[v].terminal || nodes[v].kids.empty()) continue;
            nodes[v].terminal = false;
            add_node(static_cast<int>(v), 0, true, nodes[v].source);
        }
    }

    // A single-child root is removed; the child becomes the depot and the
    // bound shrinks by a round trip over the dropped edge.
    while (nodes[root].kids.size() == 1) {
        int child = nodes[root].kids[0];
        d_bound -= 2 * nodes[child].w;
        nodes[root].alive = false;
        nodes[child].parent = -1;
        nodes[child].w = 0;
        root = child;
    }

    // Splice out the remaining single-child vertices (all non-terminal now).
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (!nodes[v].alive || static_cast<int>(v) == root || nodes[v].kids.size() != 1) continue;
        int child = nodes[v].kids[0];
        int parent = nodes[v].parent;
        nodes[child].parent = parent;
        nodes[child].w += nodes[v].w;
        auto& pk = nodes[parent].kids;
        *std::find(pk.begin(), pk.end(), static_cast<int>(v)) = child;
        nodes[v].alive = false;
    }

    // Split vertices with more than two children using zero-weight copies.
    {
        std::vector<int> work;
        for (std::size_t v = 0; v < nodes.size(); ++v)
            if (nodes[v].alive && nodes[v].kids.size() > 2) work.push_back(static_cast<int>(v));
        while (!work.empty()) {
            int v = work.back();
            work.pop_back();
            while (nodes[v].kids.size() > 2) {
                std::vector<int> moved(nodes[v].kids.begin() + 1, nodes[v].kids.end());
                nodes[v].kids.resize(1);
                int copy = add_node(v, 0, false, nodes[v].source);
                for (int c : moved) {
                    nodes[c].parent = copy;
                    nodes[copy].kids.push_back(c);
                }
                v = copy;
            }
        }
    }

    // Renumber the surviving vertices in depth-first preorder.
    NormalizedInstance out;
    std::vector<int> dense(nodes.size(), -1);
    std::vector<int> stack{root};
    std::vector<int> order;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto it = nodes[v].kids.rbegin(); it != nodes[v].kids.rend(); ++it) stack.push_back(*it);
    }
    for (std::size_t i = 0; i < order.size(); ++i) dense[order[i]] = static_cast<int>(i);

    RoutingInstance& tree = out.tree;
    tree.distance_bound = d_bound < 0 ? 0 : d_bound;
    tree.root = 0;
    const std::size_t n = order.size();
    tree.parent.assign(n, -1);
    tree.parent_weight.assign(n, 0);
    tree.external_id.assign(n, 0);
    tree.terminal.assign(n, 0);
    out.source_vertex.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const WorkNode& nd = nodes[order[i]];
        if (nd.parent >= 0) {
            tree.parent[i] = dense[nd.parent];
            tree.parent_weight[i] = nd.w;
        }
        tree.terminal[i] = nd.terminal ? 1 : 0;
        tree.external_id[i] = inst.external_id[nd.source];
        out.source_vertex[i] = nd.source;
    }
    tree.finalize();
    return out;
}

}  // namespace dvrp
