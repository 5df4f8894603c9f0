#include "ocd/graph.hpp"

#include <algorithm>
#include <deque>

#include "ocd/error.hpp"

namespace ocd {

std::string to_string(MoveKind kind) {
    switch (kind) {
        case MoveKind::Add: return "add";
        case MoveKind::Delete: return "delete";
        case MoveKind::Reverse: return "reverse";
    }
    return "unknown";
}

Move inverse(const Move& m) {
    switch (m.kind) {
        case MoveKind::Add: return {MoveKind::Delete, m.edge};
        case MoveKind::Delete: return {MoveKind::Add, m.edge};
        case MoveKind::Reverse: return {MoveKind::Reverse, {m.edge.target, m.edge.source}};
    }
    return m;
}

Dag::Dag(int num_nodes) : num_nodes_(num_nodes) {
    if (num_nodes < 1) {
        throw Error(ErrorKind::InvalidNode, "graph needs at least one node");
    }
    const auto p = static_cast<std::size_t>(num_nodes);
    adjacency_.assign(p * p, 0);
    parents_.resize(p);
    children_.resize(p);
}

Dag::Dag(int num_nodes, std::span<const Edge> edges) : Dag(num_nodes) {
    for (const Edge& e : edges) {
        check_node(e.source);
        check_node(e.target);
        if (e.source == e.target) {
            throw Error(ErrorKind::InvalidNode,
                        "self loop on node " + std::to_string(e.source));
        }
        if (adjacent(e.source, e.target)) {
            throw Error(ErrorKind::InapplicableMove,
                        "duplicate or antiparallel edge " + std::to_string(e.source) +
                            " -> " + std::to_string(e.target));
        }
        insert_edge(e.source, e.target);
    }
    if (!is_acyclic(num_nodes, edges)) {
        throw Error(ErrorKind::WouldCreateCycle, "edge set contains a directed cycle");
    }
}

void Dag::check_node(NodeId j) const {
    if (j < 0 || j >= num_nodes_) {
        throw Error(ErrorKind::InvalidNode, "node id " + std::to_string(j) +
                                                " out of range for " +
                                                std::to_string(num_nodes_) + " nodes");
    }
}

bool Dag::has_edge(NodeId source, NodeId target) const {
    check_node(source);
    check_node(target);
    return adjacency_[static_cast<std::size_t>(source) * num_nodes_ + target] != 0;
}

const std::vector<NodeId>& Dag::parents(NodeId j) const {
    check_node(j);
    return parents_[j];
}

const std::vector<NodeId>& Dag::children(NodeId j) const {
    check_node(j);
    return children_[j];
}

std::vector<Edge> Dag::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (NodeId s = 0; s < num_nodes_; ++s) {
        for (NodeId t : children_[s]) out.push_back({s, t});
    }
    return out;
}

std::vector<NodeId> Dag::topological_order() const {
    std::vector<int> indegree(num_nodes_);
    for (NodeId j = 0; j < num_nodes_; ++j) indegree[j] = static_cast<int>(parents_[j].size());
    std::vector<NodeId> order;
    order.reserve(num_nodes_);
    // Smallest ready id first so the order is reproducible.
    std::vector<NodeId> ready;
    for (NodeId j = num_nodes_ - 1; j >= 0; --j) {
        if (indegree[j] == 0) ready.push_back(j);
    }
    while (!ready.empty()) {
        NodeId j = ready.back();
        ready.pop_back();
        order.push_back(j);
        for (NodeId c : children_[j]) {
            if (--indegree[c] == 0) {
                ready.insert(std::upper_bound(ready.begin(), ready.end(), c, std::greater<>()), c);
            }
        }
    }
    return order;
}

bool Dag::reachable(NodeId from, NodeId to, std::optional<Edge> skip) const {
    check_node(from);
    check_node(to);
    std::vector<std::uint8_t> seen(num_nodes_, 0);
    std::vector<NodeId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : children_[u]) {
            if (skip && skip->source == u && skip->target == v) continue;
            if (v == to) return true;
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return false;
}

void Dag::insert_edge(NodeId source, NodeId target) {
    adjacency_[static_cast<std::size_t>(source) * num_nodes_ + target] = 1;
    auto& pa = parents_[target];
    pa.insert(std::lower_bound(pa.begin(), pa.end(), source), source);
    auto& ch = children_[source];
    ch.insert(std::lower_bound(ch.begin(), ch.end(), target), target);
    ++num_edges_;
}

void Dag::erase_edge(NodeId source, NodeId target) {
    adjacency_[static_cast<std::size_t>(source) * num_nodes_ + target] = 0;
    auto& pa = parents_[target];
    pa.erase(std::lower_bound(pa.begin(), pa.end(), source));
    auto& ch = children_[source];
    ch.erase(std::lower_bound(ch.begin(), ch.end(), target));
    --num_edges_;
}

bool is_acyclic(int num_nodes, std::span<const Edge> edges) {
    std::vector<int> indegree(num_nodes, 0);
    std::vector<std::vector<NodeId>> out(num_nodes);
    for (const Edge& e : edges) {
        if (e.source < 0 || e.source >= num_nodes || e.target < 0 || e.target >= num_nodes) {
            throw Error(ErrorKind::InvalidNode, "edge references a node out of range");
        }
        out[e.source].push_back(e.target);
        ++indegree[e.target];
    }
    std::deque<NodeId> ready;
    for (NodeId j = 0; j < num_nodes; ++j) {
        if (indegree[j] == 0) ready.push_back(j);
    }
    int visited = 0;
    while (!ready.empty()) {
        NodeId u = ready.front();
        ready.pop_front();
        ++visited;
        for (NodeId v : out[u]) {
            if (--indegree[v] == 0) ready.push_back(v);
        }
    }
    return visited == num_nodes;
}

namespace {

enum class Applicability { Ok, Inapplicable, Cycle };

Applicability check_move(const Dag& g, const Move& m) {
    const auto [s, t] = m.edge;
    if (s < 0 || t < 0 || s >= g.num_nodes() || t >= g.num_nodes() || s == t) {
        return Applicability::Inapplicable;
    }
    switch (m.kind) {
        case MoveKind::Add:
            if (g.adjacent(s, t)) return Applicability::Inapplicable;
            return g.reachable(t, s) ? Applicability::Cycle : Applicability::Ok;
        case MoveKind::Delete:
            return g.has_edge(s, t) ? Applicability::Ok : Applicability::Inapplicable;
        case MoveKind::Reverse:
            if (!g.has_edge(s, t)) return Applicability::Inapplicable;
            // t -> s closes a cycle iff s still reaches t without the edge itself.
            return g.reachable(s, t, m.edge) ? Applicability::Cycle : Applicability::Ok;
    }
    return Applicability::Inapplicable;
}

}  // namespace

bool is_applicable(const Dag& g, const Move& m) {
    return check_move(g, m) == Applicability::Ok;
}

Dag apply_move(const Dag& g, const Move& m) {
    switch (check_move(g, m)) {
        case Applicability::Inapplicable:
            throw Error(ErrorKind::InapplicableMove,
                        to_string(m.kind) + " " + std::to_string(m.edge.source) + " -> " +
                            std::to_string(m.edge.target) + " is not applicable");
        case Applicability::Cycle:
            throw Error(ErrorKind::WouldCreateCycle,
                        to_string(m.kind) + " " + std::to_string(m.edge.source) + " -> " +
                            std::to_string(m.edge.target) + " would create a cycle");
        case Applicability::Ok:
            break;
    }
    Dag out = g;
    const auto [s, t] = m.edge;
    switch (m.kind) {
        case MoveKind::Add:
            out.insert_edge(s, t);
            break;
        case MoveKind::Delete:
            out.erase_edge(s, t);
            break;
        case MoveKind::Reverse:
            out.erase_edge(s, t);
            out.insert_edge(t, s);
            break;
    }
    return out;
}

std::vector<Move> legal_moves(const Dag& g, std::optional<int> max_parents) {
    const int p = g.num_nodes();
    auto room_for_parent = [&](NodeId j) {
        return !max_parents || static_cast<int>(g.parents(j).size()) + 1 <= *max_parents;
    };
    std::vector<Move> moves;
    for (NodeId s = 0; s < p; ++s) {
        for (NodeId t = 0; t < p; ++t) {
            if (s == t || g.adjacent(s, t) || !room_for_parent(t)) continue;
            if (!g.reachable(t, s)) moves.push_back({MoveKind::Add, {s, t}});
        }
    }
    const auto edges = g.edges();
    for (const Edge& e : edges) moves.push_back({MoveKind::Delete, e});
    for (const Edge& e : edges) {
        if (!room_for_parent(e.source)) continue;
        if (!g.reachable(e.source, e.target, e)) moves.push_back({MoveKind::Reverse, e});
    }
    return moves;
}

bool canonical_less(const Dag& a, const Dag& b) {
    if (a.num_edges() != b.num_edges()) return a.num_edges() < b.num_edges();
    return a.edges() < b.edges();
}

std::vector<Dag> enumerate_dags(int p) {
    if (p < 1) throw Error(ErrorKind::InvalidNode, "need at least one node");
    if (p > kMaxEnumerationNodes) {
        throw Error(ErrorKind::TooManyNodes,
                    "exhaustive enumeration supports at most " +
                        std::to_string(kMaxEnumerationNodes) + " nodes, got " + std::to_string(p));
    }
    std::vector<Edge> pairs;
    for (NodeId a = 0; a < p; ++a) {
        for (NodeId b = a + 1; b < p; ++b) pairs.push_back({a, b});
    }
    // Each unordered pair is absent, a -> b, or b -> a.
    std::size_t total = 1;
    for (std::size_t i = 0; i < pairs.size(); ++i) total *= 3;

    std::vector<Dag> out;
    std::vector<Edge> edges;
    for (std::size_t code = 0; code < total; ++code) {
        edges.clear();
        std::size_t rest = code;
        for (const Edge& pr : pairs) {
            const auto state = rest % 3;
            rest /= 3;
            if (state == 1) edges.push_back(pr);
            if (state == 2) edges.push_back({pr.target, pr.source});
        }
        if (is_acyclic(p, edges)) out.emplace_back(p, edges);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

}  // namespace ocd
