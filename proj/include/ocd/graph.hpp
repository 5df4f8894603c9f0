#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ocd {

// Node ids are 0-based indices into the dataset columns. Anything that leaves
// the process (edge lists, DOT, JSON) refers to nodes by column name.
using NodeId = int;

struct Edge {
    NodeId source = 0;
    NodeId target = 0;

    auto operator<=>(const Edge&) const = default;
};

enum class MoveKind { Add = 0, Delete = 1, Reverse = 2 };

std::string to_string(MoveKind kind);

// Single-edge edit. The defaulted ordering (kind, then source, then target) is
// the canonical move order used for deterministic tie-breaking in search.
struct Move {
    MoveKind kind = MoveKind::Add;
    Edge edge;

    auto operator<=>(const Move&) const = default;
};

// The move that undoes `m` on the graph it was applied to.
Move inverse(const Move& m);

// Immutable directed acyclic graph over nodes 0..p-1.
class Dag {
public:
    explicit Dag(int num_nodes);

    // Throws InvalidNode for out-of-range ids or self loops, InapplicableMove
    // for duplicate or antiparallel edges, WouldCreateCycle if not acyclic.
    Dag(int num_nodes, std::span<const Edge> edges);

    int num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_edges() const noexcept { return num_edges_; }

    bool has_edge(NodeId source, NodeId target) const;
    bool adjacent(NodeId a, NodeId b) const { return has_edge(a, b) || has_edge(b, a); }

    // Sorted ascending.
    const std::vector<NodeId>& parents(NodeId j) const;
    const std::vector<NodeId>& children(NodeId j) const;

    // Lexicographically sorted by (source, target).
    std::vector<Edge> edges() const;

    std::vector<NodeId> topological_order() const;

    // True if a directed path from `from` to `to` exists. When `skip` is set
    // that edge is ignored.
    bool reachable(NodeId from, NodeId to, std::optional<Edge> skip = std::nullopt) const;

    bool operator==(const Dag& other) const {
        return num_nodes_ == other.num_nodes_ && adjacency_ == other.adjacency_;
    }

private:
    void check_node(NodeId j) const;
    void insert_edge(NodeId source, NodeId target);
    void erase_edge(NodeId source, NodeId target);

    friend Dag apply_move(const Dag& g, const Move& m);

    int num_nodes_;
    std::size_t num_edges_ = 0;
    std::vector<std::uint8_t> adjacency_;  // row-major [source * p + target]
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
};

// Kahn's algorithm. Edges must reference ids in [0, num_nodes).
bool is_acyclic(int num_nodes, std::span<const Edge> edges);

bool is_applicable(const Dag& g, const Move& m);

// Throws InapplicableMove or WouldCreateCycle.
Dag apply_move(const Dag& g, const Move& m);

// All applicable moves in canonical order: Adds, then Deletes, then Reverses,
// each lexicographic by (source, target). When `max_parents` is set, Adds and
// Reverses that would leave a node with more parents are dropped.
std::vector<Move> legal_moves(const Dag& g, std::optional<int> max_parents = std::nullopt);

inline constexpr int kMaxEnumerationNodes = 4;

// Every labeled DAG on p nodes, in canonical graph order. Throws TooManyNodes
// for p > 4.
std::vector<Dag> enumerate_dags(int p);

// Canonical graph order: fewer edges first, then lexicographic edge list.
bool canonical_less(const Dag& a, const Dag& b);

}  // namespace ocd
