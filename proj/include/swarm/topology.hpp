#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swarm/rng.hpp"

namespace swarm {

// Undirected simple graph over robot ids 0..n-1. Adjacency lists are kept
// sorted ascending so that anything iterating neighbors (fusion order, edge
// list output) is deterministic.
class Graph {
public:
    explicit Graph(std::size_t node_count);

    std::size_t node_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    // Inserts an undirected edge. Self-loops and duplicates are rejected.
    void add_edge(std::uint32_t a, std::uint32_t b);

    bool has_edge(std::uint32_t a, std::uint32_t b) const;

    std::span<const std::uint32_t> neighbors(std::uint32_t id) const;
    std::size_t degree(std::uint32_t id) const { return neighbors(id).size(); }

    const std::vector<std::vector<std::uint32_t>>& adjacency() const { return adjacency_; }

    bool connected() const;

    // Plain text edge list: header "nodes N", then one "i j" pair per line
    // with i < j, sorted.
    void write_edge_list(std::ostream& out) const;
    static Graph read_edge_list(std::istream& in);

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::size_t edge_count_ = 0;
};

// Every pair of distinct nodes adjacent; n >= 2.
Graph fully_connected(std::size_t n);

// Cycle: i adjacent to (i +/- 1) mod n; n >= 3.
Graph ring(std::size_t n);

// Path: i adjacent to i+1; n >= 2.
Graph line(std::size_t n);

// Preferential attachment: a clique of attach+1 seed nodes, then each new
// node links to `attach` distinct existing nodes chosen with probability
// proportional to current degree. Requires 1 <= attach < n.
Graph scale_free(std::size_t n, std::size_t attach, Rng& rng);

enum class TopologyKind { fully_connected, ring, line, scale_free };

struct TopologyDescriptor {
    TopologyKind kind = TopologyKind::fully_connected;
    std::size_t attach = 2; // scale-free only

    std::string label() const;
    friend bool operator==(const TopologyDescriptor&, const TopologyDescriptor&) = default;
};

TopologyKind topology_kind_from_string(const std::string& name);

// Builds the graph named by the descriptor; rng is consumed only by the
// scale-free generator.
Graph build_topology(const TopologyDescriptor& desc, std::size_t n, Rng& rng);

} // namespace swarm
