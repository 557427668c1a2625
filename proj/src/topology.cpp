#include "swarm/topology.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "swarm/errors.hpp"

namespace swarm {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

void Graph::add_edge(std::uint32_t a, std::uint32_t b)
{
    if (a >= node_count() || b >= node_count()) {
        throw std::invalid_argument("edge endpoint out of range");
    }
    if (a == b) {
        throw std::invalid_argument("self-loops are not allowed");
    }
    auto& na = adjacency_[a];
    auto pos = std::lower_bound(na.begin(), na.end(), b);
    if (pos != na.end() && *pos == b) {
        throw std::invalid_argument("duplicate edge");
    }
    na.insert(pos, b);
    auto& nb = adjacency_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    edge_count_ += 1;
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const
{
    if (a >= node_count() || b >= node_count() || a == b) {
        return false;
    }
    const auto& na = adjacency_[a];
    return std::binary_search(na.begin(), na.end(), b);
}

std::span<const std::uint32_t> Graph::neighbors(std::uint32_t id) const
{
    if (id >= node_count()) {
        throw std::invalid_argument("node id out of range");
    }
    return adjacency_[id];
}

bool Graph::connected() const
{
    if (node_count() == 0) {
        return false;
    }
    std::vector<char> seen(node_count(), 0);
    std::vector<std::uint32_t> stack{0};
    seen[0] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        for (std::uint32_t u : adjacency_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                visited += 1;
                stack.push_back(u);
            }
        }
    }
    return visited == node_count();
}

void Graph::write_edge_list(std::ostream& out) const
{
    out << "nodes " << node_count() << "\n";
    for (std::uint32_t i = 0; i < node_count(); ++i) {
        for (std::uint32_t j : adjacency_[i]) {
            if (i < j) {
                out << i << " " << j << "\n";
            }
        }
    }
}

Graph Graph::read_edge_list(std::istream& in)
{
    std::string header;
    std::size_t n = 0;
    if (!(in >> header >> n) || header != "nodes") {
        throw ConfigError("edge list must start with a 'nodes N' header");
    }
    Graph g(n);
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    while (in >> a >> b) {
        g.add_edge(a, b);
    }
    if (!in.eof()) {
        throw ConfigError("malformed edge list line");
    }
    return g;
}

Graph fully_connected(std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("fully connected topology requires n >= 2");
    }
    Graph g(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            g.add_edge(i, j);
        }
    }
    return g;
}

Graph ring(std::size_t n)
{
    if (n < 3) {
        throw std::invalid_argument("ring topology requires n >= 3");
    }
    Graph g(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_edge(i, static_cast<std::uint32_t>((i + 1) % n));
    }
    return g;
}

Graph line(std::size_t n)
{
    if (n < 2) {
        throw std::invalid_argument("line topology requires n >= 2");
    }
    Graph g(n);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        g.add_edge(i, i + 1);
    }
    return g;
}

Graph scale_free(std::size_t n, std::size_t attach, Rng& rng)
{
    if (attach < 1 || attach >= n) {
        throw std::invalid_argument("scale-free topology requires 1 <= attach < n");
    }
    Graph g(n);

    // Seed clique on attach+1 nodes.
    const std::size_t seed_nodes = attach + 1;
    for (std::uint32_t i = 0; i < seed_nodes; ++i) {
        for (std::uint32_t j = i + 1; j < seed_nodes; ++j) {
            g.add_edge(i, j);
        }
    }

    // Each node appears in the pool once per unit of degree, so a uniform
    // draw from the pool is a degree-proportional draw.
    std::vector<std::uint32_t> pool;
    pool.reserve(2 * (seed_nodes * attach / 2 + attach * (n - seed_nodes)));
    for (std::uint32_t i = 0; i < seed_nodes; ++i) {
        for (std::size_t k = 0; k < attach; ++k) {
            pool.push_back(i);
        }
    }

    std::vector<std::uint32_t> targets;
    for (std::uint32_t node = static_cast<std::uint32_t>(seed_nodes); node < n; ++node) {
        targets.clear();
        while (targets.size() < attach) {
            const std::uint32_t candidate = pool[uniform_below(rng, pool.size())];
            if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
                targets.push_back(candidate);
            }
        }
        for (std::uint32_t t : targets) {
            g.add_edge(node, t);
            pool.push_back(t);
            pool.push_back(node);
        }
    }
    return g;
}

std::string TopologyDescriptor::label() const
{
    switch (kind) {
    case TopologyKind::fully_connected:
        return "fully_connected";
    case TopologyKind::ring:
        return "ring";
    case TopologyKind::line:
        return "line";
    case TopologyKind::scale_free:
        return "scale_free(m=" + std::to_string(attach) + ")";
    }
    return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& name)
{
    if (name == "fully_connected") {
        return TopologyKind::fully_connected;
    }
    if (name == "ring") {
        return TopologyKind::ring;
    }
    if (name == "line") {
        return TopologyKind::line;
    }
    if (name == "scale_free") {
        return TopologyKind::scale_free;
    }
    throw ConfigError("unknown topology kind: " + name);
}

Graph build_topology(const TopologyDescriptor& desc, std::size_t n, Rng& rng)
{
    switch (desc.kind) {
    case TopologyKind::fully_connected:
        return fully_connected(n);
    case TopologyKind::ring:
        return ring(n);
    case TopologyKind::line:
        return line(n);
    case TopologyKind::scale_free:
        return scale_free(n, desc.attach, rng);
    }
    throw std::invalid_argument("unknown topology kind");
}

} // namespace swarm
