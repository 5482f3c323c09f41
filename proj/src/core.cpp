#include "acyclab/core.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace acyclab {

void Digraph::add_arc(VertexId u, VertexId v) {
    if (u >= n || v >= n) throw std::out_of_range("Digraph::add_arc: vertex out of range");
    adj[u].push_back(v);
}

std::size_t Digraph::arc_count() const {
    std::size_t m = 0;
    for (const auto& a : adj) m += a.size();
    return m;
}

std::string PartitionLabel::to_string() const {
    if (is_blue()) return "B";
    return "R" + std::to_string(layer);
}

PartitionLabel PartitionLabel::parse(const std::string& text) {
    if (text == "B") return blue();
    if (text.size() >= 2 && text[0] == 'R') {
        std::uint32_t i = static_cast<std::uint32_t>(std::stoul(text.substr(1)));
        if (i >= 1) return red(i);
    }
    throw std::invalid_argument("PartitionLabel::parse: bad label '" + text + "'");
}

namespace {

// Integer cube root: largest t with t^3 <= x.
std::uint32_t icbrt(std::uint64_t x) {
    std::uint32_t t = 0;
    while (static_cast<std::uint64_t>(t + 1) * (t + 1) * (t + 1) <= x) ++t;
    return t;
}

}  // namespace

Params derive_params(std::uint32_t n, std::uint32_t d) {
    if (n < 3 || n % 3 != 0)
        throw std::invalid_argument("derive_params: n must be a positive multiple of 3");
    if (d < 2) throw std::invalid_argument("derive_params: d must be at least 2");

    Params p;
    p.n = n;
    p.N = n / 3;
    p.d = d;
    p.d_B = d / 2;
    p.d_R = d - p.d_B;
    p.T = icbrt(p.N);
    p.L = 2 * p.T;

    std::uint32_t a = p.N / p.T;
    std::uint32_t b = p.N - a * p.T;
    p.layer_sizes.resize(p.L);
    for (std::uint32_t i = 1; i <= p.T; ++i) {
        std::uint32_t sz = (i <= b) ? a + 1 : a;
        p.layer_sizes[i - 1] = sz;
        p.layer_sizes[p.T + i - 1] = sz;
    }

    std::uint64_t half = 0;
    for (std::uint32_t i = 0; i < p.T; ++i) half += p.layer_sizes[i];
    if (half != p.N) throw std::logic_error("derive_params: layer sizes do not sum to N");
    return p;
}

std::optional<std::vector<VertexId>> topological_order(const Digraph& g) {
    std::vector<std::uint32_t> indeg(g.n, 0);
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u]) ++indeg[v];

    std::vector<VertexId> order;
    order.reserve(g.n);
    std::vector<VertexId> stack;
    for (VertexId v = 0; v < g.n; ++v)
        if (indeg[v] == 0) stack.push_back(v);

    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (VertexId v : g.adj[u])
            if (--indeg[v] == 0) stack.push_back(v);
    }
    if (order.size() != g.n) return std::nullopt;
    return order;
}

std::uint64_t backward_edge_count(const Digraph& g, std::span<const VertexId> ordering) {
    if (ordering.size() != g.n)
        throw std::invalid_argument("backward_edge_count: ordering size mismatch");
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> rank(g.n, kUnset);
    for (std::uint32_t pos = 0; pos < ordering.size(); ++pos) {
        VertexId v = ordering[pos];
        if (v >= g.n || rank[v] != kUnset)
            throw std::invalid_argument("backward_edge_count: ordering is not a permutation");
        rank[v] = pos;
    }
    std::uint64_t count = 0;
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (rank[v] <= rank[u]) ++count;  // self-loops are always backward
    return count;
}

void write_graph(std::ostream& out, const Digraph& g) {
    out << g.n << ' ' << g.arc_count() << '\n';
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u]) out << u << ' ' << v << '\n';
}

Digraph read_graph(std::istream& in) {
    std::uint64_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("read_graph: missing header");
    Digraph g(static_cast<std::uint32_t>(n));
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t u = 0, v = 0;
        if (!(in >> u >> v)) throw std::runtime_error("read_graph: truncated arc list");
        g.add_arc(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    return g;
}

void write_graph_file(const std::string& path, const Digraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_graph(out, g);
}

Digraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_graph(in);
}

void write_labels_file(const std::string& path, const std::vector<PartitionLabel>& labels) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t v = 0; v < labels.size(); ++v)
        out << v << ' ' << labels[v].to_string() << '\n';
}

std::vector<PartitionLabel> read_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::vector<PartitionLabel> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::uint64_t v;
        std::string lab;
        if (!(ls >> v >> lab)) throw std::runtime_error("bad label line: " + line);
        if (labels.size() <= v) labels.resize(v + 1);
        labels[v] = PartitionLabel::parse(lab);
    }
    return labels;
}

}  // namespace acyclab
