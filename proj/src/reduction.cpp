#include "acyclab/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace acyclab {

// ---------------------------------------------------------------- SourceGraph

SourceGraph::SourceGraph(std::uint32_t n_, std::uint32_t Delta_,
                         std::vector<std::pair<VertexId, VertexId>> edge_list)
    : n(n_), Delta(Delta_) {
    for (auto& [u, v] : edge_list) {
        if (u == v) throw std::invalid_argument("SourceGraph: self-loop");
        if (u >= n || v >= n) throw std::invalid_argument("SourceGraph: vertex out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    if (std::adjacent_find(edge_list.begin(), edge_list.end()) != edge_list.end())
        throw std::invalid_argument("SourceGraph: duplicate edge");
    edges = std::move(edge_list);
    adj.assign(n, {});
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        if (nb.size() > Delta) throw std::invalid_argument("SourceGraph: degree exceeds bound");
    }
}

std::optional<VertexId> SourceGraph::f(VertexId v, std::uint32_t i) const {
    if (v >= n || i < 1 || i > Delta) throw std::invalid_argument("f_H: bad arguments");
    if (i > adj[v].size()) return std::nullopt;
    return adj[v][i - 1];
}

std::uint32_t SourceGraph::edge_rank(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
    if (it == edges.end() || *it != std::make_pair(u, v))
        throw std::invalid_argument("edge_rank: no such edge");
    return static_cast<std::uint32_t>(it - edges.begin());
}

SourceGraph read_source_graph(const std::string& path, std::uint32_t Delta) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::uint32_t n, m;
    if (!(in >> n >> m)) throw std::runtime_error("bad source graph header");
    std::vector<std::pair<VertexId, VertexId>> edges(m);
    for (auto& [u, v] : edges)
        if (!(in >> u >> v)) throw std::runtime_error("bad source graph edge");
    return SourceGraph(n, Delta, std::move(edges));
}

void write_source_graph(const std::string& path, const SourceGraph& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << h.n << ' ' << h.m() << '\n';
    for (auto [u, v] : h.edges) out << u << ' ' << v << '\n';
}

// ----------------------------------------------------------------- gap_params

namespace {

std::uint32_t ceil_to_u32(const Rational& x) {
    using boost::multiprecision::cpp_int;
    cpp_int q = numerator(x) / denominator(x);
    if (q * denominator(x) < numerator(x)) ++q;
    return static_cast<std::uint32_t>(q);
}

}  // namespace

ReductionParams gap_params(std::uint32_t Delta, const Rational& delta, std::uint32_t t) {
    if (Delta < 1 || t < 1 || delta <= 0 || delta > 1)
        throw std::invalid_argument("gap_params: bad arguments");
    ReductionParams p;
    p.Delta = Delta;
    p.delta = delta;
    p.t = t;
    p.r = std::max<std::uint32_t>(2, ceil_to_u32(Rational(2 * t * Delta) / delta));
    p.d = t * Delta + 2 * p.r;
    p.eps1 = Rational(1) / (Rational(3) * p.d * (1 + p.r));
    p.eps2 = (Rational(2) + delta / 2) /
             (Rational(6) * p.d * (Rational(1) + p.r + Rational(t * Delta) / 2));
    if (!(Rational(0) < p.eps1 && p.eps1 < p.eps2 && p.eps2 < 1))
        throw std::logic_error("gap_params: gap invariant violated");
    return p;
}

// ------------------------------------------------------------------- GadgetId

namespace {

// rank of the ordered pair (i, j), i != j, in lexicographic order
std::uint32_t pair_rank(std::uint32_t i, std::uint32_t j) {
    return (i - 1) * 2 + (j - 1) - (j > i ? 1 : 0);
}

void pair_unrank(std::uint32_t rank, std::uint32_t& i, std::uint32_t& j) {
    i = rank / 2 + 1;
    j = rank % 2 + 1;
    if (j >= i) ++j;
}

}  // namespace

std::string GadgetId::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Y: os << "y(" << v << ',' << i << ')'; break;
        case Kind::X: os << "x(" << v << ',' << i << ')'; break;
        case Kind::A: os << "a(" << v << ',' << i << ',' << l << ')'; break;
        case Kind::B: os << "b(" << v << ',' << i << ',' << l << ')'; break;
        case Kind::S: os << "s(" << v << ',' << i << ',' << j << ',' << l << ')'; break;
    }
    return os.str();
}

std::uint32_t gadget_count(std::uint32_t n, std::uint32_t m, std::uint32_t t, std::uint32_t r) {
    return 6 * n + 6 * t * m + 6 * r * n;
}

VertexId gadget_index(const GadgetId& id, std::uint32_t n, std::uint32_t m, std::uint32_t t,
                      std::uint32_t r) {
    switch (id.kind) {
        case GadgetId::Kind::Y: return 3 * id.v + (id.i - 1);
        case GadgetId::Kind::X: return 3 * n + 3 * id.v + (id.i - 1);
        case GadgetId::Kind::A: return 6 * n + 3 * t * id.v + t * (id.i - 1) + (id.l - 1);
        case GadgetId::Kind::B: return 6 * n + 3 * t * m + 3 * t * id.v + t * (id.i - 1) + (id.l - 1);
        case GadgetId::Kind::S:
            return 6 * n + 6 * t * m + 6 * r * id.v + r * pair_rank(id.i, id.j) + (id.l - 1);
    }
    throw std::logic_error("gadget_index: bad kind");
}

GadgetId gadget_decode(VertexId idx, std::uint32_t n, std::uint32_t m, std::uint32_t t,
                       std::uint32_t r) {
    GadgetId id;
    if (idx < 3 * n) {
        id.kind = GadgetId::Kind::Y;
        id.v = idx / 3;
        id.i = idx % 3 + 1;
        return id;
    }
    idx -= 3 * n;
    if (idx < 3 * n) {
        id.kind = GadgetId::Kind::X;
        id.v = idx / 3;
        id.i = idx % 3 + 1;
        return id;
    }
    idx -= 3 * n;
    if (idx < 3 * t * m) {
        id.kind = GadgetId::Kind::A;
        id.v = idx / (3 * t);
        id.i = idx % (3 * t) / t + 1;
        id.l = idx % t + 1;
        return id;
    }
    idx -= 3 * t * m;
    if (idx < 3 * t * m) {
        id.kind = GadgetId::Kind::B;
        id.v = idx / (3 * t);
        id.i = idx % (3 * t) / t + 1;
        id.l = idx % t + 1;
        return id;
    }
    idx -= 3 * t * m;
    if (idx < 6 * r * n) {
        id.kind = GadgetId::Kind::S;
        id.v = idx / (6 * r);
        pair_unrank(idx % (6 * r) / r, id.i, id.j);
        id.l = idx % r + 1;
        return id;
    }
    throw std::invalid_argument("gadget_decode: index out of range");
}

// --------------------------------------------------------------------- reduce

namespace {

// the x(v,i) adjacency list: s-targets in lex (j,l), then per sorted neighbor
// w the copies l=1..t of a (if v < w) or b (if v > w)
std::vector<VertexId> x_answer(const SourceGraph& h, const ReductionParams& p, VertexId v,
                               std::uint32_t i, const std::vector<VertexId>& neighbors) {
    const std::uint32_t n = h.n, m = h.m();
    std::vector<VertexId> out;
    for (std::uint32_t j = 1; j <= 3; ++j) {
        if (j == i) continue;
        for (std::uint32_t l = 1; l <= p.r; ++l)
            out.push_back(gadget_index({GadgetId::Kind::S, v, i, j, l}, n, m, p.t, p.r));
    }
    for (VertexId w : neighbors) {
        std::uint32_t e = h.edge_rank(v, w);
        auto kind = v < w ? GadgetId::Kind::A : GadgetId::Kind::B;
        for (std::uint32_t l = 1; l <= p.t; ++l)
            out.push_back(gadget_index({kind, e, i, 0, l}, n, m, p.t, p.r));
    }
    return out;
}

}  // namespace

Digraph reduce(const SourceGraph& h, const ReductionParams& p) {
    const std::uint32_t n = h.n, m = h.m();
    Digraph g(gadget_count(n, m, p.t, p.r));
    for (VertexId idx = 0; idx < g.n; ++idx) {
        GadgetId id = gadget_decode(idx, n, m, p.t, p.r);
        switch (id.kind) {
            case GadgetId::Kind::Y:
                g.add_arc(idx, gadget_index({GadgetId::Kind::X, id.v, id.i, 0, 0}, n, m, p.t, p.r));
                break;
            case GadgetId::Kind::X:
                for (VertexId w : x_answer(h, p, id.v, id.i, h.adj[id.v])) g.add_arc(idx, w);
                break;
            case GadgetId::Kind::A:
                g.add_arc(idx, gadget_index({GadgetId::Kind::Y, h.edges[id.v].second, id.i, 0, 0},
                                            n, m, p.t, p.r));
                break;
            case GadgetId::Kind::B:
                g.add_arc(idx, gadget_index({GadgetId::Kind::Y, h.edges[id.v].first, id.i, 0, 0},
                                            n, m, p.t, p.r));
                break;
            case GadgetId::Kind::S:
                g.add_arc(idx, gadget_index({GadgetId::Kind::Y, id.v, id.j, 0, 0}, n, m, p.t, p.r));
                break;
        }
    }
    return g;
}

// --------------------------------------------------------- ReductionSimulator

const std::vector<VertexId>& ReductionSimulator::neighbors(VertexId v, std::uint32_t& used) {
    auto it = cache_.find(v);
    if (it != cache_.end()) return it->second;
    std::vector<VertexId> nb;
    for (std::uint32_t i = 1; i <= h_.Delta; ++i) {
        ++used;
        auto w = h_.f(v, i);
        if (!w) break;  // neighbor slots are packed: first empty slot ends the list
        nb.push_back(*w);
    }
    std::sort(nb.begin(), nb.end());
    return cache_.emplace(v, std::move(nb)).first->second;
}

std::pair<std::vector<VertexId>, std::uint32_t> ReductionSimulator::simulate_query(
    const GadgetId& id) {
    const std::uint32_t n = h_.n, m = h_.m();
    std::uint32_t used = 0;
    std::vector<VertexId> answer;
    switch (id.kind) {
        case GadgetId::Kind::Y:
            answer.push_back(gadget_index({GadgetId::Kind::X, id.v, id.i, 0, 0}, n, m, p_.t, p_.r));
            break;
        case GadgetId::Kind::X:
            answer = x_answer(h_, p_, id.v, id.i, neighbors(id.v, used));
            break;
        case GadgetId::Kind::A:
            answer.push_back(gadget_index({GadgetId::Kind::Y, h_.edges.at(id.v).second, id.i, 0, 0},
                                          n, m, p_.t, p_.r));
            break;
        case GadgetId::Kind::B:
            answer.push_back(gadget_index({GadgetId::Kind::Y, h_.edges.at(id.v).first, id.i, 0, 0},
                                          n, m, p_.t, p_.r));
            break;
        case GadgetId::Kind::S:
            answer.push_back(gadget_index({GadgetId::Kind::Y, id.v, id.j, 0, 0}, n, m, p_.t, p_.r));
            break;
    }
    total_ += used;
    return {std::move(answer), used};
}

std::pair<std::vector<VertexId>, std::uint32_t> ReductionSimulator::simulate_query(VertexId idx) {
    return simulate_query(gadget_decode(idx, h_.n, h_.m(), p_.t, p_.r));
}

// --------------------------------------------------------------------- audits

std::vector<std::pair<VertexId, VertexId>> completeness_witness(
    const SourceGraph& h, const std::vector<std::uint32_t>& c, const ReductionParams& p) {
    if (c.size() != h.n) throw std::invalid_argument("completeness_witness: coloring size");
    for (std::uint32_t col : c)
        if (col < 1 || col > 3) throw std::invalid_argument("completeness_witness: bad color");
    for (auto [u, v] : h.edges)
        if (c[u] == c[v]) throw std::invalid_argument("completeness_witness: coloring improper");

    const std::uint32_t n = h.n, m = h.m();
    std::vector<std::pair<VertexId, VertexId>> F;
    for (VertexId v = 0; v < n; ++v)
        for (std::uint32_t i = 1; i <= 3; ++i)
            if (i != c[v])
                F.emplace_back(gadget_index({GadgetId::Kind::Y, v, i, 0, 0}, n, m, p.t, p.r),
                               gadget_index({GadgetId::Kind::X, v, i, 0, 0}, n, m, p.t, p.r));
    if (F.size() != 2 * static_cast<std::size_t>(n))
        throw std::logic_error("completeness_witness: |F| != 2n");

    Digraph g = reduce(h, p);
    std::set<std::pair<VertexId, VertexId>> drop(F.begin(), F.end());
    Digraph residual(g.n);
    for (VertexId u = 0; u < g.n; ++u)
        for (VertexId v : g.adj[u])
            if (!drop.count({u, v})) residual.add_arc(u, v);
    if (!topological_order(residual))
        throw std::logic_error("completeness_witness: residual not acyclic");
    return F;
}

std::uint64_t assignment_distance(const SourceGraph& h, std::uint32_t t) {
    if (h.n > 12) throw std::invalid_argument("assignment_distance: n > 12");
    const std::uint32_t n = h.n;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> c(n, 0);  // 0 = unassigned
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < n; ++i) combos *= 4;
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::uint64_t x = code;
        std::uint64_t cost = 2 * static_cast<std::uint64_t>(n);
        for (std::uint32_t v = 0; v < n; ++v, x /= 4) {
            c[v] = static_cast<std::uint32_t>(x % 4);
            if (c[v] == 0) ++cost;
        }
        for (auto [u, v] : h.edges)
            if (c[u] != 0 && c[u] == c[v]) cost += t;
        best = std::min(best, cost);
    }
    return n == 0 ? 0 : best;
}

std::pair<bool, std::uint64_t> three_color_audit(const SourceGraph& h) {
    if (h.n > 15) throw std::invalid_argument("three_color_audit: n > 15");
    const std::uint32_t n = h.n;
    std::uint64_t best = h.m();
    std::uint64_t combos = 1;
    for (std::uint32_t i = 0; i < n; ++i) combos *= 3;
    std::vector<std::uint32_t> c(n);
    for (std::uint64_t code = 0; code < combos; ++code) {
        std::uint64_t x = code;
        for (std::uint32_t v = 0; v < n; ++v, x /= 3) c[v] = static_cast<std::uint32_t>(x % 3);
        std::uint64_t mono = 0;
        for (auto [u, v] : h.edges) mono += c[u] == c[v];
        best = std::min(best, mono);
        if (best == 0) break;
    }
    return {best == 0, best};
}

}  // namespace acyclab
