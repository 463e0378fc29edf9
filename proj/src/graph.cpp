#include "graphdiscord/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphdiscord/errors.hpp"

namespace gd {

WeightedGraph::WeightedGraph(Partition partition) : partition_(partition) {
    if(partition.p < 0 || partition.q < 0 || partition.qubits() < 1)
        throw DimensionError("graph partition must have p, q >= 0 and p + q >= 1");
    if(partition.qubits() > 12) throw DimensionError("graphs beyond 12 qubits are not supported");
}

void WeightedGraph::check_vertex(Vertex v) const {
    if(v >= vertex_count())
        throw DimensionError("vertex " + std::to_string(v) + " out of range (graph has " +
                             std::to_string(vertex_count()) + " vertices)");
}

void WeightedGraph::add_edge(Vertex u, Vertex v, Complex w) {
    check_vertex(u);
    check_vertex(v);
    if(u == v) throw ContractViolation("edge (" + std::to_string(u) + "," + std::to_string(u) + ") is a loop; use loops");
    if(!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw ContractViolation("edge weight is not finite");
    if(u > v) {
        std::swap(u, v);
        w = std::conj(w);
    }
    const auto key = [](const Edge &e) { return std::pair{e.u, e.v}; };
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [&](const Edge &e, const std::pair<Vertex, Vertex> &k) { return key(e) < k; });
    if(it != edges_.end() && it->u == u && it->v == v)
        throw ContractViolation("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    edges_.insert(it, Edge{u, v, w});
}

void WeightedGraph::set_loop(Vertex v, double w) {
    check_vertex(v);
    if(!std::isfinite(w)) throw ContractViolation("loop weight is not finite");
    if(!loops_.emplace(v, w).second) throw ContractViolation("duplicate loop on vertex " + std::to_string(v));
}

double WeightedGraph::loop(Vertex v) const {
    auto it = loops_.find(v);
    return it == loops_.end() ? 0.0 : it->second;
}

LaplacianConvention default_convention(const WeightedGraph &g) {
    for(const auto &e : g.edges())
        if(e.w.imag() != 0.0) return LaplacianConvention::magnitude;
    return LaplacianConvention::signed_;
}

LaplacianConvention effective_convention(const WeightedGraph &g) {
    return g.preferred_convention().value_or(default_convention(g));
}

ComplexMatrix laplacian(const WeightedGraph &g, LaplacianConvention conv) {
    const auto n = static_cast<Eigen::Index>(g.vertex_count());
    ComplexMatrix lap = ComplexMatrix::Zero(n, n);
    for(const auto &[v, w] : g.loops()) lap(v, v) += w;
    for(const auto &e : g.edges()) {
        if(conv == LaplacianConvention::magnitude) {
            const double m = std::abs(e.w);
            lap(e.u, e.u) += m;
            lap(e.v, e.v) += m;
            lap(e.u, e.v) = e.w;
            lap(e.v, e.u) = std::conj(e.w);
        } else {
            if(e.w.imag() != 0.0)
                throw ConventionError("signed Laplacian requires real weights; edge (" + std::to_string(e.u) + "," +
                                      std::to_string(e.v) + ") is complex");
            lap(e.u, e.u) += e.w.real();
            lap(e.v, e.v) += e.w.real();
            lap(e.u, e.v) = -e.w.real();
            lap(e.v, e.u) = -e.w.real();
        }
    }
    return lap;
}

DensityOperator density_operator(const WeightedGraph &g, LaplacianConvention conv, const Tolerance &tol) {
    const ComplexMatrix lap = laplacian(g, conv);
    const double tr = lap.trace().real();
    if(!(tr > 0.0)) throw NormalizationError("Laplacian trace " + std::to_string(tr) + " is not positive");
    return DensityOperator(lap / tr, g.partition(), conv, tol);
}

std::vector<std::vector<Vertex>> connected_components(const WeightedGraph &g) {
    const auto n = g.vertex_count();
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    const auto find = [&](Vertex x) {
        while(parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for(const auto &e : g.edges()) {
        if(e.w == Complex{}) continue;
        const auto a = find(e.u), b = find(e.v);
        if(a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<Vertex, std::vector<Vertex>> groups;
    for(Vertex v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<Vertex>> out;
    out.reserve(groups.size());
    for(auto &[root, members] : groups) out.push_back(std::move(members));
    return out;
}

bool pure_by_entries(const DensityOperator &rho, const Tolerance &tol) {
    const auto &m = rho.matrix();
    const double eps = tol.threshold(maxnorm(m));
    const auto n = m.rows();

    std::vector<Eigen::Index> support;
    for(Eigen::Index i = 0; i < n; ++i)
        if(m(i, i).real() > eps) support.push_back(i);
    if(support.empty()) return false;

    std::vector<bool> in_support(static_cast<std::size_t>(n), false);
    for(auto i : support) in_support[static_cast<std::size_t>(i)] = true;
    for(Eigen::Index i = 0; i < n; ++i) {
        if(in_support[static_cast<std::size_t>(i)]) continue;
        if(m.row(i).cwiseAbs().maxCoeff() > eps) return false;
    }

    const double c = m(support.front(), support.front()).real();
    for(auto i : support)
        for(auto j : support)
            if(std::abs(std::abs(m(i, j)) - c) > eps) return false;
    return true;
}

bool pure_by_component(const WeightedGraph &g, LaplacianConvention conv, const Tolerance &tol) {
    ComplexMatrix lap;
    try {
        lap = laplacian(g, conv);
    } catch(const ConventionError &) {
        return false;
    }
    const double eps = tol.threshold(maxnorm(lap));

    const std::vector<Vertex> *weighted = nullptr;
    const auto comps = connected_components(g);
    for(const auto &comp : comps) {
        const bool carries = comp.size() > 1 || std::abs(lap(comp.front(), comp.front())) > eps;
        if(!carries) continue;
        if(weighted != nullptr) return false;
        weighted = &comp;
    }
    if(weighted == nullptr || weighted->size() < 2) return false;

    // Complete with a common edge magnitude c, and diagonal c.
    const auto &comp = *weighted;
    const double c = std::abs(lap(comp[0], comp[1]));
    if(c <= eps) return false;
    for(std::size_t a = 0; a < comp.size(); ++a) {
        if(std::abs(lap(comp[a], comp[a]) - c) > eps) return false;
        for(std::size_t b = a + 1; b < comp.size(); ++b)
            if(std::abs(std::abs(lap(comp[a], comp[b])) - c) > eps) return false;
    }

    try {
        (void)density_operator(g, conv, tol);
    } catch(const Error &) {
        return false;
    }
    return true;
}

bool edges_same_parity(const WeightedGraph &g) {
    return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge &e) {
        return (g.trailing_label(e.u) & 1U) == (g.trailing_label(e.v) & 1U);
    });
}

bool edges_within_blocks(const WeightedGraph &g) {
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge &e) { return g.leading_label(e.u) == g.leading_label(e.v); });
}

bool uniform_complete(const WeightedGraph &g, LaplacianConvention conv, const Tolerance &tol) {
    const std::size_t n = g.vertex_count();
    if(n < 2 || g.edges().size() != n * (n - 1) / 2) return false;
    const Complex first = g.edges().front().w;
    const double b = first.real();
    const double eps = tol.threshold(std::abs(b));
    if(b <= eps) return false;
    for(const auto &e : g.edges())
        if(std::abs(e.w.imag()) > eps || std::abs(e.w.real() - b) > eps) return false;

    ComplexMatrix lap;
    try {
        lap = laplacian(g, conv);
    } catch(const ConventionError &) {
        return false;
    }
    const double degree = b * static_cast<double>(n - 1);
    const double deg_eps = tol.threshold(degree);
    for(Eigen::Index i = 0; i < lap.rows(); ++i)
        if(std::abs(lap(i, i) - degree) > deg_eps) return false;
    return true;
}

} // namespace gd
