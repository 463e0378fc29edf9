#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphdiscord/density.hpp"

namespace gd {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u = 0; // u < v
    Vertex v = 0;
    Complex w;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// Weighted graph with self-loops on the 2^n basis states of an n-qubit register.
/// Edges are kept sorted by (u,v) with u < v; the weight of the reverse
/// direction is the conjugate.
class WeightedGraph {
public:
    explicit WeightedGraph(Partition partition);

    /// Adds edge {u,v}. (v,u,w) is stored as (u,v,conj w). Throws on u == v,
    /// out-of-range vertices and duplicates.
    void add_edge(Vertex u, Vertex v, Complex w);
    /// Throws on out-of-range vertex, non-finite weight and duplicates.
    void set_loop(Vertex v, double w);

    [[nodiscard]] Partition partition() const noexcept { return partition_; }
    [[nodiscard]] int qubits() const noexcept { return partition_.qubits(); }
    [[nodiscard]] std::size_t vertex_count() const noexcept { return partition_.dim(); }
    [[nodiscard]] const std::vector<Edge> &edges() const noexcept { return edges_; }
    [[nodiscard]] const std::map<Vertex, double> &loops() const noexcept { return loops_; }
    [[nodiscard]] double loop(Vertex v) const;

    /// Convention recorded in a graph document; nullopt means "auto".
    [[nodiscard]] std::optional<LaplacianConvention> preferred_convention() const noexcept { return preferred_; }
    void set_preferred_convention(std::optional<LaplacianConvention> c) noexcept { preferred_ = c; }

    /// Leading label i and trailing label j (0-based) of a vertex.
    [[nodiscard]] Vertex leading_label(Vertex v) const noexcept { return v >> partition_.q; }
    [[nodiscard]] Vertex trailing_label(Vertex v) const noexcept { return v & ((Vertex{1} << partition_.q) - 1); }

    friend bool operator==(const WeightedGraph &, const WeightedGraph &) = default;

private:
    void check_vertex(Vertex v) const;

    Partition partition_;
    std::vector<Edge> edges_;
    std::map<Vertex, double> loops_;
    std::optional<LaplacianConvention> preferred_;
};

/// magnitude if any weight has a nonzero imaginary part, signed otherwise.
[[nodiscard]] LaplacianConvention default_convention(const WeightedGraph &g);

/// The graph's own convention when it names one, default_convention otherwise.
[[nodiscard]] LaplacianConvention effective_convention(const WeightedGraph &g);

/// Hermitian Laplacian. Throws ConventionError for signed with complex weights.
[[nodiscard]] ComplexMatrix laplacian(const WeightedGraph &g, LaplacianConvention conv);

/// rho = L / Tr L, validated. Throws NormalizationError when Tr L <= 0 and
/// ValidityError (with the minimum eigenvalue) when L is not PSD.
[[nodiscard]] DensityOperator density_operator(const WeightedGraph &g, LaplacianConvention conv,
                                               const Tolerance &tol = {});

/// Components under nonzero-edge adjacency, each sorted, ordered by smallest vertex.
[[nodiscard]] std::vector<std::vector<Vertex>> connected_components(const WeightedGraph &g);

/// Purity from entry magnitudes: some index set S carries |rho_ij| = rho_ii = c > 0
/// for all i,j in S and every other row vanishes.
[[nodiscard]] bool pure_by_entries(const DensityOperator &rho, const Tolerance &tol = {});

/// Purity from structure: exactly one component carries weight, it is complete,
/// its edge magnitudes share one value c > 0 and its Laplacian diagonal equals c.
/// The Laplacian must also be a valid (PSD) state.
[[nodiscard]] bool pure_by_component(const WeightedGraph &g, LaplacianConvention conv, const Tolerance &tol = {});

/// Every edge joins vertices whose trailing labels have equal parity.
[[nodiscard]] bool edges_same_parity(const WeightedGraph &g);

/// Every edge stays inside one leading label (block-diagonal state).
[[nodiscard]] bool edges_within_blocks(const WeightedGraph &g);

/// All C(2^n,2) edges with one real weight b > 0 and every Laplacian diagonal entry equal to b (2^n - 1).
[[nodiscard]] bool uniform_complete(const WeightedGraph &g, LaplacianConvention conv, const Tolerance &tol = {});

/// Graph document (JSON):
///   {"qubits": n, "partition": [p,q], "convention": "auto"|"magnitude"|"signed",
///    "edges": [{"u":..,"v":..,"w":[re,im]}, ...], "loops": [{"v":..,"w":re}, ...]}
/// Throws ParseError naming the offending field.
[[nodiscard]] WeightedGraph parse_graph(std::string_view text);

/// Canonical form: edges sorted by (u,v), loops by vertex, numbers with 17 significant digits.
[[nodiscard]] std::string serialize_graph(const WeightedGraph &g);

} // namespace gd
