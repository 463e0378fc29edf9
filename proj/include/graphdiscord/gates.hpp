#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphdiscord/density.hpp"
#include "graphdiscord/graph.hpp"

namespace gd {

enum class GateKind { I, X, Y, Z, H, CX, CZ, SWAP, explicit_matrix };

/// A gate placed on target qubits. Qubit 0 is the leftmost (most significant)
/// tensor factor. For CX the first target is the control.
struct GateSpec {
    GateKind kind = GateKind::I;
    std::vector<int> targets;
    std::optional<ComplexMatrix> matrix; // only for explicit_matrix, 2^k x 2^k for k targets
};

/// Partial gate leaving the leading `untouched` qubits alone; on the remaining
/// qubits each matrix entry gets its own I/sigma_x word.
struct PartialGateSpec {
    int untouched = 0;
};

using GateOp = std::variant<GateSpec, PartialGateSpec>;

/// 2x2 or 4x4 matrix of a named gate.
[[nodiscard]] ComplexMatrix gate_kernel(GateKind kind);

/// Full 2^n unitary of `spec` on an n-qubit register. Throws ContractViolation
/// for bad targets or a non-unitary explicit matrix.
[[nodiscard]] ComplexMatrix gate_matrix(const GateSpec &spec, int n_qubits, const Tolerance &tol = {});

/// U rho U^dagger.
[[nodiscard]] DensityOperator apply_gate(const DensityOperator &rho, const GateSpec &spec);

/// Bits of (i XOR j) on the trailing `touched` qubits: where the per-entry rule picks sigma_x.
[[nodiscard]] constexpr std::size_t partial_mask(std::size_t i, std::size_t j, int touched) noexcept {
    return (i ^ j) & ((std::size_t{1} << touched) - 1);
}

/// Entry (i,j) moves to (i^m, j^m), m = partial_mask(i, j, n - untouched).
/// Equivalent to transposing every block of the grid over the leading `untouched` qubits.
[[nodiscard]] ComplexMatrix apply_partial_gate(const ComplexMatrix &rho, int untouched);
[[nodiscard]] DensityOperator apply_partial_gate(const DensityOperator &rho, int untouched);

/// Edge (u,v,w) maps to (u^m, v^m, w). Loops are re-balanced so every Laplacian
/// diagonal entry under `conv` is unchanged, which keeps
///   density_operator(image) == apply_partial_gate(density_operator(g)).
[[nodiscard]] WeightedGraph apply_partial_gate_graph(const WeightedGraph &g, int untouched, LaplacianConvention conv);
[[nodiscard]] WeightedGraph apply_partial_gate_graph(const WeightedGraph &g, int untouched);

/// maxnorm(conj(PartialU rho) - rho).
[[nodiscard]] double conj_partial_residual(const ComplexMatrix &rho, int untouched);

/// conj(PartialU rho) == rho, i.e. every block of the grid over the leading
/// `untouched` qubits is Hermitian.
[[nodiscard]] bool conj_partial_fixed(const DensityOperator &rho, int untouched, const Tolerance &tol = {});
[[nodiscard]] bool conj_partial_fixed(const ComplexMatrix &rho, int untouched, const Tolerance &tol = {});

/// Comma-separated terms: NAME(t1[,t2]) with NAME in I X Y Z H CX CZ SWAP, or partial(q=K).
[[nodiscard]] std::vector<GateOp> parse_gate_word(std::string_view word);

/// Applies the terms left to right.
[[nodiscard]] DensityOperator apply_gate_word(const DensityOperator &rho, const std::vector<GateOp> &ops);

} // namespace gd
