#pragma once

#include <string_view>

#include "graphdiscord/linalg.hpp"

namespace gd {

/// Split of n qubits into a leading block of p qubits (label i) and a trailing
/// block of q qubits (label j). Vertex (i,j) has linear index i * 2^q + j.
struct Partition {
    int p = 1;
    int q = 1;

    [[nodiscard]] int qubits() const noexcept { return p + q; }
    [[nodiscard]] std::size_t dim_a() const noexcept { return std::size_t{1} << p; }
    [[nodiscard]] std::size_t dim_b() const noexcept { return std::size_t{1} << q; }
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << (p + q); }
    [[nodiscard]] SubsystemDims dims() const noexcept { return {dim_a(), dim_b()}; }
    [[nodiscard]] Partition swapped() const noexcept { return {q, p}; }

    friend bool operator==(const Partition &, const Partition &) = default;
};

/// Default split for an n-qubit space: one leading qubit, the rest trailing.
[[nodiscard]] Partition default_partition(int n_qubits);

enum class LaplacianConvention {
    magnitude, // L_ii = loop_i + sum |a_ij|,  L_ij = a_ij
    signed_,   // L_ii = loop_i + sum a_ij,    L_ij = -a_ij  (real weights only)
};

[[nodiscard]] std::string_view to_string(LaplacianConvention c) noexcept;

/// Unit-trace Hermitian PSD matrix with its qubit split. Construction validates.
class DensityOperator {
public:
    /// Throws DimensionError, ContractViolation (non-Hermitian), NormalizationError
    /// (trace != 1) or ValidityError (negative eigenvalue).
    DensityOperator(ComplexMatrix matrix, Partition partition, const Tolerance &tol = {});
    DensityOperator(ComplexMatrix matrix, Partition partition, LaplacianConvention convention,
                    const Tolerance &tol = {});

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] Partition partition() const noexcept { return partition_; }
    [[nodiscard]] int qubits() const noexcept { return partition_.qubits(); }
    [[nodiscard]] std::size_t dim() const noexcept { return partition_.dim(); }
    [[nodiscard]] std::optional<LaplacianConvention> convention() const noexcept { return convention_; }
    [[nodiscard]] double min_eigenvalue() const noexcept { return min_eigenvalue_; }

    /// Same state with the tensor factors exchanged: partition (p,q) becomes (q,p).
    [[nodiscard]] DensityOperator swapped() const;

private:
    DensityOperator(ComplexMatrix matrix, Partition partition, std::optional<LaplacianConvention> conv,
                    double min_eig);
    void validate(const Tolerance &tol);

    ComplexMatrix matrix_;
    Partition partition_;
    std::optional<LaplacianConvention> convention_;
    double min_eigenvalue_ = 0.0;
};

} // namespace gd
