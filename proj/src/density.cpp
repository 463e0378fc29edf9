#include "graphdiscord/density.hpp"

#include <cmath>
#include <string>

#include "graphdiscord/errors.hpp"

namespace gd {

Partition default_partition(int n_qubits) {
    if(n_qubits < 1) throw DimensionError("a state needs at least one qubit");
    if(n_qubits == 1) return {0, 1};
    return {1, n_qubits - 1};
}

std::string_view to_string(LaplacianConvention c) noexcept {
    return c == LaplacianConvention::magnitude ? "magnitude" : "signed";
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Partition partition, const Tolerance &tol)
    : matrix_(std::move(matrix)), partition_(partition) {
    validate(tol);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Partition partition, LaplacianConvention convention,
                                 const Tolerance &tol)
    : matrix_(std::move(matrix)), partition_(partition), convention_(convention) {
    validate(tol);
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Partition partition,
                                 std::optional<LaplacianConvention> conv, double min_eig)
    : matrix_(std::move(matrix)), partition_(partition), convention_(conv), min_eigenvalue_(min_eig) {}

void DensityOperator::validate(const Tolerance &tol) {
    if(partition_.p < 0 || partition_.q < 0 || partition_.qubits() < 1)
        throw DimensionError("invalid partition");
    const auto d = static_cast<Eigen::Index>(partition_.dim());
    if(matrix_.rows() != d || matrix_.cols() != d)
        throw DimensionError("density operator must be " + std::to_string(d) + "x" + std::to_string(d) + ", got " +
                             std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()));
    if(!matrix_.allFinite()) throw ContractViolation("density operator has non-finite entries");
    if(!is_hermitian(matrix_, tol)) throw ContractViolation("density operator is not Hermitian");
    const double tr = matrix_.trace().real();
    if(std::abs(tr - 1.0) > tol.threshold(1.0))
        throw NormalizationError("density operator trace is " + std::to_string(tr) + ", expected 1");
    const auto ev = hermitian_eigenvalues(matrix_);
    min_eigenvalue_ = ev.front();
    if(min_eigenvalue_ < -tol.threshold(maxnorm(matrix_)))
        throw ValidityError("density operator is not positive semi-definite (min eigenvalue " +
                                std::to_string(min_eigenvalue_) + ")",
                            min_eigenvalue_);
}

DensityOperator DensityOperator::swapped() const {
    return DensityOperator(swap_subsystems(matrix_, partition_.dims()), partition_.swapped(), convention_,
                           min_eigenvalue_);
}

} // namespace gd
