#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace gd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = std::vector<double>;

/// Tensor factor of a bipartite space. A is the leading (most significant) factor.
enum class Side { A, B };

[[nodiscard]] constexpr Side other(Side s) noexcept { return s == Side::A ? Side::B : Side::A; }
[[nodiscard]] std::string_view to_string(Side s) noexcept;

/// Composite equality threshold: abs_eps + rel_eps * scale.
struct Tolerance {
    double abs_eps = 1e-9;
    double rel_eps = 1e-9;

    [[nodiscard]] double threshold(double scale) const noexcept { return abs_eps + rel_eps * scale; }
};

/// Largest entry modulus; 0 for an empty matrix.
[[nodiscard]] double maxnorm(const ComplexMatrix &a);

[[nodiscard]] ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

[[nodiscard]] bool is_hermitian(const ComplexMatrix &a, const Tolerance &tol = {});
[[nodiscard]] bool is_normal(const ComplexMatrix &a, const Tolerance &tol = {});

/// maxnorm(ab - ba).
[[nodiscard]] double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b);

/// Real spectrum of a Hermitian matrix, ascending. Throws ContractViolation on
/// non-Hermitian input (checked with the default tolerance).
[[nodiscard]] RealVector hermitian_eigenvalues(const ComplexMatrix &a);

[[nodiscard]] bool is_psd(const ComplexMatrix &a, const Tolerance &tol = {});

struct MinorReport {
    bool diag_dominance = false;   // |a_ii| >= sum_{j != i} |a_ij|; informational only
    bool all_minors_nonneg = false; // a_pp a_qq - |a_pq|^2 >= 0 for all p < q
    double worst_minor = 0.0;
};

/// Pairwise 2x2 principal-minor test plus the diagonal-dominance flag.
/// Diagonal dominance is not necessary for PSD (F1 is a counterexample), so it
/// is reported and never used as a gate.
[[nodiscard]] MinorReport psd_necessary_minors(const ComplexMatrix &a, const Tolerance &tol = {});

struct PsdSplitReport {
    bool satisfied = false;
    RealVector per_row_slack;      // a_pp - sum_{q != p} (|Re a_pq| + |Im a_pq|)
    bool sign_gauge_consistent = false;
    std::optional<std::vector<int>> gauge; // eps_p in {0,1} with (-1)^(eps_p+eps_q) = sign Re a_pq
};

/// Sufficient PSD test from splitting the quadratic form into
///   |Re a_pq| |x_p +- x_q|^2 + |Im a_pq| |x_p +- i x_q|^2 + (diagonal remainder) |x_p|^2
/// summed over pairs. satisfied implies PSD. The sign gauge is the parity
/// consistency m_qr = m_pq + m_pr of the real-part signs, found by 2-colouring.
[[nodiscard]] PsdSplitReport psd_sufficient_split(const ComplexMatrix &a, const Tolerance &tol = {});

struct SubsystemDims {
    std::size_t a = 1;
    std::size_t b = 1;
};

/// Reduced operator of a d_A*d_B square matrix. keep=A traces out B.
[[nodiscard]] ComplexMatrix partial_trace(const ComplexMatrix &rho, SubsystemDims dims, Side keep);

/// Exchange the tensor factors: returns rho' with rho'[(b,a),(b',a')] = rho[(a,b),(a',b')].
[[nodiscard]] ComplexMatrix swap_subsystems(const ComplexMatrix &rho, SubsystemDims dims);

/// Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
[[nodiscard]] double purity(const ComplexMatrix &rho);

[[nodiscard]] ComplexMatrix identity(std::size_t dim);

[[nodiscard]] constexpr bool is_power_of_two(std::size_t v) noexcept { return v != 0 && (v & (v - 1)) == 0; }

/// log2 of a power of two.
[[nodiscard]] int qubit_count(std::size_t dim);

} // namespace gd
