#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphdiscord/density.hpp"
#include "graphdiscord/graph.hpp"

namespace gd {

/// Which tensor factor indexes the block grid.
enum class GridFactor { leading, trailing };

/// rho as a d_M x d_M grid of d_U x d_U blocks. With `leading` the grid is
/// indexed by the first factor and block (x,y) is the contiguous sub-matrix
/// at rows x*d_U.., cols y*d_U..; `trailing` is the same after exchanging factors.
struct BlockView {
    std::size_t outer_dim = 0;
    std::size_t inner_dim = 0;
    GridFactor ordering = GridFactor::leading;
    std::vector<ComplexMatrix> blocks; // row-major, outer_dim * outer_dim entries

    [[nodiscard]] const ComplexMatrix &block(std::size_t x, std::size_t y) const { return blocks[x * outer_dim + y]; }
    /// Inverse of block_partition.
    [[nodiscard]] ComplexMatrix reassemble() const;
};

[[nodiscard]] BlockView block_partition(const ComplexMatrix &rho, SubsystemDims dims, GridFactor grid);
[[nodiscard]] BlockView block_partition(const DensityOperator &rho, GridFactor grid);
/// A view over explicit blocks (row-major grid); every block must be square and of one size.
[[nodiscard]] BlockView make_block_view(std::vector<ComplexMatrix> blocks, std::size_t outer_dim);

/// The block criterion certifies classicality of the factor the blocks act on.
/// oriented() returns the state arranged so that the measured factor is the
/// trailing one and the grid runs over the other factor (the layout every
/// operator-level certificate below expects).
[[nodiscard]] DensityOperator oriented(const DensityOperator &rho, Side measured);

struct CheckResult {
    bool passed = false;
    double residual = 0.0;

    explicit operator bool() const noexcept { return passed; }
};

/// Every block normal and every pair of blocks commuting. Thresholds scale as
/// tol.threshold(|A| |B|) with maxnorms. This is the master certificate.
[[nodiscard]] CheckResult blocks_normal_commuting(const BlockView &view, const Tolerance &tol = {});

/// Two-qubit test: conj(PartialU rho) = rho with U = I (x) U_2, and
/// (rho11 - rho22) rho14 = rho12 (rho13 - rho24) (1-based entries).
[[nodiscard]] CheckResult check_T31(const DensityOperator &rho, const Tolerance &tol = {});

/// Two-qubit test: conj((I (x) sx) rho (I (x) sx)) = rho, (sx (x) I) rho (sx (x) I) = rho,
/// and every block of the form [[a, ib], [-ib, a]].
[[nodiscard]] CheckResult check_C311(const DensityOperator &rho, const Tolerance &tol = {});

/// A = B - C + iD - iE with B, C, D, E PSD.
struct BncDecomposition {
    ComplexMatrix b, c, d, e;

    [[nodiscard]] ComplexMatrix reconstruct() const;
};

/// Spectral split of the Hermitian and anti-Hermitian parts into positive and negative parts.
[[nodiscard]] BncDecomposition bnc_decompose(const ComplexMatrix &block);

/// All 4 d_M^2 spectral parts of all blocks commute pairwise.
[[nodiscard]] CheckResult check_T32(const BlockView &view, const Tolerance &tol = {});

/// Every block Hermitian (the partial-conjugation fixed point) and every product
/// A^{rs} A^{lm} Hermitian.
[[nodiscard]] CheckResult check_T33(const BlockView &view, const Tolerance &tol = {});

/// 2x2 blocks over the first n-1 qubits, each of the form i^m a [[1, s], [conj(s), 1]]
/// with a >= 0 and s in {1, -1, i, -i} (covering i^m [[a, ia], [-ia, a]], [[a, a], [a, a]]
/// and their sign variants). All nonzero blocks must share s up to sign, so they commute.
[[nodiscard]] CheckResult check_T34(const DensityOperator &rho, const Tolerance &tol = {});

/// Graph certificates: every edge keeps trailing-label parity / stays in one leading label.
[[nodiscard]] bool check_T35(const WeightedGraph &g);
[[nodiscard]] bool check_T36(const WeightedGraph &g);

/// Outer 2x2 grid over the first qubit, sub-blocks of `sub_qubits` trailing qubits:
/// conj(Partial U^1 rho) = rho (sub-blocks Hermitian), conj(Partial U^2 rho) = rho
/// (outer blocks Hermitian), and sum_k A^{xy}_{ik} A^{rs}_{kj} = sum_k A^{rs}_{ik} A^{xy}_{kj}.
[[nodiscard]] CheckResult check_T37(const DensityOperator &rho, int sub_qubits, const Tolerance &tol = {});

/// (A11 - A22) A14 = A12 (A13 - A24) on a 4x4 grid, together with the two conjugation
/// fixed-point conditions of check_T37 (every block Hermitian, every 2x2 outer block
/// Hermitian). Throws DimensionError for other grids.
[[nodiscard]] CheckResult check_C371(const BlockView &view, const Tolerance &tol = {});

struct ProductTerm {
    double weight = 0.0;
    ComplexMatrix first;  // state on the leading factor
    ComplexMatrix second; // state on the trailing factor
};

/// rho = sum_i p_i first_i (x) second_i and the factors on the measured side
/// commute pairwise. Throws ContractViolation for malformed decompositions.
[[nodiscard]] CheckResult check_T38(const DensityOperator &rho, const std::vector<ProductTerm> &terms,
                                   Side measured = Side::A, const Tolerance &tol = {});

/// |det Tr_B rho| <= tol. Only certifies when the leading factor is one qubit;
/// otherwise the determinant is reported with passed = false.
[[nodiscard]] CheckResult check_T310(const DensityOperator &rho, const Tolerance &tol = {});

/// uniform_complete(g), confirmed by the block criterion on the resulting state.
[[nodiscard]] CheckResult check_T39(const WeightedGraph &g, Side measured = Side::B, const Tolerance &tol = {});

enum class Verdict { certified_zero, not_certified };

struct CertificateResult {
    std::string name;
    bool passed = false;
    double residual = 0.0;
};

struct CertificateReport {
    Verdict verdict = Verdict::not_certified;
    std::vector<CertificateResult> certificates;
    std::optional<LaplacianConvention> convention;
    Side measured = Side::B;
    Tolerance tolerance;
    std::vector<std::string> notes;

    [[nodiscard]] const CertificateResult *find(std::string_view name) const;
    [[nodiscard]] bool fired(std::string_view name) const;
};

struct VerdictOptions {
    /// For two-qubit states, run the measurement oracle on both sides and record it in the notes.
    bool oracle_audit = false;
};

/// Runs every applicable certificate. Operator certificates use oriented(rho, measured);
/// graph certificates (T35, T36, T39) are added when a graph is given.
[[nodiscard]] CertificateReport zero_discord_verdict(const DensityOperator &rho, Side measured = Side::B,
                                                     const Tolerance &tol = {}, const VerdictOptions &opts = {});
[[nodiscard]] CertificateReport zero_discord_verdict(const WeightedGraph &g, Side measured = Side::B,
                                                     const Tolerance &tol = {}, const VerdictOptions &opts = {});

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

/// Report document with stable field order: verdict, certificates, convention,
/// measured_side, tolerances, notes.
[[nodiscard]] std::string serialize_report(const CertificateReport &report);

} // namespace gd
