#pragma once

#include <cstdint>
#include <random>

#include "graphdiscord/density.hpp"

namespace gd {

/// Von Neumann entropy in bits. Eigenvalues below 1e-14 contribute 0; a
/// Hermitian input with an eigenvalue below -tol throws ContractViolation.
[[nodiscard]] double entropy(const ComplexMatrix &rho, const Tolerance &tol = {});

/// S(rho_A) + S(rho_B) - S(rho).
[[nodiscard]] double mutual_information(const DensityOperator &rho);

/// Rank-one projective measurement on one qubit along the Bloch direction (theta, phi).
struct MeasurementSpec {
    double theta = 0.0;
    double phi = 0.0;

    /// (I + s n.sigma) / 2 with s = +1 or -1.
    [[nodiscard]] ComplexMatrix projector(int sign) const;
};

struct GridSpec {
    int n_theta = 64;
    int n_phi = 128;
    int passes = 3; // local refinement passes around the best grid point
};

struct DiscordEstimate {
    double value = 0.0;     // max(raw, 0)
    double raw_value = 0.0; // may dip below 0 by roundoff
    MeasurementSpec argmin;
    GridSpec grid;
};

/// Two-qubit discord with the measurement on `measured`:
///   D = S(rho_measured) - S(rho) + min_{theta,phi} sum_k p_k S(rho_k).
/// Deterministic for a fixed grid. Throws DimensionError unless rho is 4x4.
[[nodiscard]] DiscordEstimate discord_estimate(const DensityOperator &rho, Side measured = Side::A,
                                               const GridSpec &grid = {});

/// Portable seeded generator: mt19937_64 with explicit uniform and normal transforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller, no cached second variate).
    double normal();
    /// (N + iN) / sqrt 2.
    Complex complex_normal();

private:
    std::mt19937_64 engine_;
};

/// G G^dagger / Tr with complex Gaussian G (Ginibre-induced).
[[nodiscard]] ComplexMatrix random_density_matrix(Rng &rng, std::size_t dim);

/// Full-rank random state on 2^n dimensions with the default partition.
[[nodiscard]] DensityOperator random_state(std::uint64_t seed, std::size_t dim);

/// Two-qubit classical-quantum state sum_{i<k} p_i |i><i| (x) rho_i with the
/// register on `classical` in its computational basis (k in {1, 2}).
[[nodiscard]] DensityOperator random_cq_state(std::uint64_t seed, int k, Side classical = Side::A);

} // namespace gd
