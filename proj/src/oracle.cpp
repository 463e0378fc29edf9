#include "graphdiscord/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "graphdiscord/errors.hpp"

namespace gd {

namespace {

constexpr double kEigenFloor = 1e-14;
constexpr double kProbFloor = 1e-12;

double h(double lambda) { return lambda > kEigenFloor ? -lambda * std::log2(lambda) : 0.0; }

using Mat2 = std::array<Complex, 4>; // row-major 2x2

// Entropy of m / p for a Hermitian 2x2 m with trace p.
double entropy2(const Mat2 &m, double p) {
    const double a = m[0].real() / p;
    const double d = m[3].real() / p;
    const double b = std::abs(m[1]) / p;
    const double half = 0.5 * (a + d);
    const double r = std::hypot(0.5 * (a - d), b);
    return h(half + r) + h(half - r);
}

// Blocks R_xy (x, y over the measured qubit) of a 4x4 matrix whose leading
// factor is the measured one; each block acts on the other qubit.
std::array<Mat2, 4> measured_blocks(const ComplexMatrix &m) {
    std::array<Mat2, 4> r{};
    for(int x = 0; x < 2; ++x)
        for(int y = 0; y < 2; ++y)
            for(int i = 0; i < 2; ++i)
                for(int j = 0; j < 2; ++j) r[x * 2 + y][i * 2 + j] = m(2 * x + i, 2 * y + j);
    return r;
}

// sum_k p_k S(rho_k) for the measurement (theta, phi) on the leading qubit.
double conditional_entropy(const std::array<Mat2, 4> &r, double theta, double phi) {
    const double c = std::cos(theta);
    const Complex off = std::sin(theta) * std::polar(1.0, -phi); // (n.sigma)_01
    double total = 0.0;
    for(int s : {1, -1}) {
        // Projector P = (I + s n.sigma) / 2.
        const Complex p00 = 0.5 * (1.0 + s * c);
        const Complex p11 = 0.5 * (1.0 - s * c);
        const Complex p01 = 0.5 * s * off;
        const Complex p10 = std::conj(p01);
        // Tr_measured[(P (x) I) rho] = sum_{a,b} P_ab R_ba.
        Mat2 m{};
        for(int e = 0; e < 4; ++e) m[e] = p00 * r[0][e] + p01 * r[2][e] + p10 * r[1][e] + p11 * r[3][e];
        const double prob = m[0].real() + m[3].real();
        if(prob < kProbFloor) continue;
        total += prob * entropy2(m, prob);
    }
    return total;
}

struct Point {
    double theta, phi, value;
};

// Map (theta, phi) back onto theta in [0, pi], phi in [0, 2 pi).
void normalize_angles(double &theta, double &phi) {
    constexpr double pi = std::numbers::pi;
    if(theta < 0.0) {
        theta = -theta;
        phi += pi;
    } else if(theta > pi) {
        theta = 2.0 * pi - theta;
        phi += pi;
    }
    theta = std::clamp(theta, 0.0, pi);
    phi = std::fmod(phi, 2.0 * pi);
    if(phi < 0.0) phi += 2.0 * pi;
}

} // namespace

double entropy(const ComplexMatrix &rho, const Tolerance &tol) {
    double s = 0.0;
    for(double lambda : hermitian_eigenvalues(rho)) {
        if(lambda < -tol.abs_eps) throw ContractViolation("entropy of an operator with eigenvalue " + std::to_string(lambda));
        s += h(lambda);
    }
    return s;
}

double mutual_information(const DensityOperator &rho) {
    const auto dims = rho.partition().dims();
    return entropy(partial_trace(rho.matrix(), dims, Side::A)) + entropy(partial_trace(rho.matrix(), dims, Side::B)) -
           entropy(rho.matrix());
}

ComplexMatrix MeasurementSpec::projector(int sign) const {
    ComplexMatrix p(2, 2);
    const double c = std::cos(theta);
    const Complex off = std::sin(theta) * std::polar(1.0, -phi);
    p << 0.5 * (1.0 + sign * c), 0.5 * sign * off, 0.5 * sign * std::conj(off), 0.5 * (1.0 - sign * c);
    return p;
}

DiscordEstimate discord_estimate(const DensityOperator &rho, Side measured, const GridSpec &grid) {
    if(rho.dim() != 4 || rho.partition() != Partition{1, 1})
        throw DimensionError("discord_estimate needs a two-qubit state with partition (1,1)");
    if(grid.n_theta < 2 || grid.n_phi < 1 || grid.passes < 0)
        throw ContractViolation("discord grid needs n_theta >= 2, n_phi >= 1, passes >= 0");

    const ComplexMatrix m = measured == Side::A ? rho.matrix() : swap_subsystems(rho.matrix(), {2, 2});
    const auto blocks = measured_blocks(m);
    const auto objective = [&](double t, double p) { return conditional_entropy(blocks, t, p); };

    constexpr double pi = std::numbers::pi;
    const double d_theta = pi / (grid.n_theta - 1);
    const double d_phi = 2.0 * pi / grid.n_phi;

    Point best{0.0, 0.0, objective(0.0, 0.0)};
    for(int i = 0; i < grid.n_theta; ++i)
        for(int j = 0; j < grid.n_phi; ++j) {
            const double t = d_theta * i, p = d_phi * j;
            const double v = objective(t, p);
            if(v < best.value) best = {t, p, v};
        }

    constexpr int radius = 8;
    double half_theta = d_theta, half_phi = d_phi;
    for(int pass = 0; pass < grid.passes; ++pass) {
        const Point centre = best;
        for(int a = -radius; a <= radius; ++a)
            for(int b = -radius; b <= radius; ++b) {
                double t = centre.theta + half_theta * a / radius;
                double p = centre.phi + half_phi * b / radius;
                normalize_angles(t, p);
                const double v = objective(t, p);
                if(v < best.value) best = {t, p, v};
            }
        half_theta /= 4.0;
        half_phi /= 4.0;
    }

    const double s_measured = entropy(partial_trace(rho.matrix(), {2, 2}, measured));
    DiscordEstimate out;
    out.raw_value = s_measured - entropy(rho.matrix()) + best.value;
    out.value = std::max(out.raw_value, 0.0);
    out.argmin = {best.theta, best.phi};
    out.grid = grid;
    return out;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex{re, im} / std::sqrt(2.0);
}

ComplexMatrix random_density_matrix(Rng &rng, std::size_t dim) {
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix g(d, d);
    for(Eigen::Index i = 0; i < d; ++i)
        for(Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

DensityOperator random_state(std::uint64_t seed, std::size_t dim) {
    if(!is_power_of_two(dim) || dim < 2) throw DimensionError("random_state needs dimension 2^n with n >= 1");
    Rng rng(seed);
    return DensityOperator(random_density_matrix(rng, dim), default_partition(qubit_count(dim)));
}

DensityOperator random_cq_state(std::uint64_t seed, int k, Side classical) {
    if(k < 1 || k > 2) throw ContractViolation("random_cq_state supports k = 1 or 2 branches");
    Rng rng(seed);
    std::vector<double> p(static_cast<std::size_t>(k));
    for(auto &x : p) x = 1.0 - rng.uniform();
    double total = 0.0;
    for(double x : p) total += x;

    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    for(int i = 0; i < k; ++i) {
        ComplexMatrix reg = ComplexMatrix::Zero(2, 2);
        reg(i, i) = p[static_cast<std::size_t>(i)] / total;
        const ComplexMatrix branch = random_density_matrix(rng, 2);
        rho += classical == Side::A ? kron(reg, branch) : kron(branch, reg);
    }
    return DensityOperator(rho, Partition{1, 1});
}

} // namespace gd
