#include "graphdiscord/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "graphdiscord/errors.hpp"

namespace gd {

namespace {

void require_square(const ComplexMatrix &a, const char *op) {
    if(a.rows() != a.cols())
        throw DimensionError(std::string(op) + ": expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
}

double hermitian_residual(const ComplexMatrix &a) {
    double worst = 0.0;
    for(Eigen::Index i = 0; i < a.rows(); ++i)
        for(Eigen::Index j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    return worst;
}

void require_hermitian(const ComplexMatrix &a, const char *op) {
    require_square(a, op);
    if(!is_hermitian(a)) throw ContractViolation(std::string(op) + ": input is not Hermitian");
}

} // namespace

std::string_view to_string(Side s) noexcept { return s == Side::A ? "A" : "B"; }

double maxnorm(const ComplexMatrix &a) {
    if(a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for(Eigen::Index i = 0; i < a.rows(); ++i)
        for(Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool is_hermitian(const ComplexMatrix &a, const Tolerance &tol) {
    require_square(a, "is_hermitian");
    return hermitian_residual(a) <= tol.threshold(maxnorm(a));
}

bool is_normal(const ComplexMatrix &a, const Tolerance &tol) {
    require_square(a, "is_normal");
    const ComplexMatrix adj = a.adjoint();
    const double scale = static_cast<double>(a.rows()) * maxnorm(a) * maxnorm(a);
    return maxnorm(a * adj - adj * a) <= tol.threshold(scale);
}

double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_square(a, "commutator_norm");
    require_square(b, "commutator_norm");
    if(a.rows() != b.rows()) throw DimensionError("commutator_norm: dimension mismatch");
    return maxnorm(a * b - b * a);
}

RealVector hermitian_eigenvalues(const ComplexMatrix &a) {
    require_hermitian(a, "hermitian_eigenvalues");
    // Only the lower triangle is read; symmetrize so tiny asymmetries cannot bias the result.
    const ComplexMatrix h = (a + a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if(solver.info() != Eigen::Success) throw ContractViolation("hermitian_eigenvalues: solver did not converge");
    const auto &ev = solver.eigenvalues();
    RealVector out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_psd(const ComplexMatrix &a, const Tolerance &tol) {
    const auto ev = hermitian_eigenvalues(a);
    if(ev.empty()) return true;
    return ev.front() >= -tol.threshold(maxnorm(a));
}

MinorReport psd_necessary_minors(const ComplexMatrix &a, const Tolerance &tol) {
    require_hermitian(a, "psd_necessary_minors");
    const auto n = a.rows();
    const double scale = maxnorm(a);
    const double row_eps = tol.threshold(scale);
    const double minor_eps = tol.threshold(scale * scale);

    MinorReport rep;
    rep.diag_dominance = true;
    for(Eigen::Index i = 0; i < n; ++i) {
        double off = 0.0;
        for(Eigen::Index j = 0; j < n; ++j)
            if(j != i) off += std::abs(a(i, j));
        if(std::abs(a(i, i)) < off - row_eps) rep.diag_dominance = false;
    }

    rep.all_minors_nonneg = true;
    rep.worst_minor = n >= 2 ? std::numeric_limits<double>::infinity() : 0.0;
    for(Eigen::Index p = 0; p < n; ++p)
        for(Eigen::Index q = p + 1; q < n; ++q) {
            const double minor = a(p, p).real() * a(q, q).real() - std::norm(a(p, q));
            rep.worst_minor = std::min(rep.worst_minor, minor);
            if(minor < -minor_eps) rep.all_minors_nonneg = false;
        }
    return rep;
}

PsdSplitReport psd_sufficient_split(const ComplexMatrix &a, const Tolerance &tol) {
    require_hermitian(a, "psd_sufficient_split");
    const auto n = a.rows();
    const double eps = tol.threshold(maxnorm(a));

    PsdSplitReport rep;
    rep.satisfied = true;
    rep.per_row_slack.resize(static_cast<std::size_t>(n));
    for(Eigen::Index p = 0; p < n; ++p) {
        double budget = 0.0;
        for(Eigen::Index q = 0; q < n; ++q)
            if(q != p) budget += std::abs(a(p, q).real()) + std::abs(a(p, q).imag());
        const double slack = a(p, p).real() - budget;
        rep.per_row_slack[static_cast<std::size_t>(p)] = slack;
        if(slack < -eps) rep.satisfied = false;
    }

    // Signed graph on the real parts: a positive part asks for equal colours,
    // a negative part for different colours.
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    bool consistent = true;
    for(Eigen::Index start = 0; start < n && consistent; ++start) {
        if(colour[static_cast<std::size_t>(start)] != -1) continue;
        colour[static_cast<std::size_t>(start)] = 0;
        std::queue<Eigen::Index> todo;
        todo.push(start);
        while(!todo.empty() && consistent) {
            const auto p = todo.front();
            todo.pop();
            for(Eigen::Index q = 0; q < n; ++q) {
                if(q == p) continue;
                const double re = a(p, q).real();
                if(std::abs(re) <= eps) continue;
                const int want = colour[static_cast<std::size_t>(p)] ^ (re < 0 ? 1 : 0);
                auto &cq = colour[static_cast<std::size_t>(q)];
                if(cq == -1) {
                    cq = want;
                    todo.push(q);
                } else if(cq != want) {
                    consistent = false;
                    break;
                }
            }
        }
    }
    rep.sign_gauge_consistent = consistent;
    if(consistent) rep.gauge = std::move(colour);
    return rep;
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, SubsystemDims dims, Side keep) {
    require_square(rho, "partial_trace");
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    if(da * db != rho.rows())
        throw DimensionError("partial_trace: dims " + std::to_string(da) + "x" + std::to_string(db) +
                             " do not match matrix size " + std::to_string(rho.rows()));
    if(keep == Side::A) {
        ComplexMatrix out = ComplexMatrix::Zero(da, da);
        for(Eigen::Index i = 0; i < da; ++i)
            for(Eigen::Index j = 0; j < da; ++j)
                for(Eigen::Index k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for(Eigen::Index i = 0; i < db; ++i)
        for(Eigen::Index j = 0; j < db; ++j)
            for(Eigen::Index k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
    return out;
}

ComplexMatrix swap_subsystems(const ComplexMatrix &rho, SubsystemDims dims) {
    require_square(rho, "swap_subsystems");
    const auto da = static_cast<Eigen::Index>(dims.a);
    const auto db = static_cast<Eigen::Index>(dims.b);
    if(da * db != rho.rows()) throw DimensionError("swap_subsystems: dims do not match matrix size");
    ComplexMatrix out(rho.rows(), rho.cols());
    for(Eigen::Index a = 0; a < da; ++a)
        for(Eigen::Index b = 0; b < db; ++b)
            for(Eigen::Index a2 = 0; a2 < da; ++a2)
                for(Eigen::Index b2 = 0; b2 < db; ++b2) out(b * da + a, b2 * da + a2) = rho(a * db + b, a2 * db + b2);
    return out;
}

double purity(const ComplexMatrix &rho) { return rho.cwiseAbs2().sum(); }

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

int qubit_count(std::size_t dim) {
    if(!is_power_of_two(dim)) throw DimensionError("dimension " + std::to_string(dim) + " is not a power of two");
    int n = 0;
    while((std::size_t{1} << n) < dim) ++n;
    return n;
}

} // namespace gd
