#include <catch_amalgamated.hpp>

#include "graphdiscord/errors.hpp"
#include "graphdiscord/linalg.hpp"
#include "graphdiscord/matrix_io.hpp"
#include "graphdiscord/oracle.hpp"
#include "test_support.hpp"

using namespace gd;
using namespace gdt;
using Catch::Matchers::WithinAbs;

namespace {

ComplexMatrix sx() { return mat({{0, 1}, {1, 0}}); }
ComplexMatrix sz() { return mat({{1, 0}, {0, -1}}); }
ComplexMatrix K() { return mat({{1, I}, {-I, 1}}); }

ComplexMatrix random_hermitian(Rng &rng, Eigen::Index d) {
    ComplexMatrix g(d, d);
    for(Eigen::Index i = 0; i < d; ++i)
        for(Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
    return (g + g.adjoint()) / 2.0;
}

} // namespace

TEST_CASE("kron of identities is the identity") { CHECK(maxdiff(kron(identity(2), identity(2)), identity(4)) == 0.0); }

TEST_CASE("kron reproduces the first term of the F4 decomposition") {
    const ComplexMatrix term = kron(mat({{1, 1}, {1, 1}}, 0.5), mat({{1, I}, {-I, 1}}, 0.5));
    const ComplexMatrix expected = mat({{1, I, 1, I}, {-I, 1, -I, 1}, {1, I, 1, I}, {-I, 1, -I, 1}}, 0.25);
    CHECK(maxdiff(term, expected) == 0.0);
}

TEST_CASE("kron with a column vector shifts the basis vector") {
    ComplexMatrix v(2, 1);
    v << 1, 0;
    ComplexMatrix expected(4, 1);
    expected << 0, 0, 1, 0;
    CHECK(maxdiff(kron(sx(), v), expected) == 0.0);
}

TEST_CASE("kron entry layout, exhaustive at small dims") {
    Rng rng(11);
    for(Eigen::Index ra = 1; ra <= 4; ++ra)
        for(Eigen::Index rb = 1; rb <= 4; ++rb) {
            ComplexMatrix a(ra, ra + 1), b(rb, rb);
            for(Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.complex_normal();
            for(Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = rng.complex_normal();
            const ComplexMatrix k = kron(a, b);
            REQUIRE(k.rows() == a.rows() * b.rows());
            REQUIRE(k.cols() == a.cols() * b.cols());
            for(Eigen::Index i = 0; i < a.rows(); ++i)
                for(Eigen::Index j = 0; j < a.cols(); ++j)
                    for(Eigen::Index k2 = 0; k2 < b.rows(); ++k2)
                        for(Eigen::Index l = 0; l < b.cols(); ++l)
                            REQUIRE(k(i * b.rows() + k2, j * b.cols() + l) == a(i, j) * b(k2, l));
        }
}

TEST_CASE("is_hermitian") {
    CHECK(is_hermitian(F1()));
    CHECK_FALSE(is_hermitian(mat({{0, 1}, {0, 0}})));
    CHECK(is_hermitian(mat({{1, -I}, {I, 1}}, 1.0 / 8.0)));
    CHECK_THROWS_AS(is_hermitian(ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("is_normal") {
    CHECK(is_normal(K() * 0.25));
    CHECK_FALSE(is_normal(mat({{0, 1}, {0, 0}})));
    Rng rng(3);
    for(int t = 0; t < 20; ++t) CHECK(is_normal(random_hermitian(rng, 1 + t % 5)));
    CHECK_THROWS_AS(is_normal(ComplexMatrix::Zero(3, 2)), DimensionError);
}

TEST_CASE("commutator_norm") {
    const ComplexMatrix f4 = F4();
    CHECK(commutator_norm(f4.block(0, 0, 2, 2), f4.block(0, 2, 2, 2)) == 0.0);
    const ComplexMatrix f5 = F5();
    CHECK(commutator_norm(f5.block(0, 0, 2, 2), f5.block(0, 2, 2, 2)) < 1e-15);
    CHECK_THAT(commutator_norm(sx(), sz()), WithinAbs(2.0, 1e-15));
    CHECK_THROWS_AS((void)commutator_norm(identity(2), identity(3)), DimensionError);

    Rng rng(5);
    for(int t = 0; t < 20; ++t) {
        const ComplexMatrix a = random_hermitian(rng, 3), b = random_hermitian(rng, 3);
        CHECK(commutator_norm(a, b) == commutator_norm(b, a));
        CHECK(commutator_norm(a, a) == 0.0);
    }
}

TEST_CASE("hermitian_eigenvalues on fixtures") {
    const auto check = [](const ComplexMatrix &m, std::vector<double> expected) {
        const auto ev = hermitian_eigenvalues(m);
        REQUIRE(ev.size() == expected.size());
        for(std::size_t k = 0; k < ev.size(); ++k) CHECK_THAT(ev[k], WithinAbs(expected[k], 1e-12));
    };
    check(F3(), {0, 0, 0, 1});
    check(identity(4) / 4.0, {0.25, 0.25, 0.25, 0.25});
    check(F7(), {0, 0, 0, 1});
    CHECK_THROWS_AS(hermitian_eigenvalues(mat({{0, 1}, {0, 0}})), ContractViolation);
}

TEST_CASE("F3 is a rank-one projector") { CHECK(maxdiff(F3() * F3(), F3()) < 1e-16); }

TEST_CASE("hermitian_eigenvalues match characteristic-polynomial roots") {
    Rng rng(17);
    for(int t = 0; t < 200; ++t) {
        const ComplexMatrix a2 = random_hermitian(rng, 2);
        const auto ev2 = hermitian_eigenvalues(a2);
        const auto r2 = charpoly_roots2(a2);
        for(int k = 0; k < 2; ++k) REQUIRE_THAT(ev2[k], WithinAbs(r2[k], 1e-10 * (1 + maxnorm(a2))));

        const ComplexMatrix a3 = random_hermitian(rng, 3);
        const auto ev3 = hermitian_eigenvalues(a3);
        const auto r3 = charpoly_roots3(a3);
        for(int k = 0; k < 3; ++k) REQUIRE_THAT(ev3[k], WithinAbs(r3[k], 1e-9 * (1 + maxnorm(a3))));

        double sum = 0;
        for(double x : ev3) sum += x;
        REQUIRE_THAT(sum, WithinAbs(a3.trace().real(), 1e-9));
    }
}

TEST_CASE("is_psd") {
    CHECK(is_psd(F1()));
    CHECK_FALSE(is_psd(mat({{1, 2}, {2, 1}})));
    for(const auto &m : {F1(), F2(), F3(), F4(), F5(), F6(), F7(), F8(), F9()}) CHECK(is_psd(m));
}

TEST_CASE("psd_necessary_minors") {
    const auto f4 = psd_necessary_minors(F4());
    CHECK(f4.all_minors_nonneg);
    const auto f1 = psd_necessary_minors(F1());
    CHECK(f1.all_minors_nonneg);
    CHECK_FALSE(f1.diag_dominance);
    const auto id = psd_necessary_minors(identity(5));
    CHECK(id.all_minors_nonneg);
    CHECK(id.diag_dominance);
    CHECK_THROWS_AS(psd_necessary_minors(mat({{0, 1}, {0, 0}})), ContractViolation);
}

TEST_CASE("psd_sufficient_split") {
    const auto blk = psd_sufficient_split(mat({{3, Complex(2, 1)}, {Complex(2, -1), 3}}, 1.0 / 12.0));
    CHECK(blk.satisfied);

    const ComplexMatrix m = mat({{1, Complex(0.6, 0.6)}, {Complex(0.6, -0.6), 1}});
    CHECK_FALSE(psd_sufficient_split(m).satisfied);
    CHECK(is_psd(m));

    const ComplexMatrix j4 = ComplexMatrix::Ones(4, 4);
    const auto rep = psd_sufficient_split(j4);
    CHECK_FALSE(rep.satisfied);
    CHECK(is_psd(j4));
    CHECK(rep.sign_gauge_consistent);
    REQUIRE(rep.gauge);
    for(int e : *rep.gauge) CHECK(e == (*rep.gauge)[0]);
    REQUIRE(rep.per_row_slack.size() == 4);
    CHECK_THAT(rep.per_row_slack[0], WithinAbs(-2.0, 1e-15));
}

TEST_CASE("sign gauge detects frustrated triangles") {
    // Three negative real parts on a triangle cannot be 2-coloured.
    const ComplexMatrix m = mat({{3, -1, -1}, {-1, 3, -1}, {-1, -1, 3}});
    const auto rep = psd_sufficient_split(m);
    CHECK(rep.satisfied);
    CHECK_FALSE(rep.sign_gauge_consistent);
    CHECK_FALSE(rep.gauge);
}

TEST_CASE("property: minors hold on random PSD matrices") {
    Rng rng(23);
    for(int t = 0; t < 1000; ++t) {
        const auto d = static_cast<std::size_t>(2 + t % 7);
        const ComplexMatrix rho = random_density_matrix(rng, d);
        REQUIRE(psd_necessary_minors(rho).all_minors_nonneg);
    }
}

TEST_CASE("property: the sufficient split implies PSD") {
    Rng rng(29);
    int satisfied = 0;
    for(int t = 0; t < 1000; ++t) {
        const auto d = static_cast<Eigen::Index>(2 + t % 7);
        ComplexMatrix a = random_hermitian(rng, d) * 0.3;
        for(Eigen::Index i = 0; i < d; ++i) a(i, i) = std::abs(rng.normal()) * static_cast<double>(d);
        const auto rep = psd_sufficient_split(a);
        if(rep.satisfied) {
            ++satisfied;
            REQUIRE(hermitian_eigenvalues(a).front() >= -1e-9);
        }
    }
    CHECK(satisfied > 50);
}

TEST_CASE("partial_trace") {
    CHECK(maxdiff(partial_trace(F3(), {2, 2}, Side::A), identity(2) / 2.0) < 1e-16);
    const ComplexMatrix zero = mat({{1, 0}, {0, 0}});
    const ComplexMatrix sigma = mat({{0.6, Complex(0.1, 0.2)}, {Complex(0.1, -0.2), 0.4}});
    CHECK(maxdiff(partial_trace(kron(zero, sigma), {2, 2}, Side::A), zero) < 1e-16);
    for(double t : {-0.9, 0.3, 0.7}) CHECK(maxdiff(partial_trace(BD(t, 0, 0), {2, 2}, Side::A), identity(2) / 2.0) < 1e-16);
    CHECK_THROWS_AS(partial_trace(identity(4), {2, 3}, Side::A), DimensionError);
}

TEST_CASE("property: partial trace agrees with index sums and factorizes products") {
    Rng rng(31);
    for(int t = 0; t < 100; ++t) {
        const std::size_t da = std::size_t{1} << (1 + t % 3), db = std::size_t{1} << (1 + (t / 3) % 3);
        const ComplexMatrix rho = random_density_matrix(rng, da * db);
        REQUIRE(maxdiff(partial_trace(rho, {da, db}, Side::A), brute_partial_trace(rho, da, db, true)) < 1e-14);
        REQUIRE(maxdiff(partial_trace(rho, {da, db}, Side::B), brute_partial_trace(rho, da, db, false)) < 1e-14);

        ComplexMatrix s(2, 2), u(2, 2);
        for(Eigen::Index i = 0; i < 4; ++i) {
            s.data()[i] = rng.complex_normal();
            u.data()[i] = rng.complex_normal();
        }
        REQUIRE(maxdiff(partial_trace(kron(s, u), {2, 2}, Side::A), s * u.trace()) < 1e-13);
    }
}

TEST_CASE("swap_subsystems exchanges kron factors") {
    Rng rng(37);
    const ComplexMatrix a = random_density_matrix(rng, 2), b = random_density_matrix(rng, 4);
    CHECK(maxdiff(swap_subsystems(kron(a, b), {2, 4}), kron(b, a)) < 1e-16);
}

TEST_CASE("purity") {
    CHECK_THAT(purity(F1()), WithinAbs(1.0, 1e-15));
    CHECK_THAT(purity(F2()), WithinAbs(1.0, 1e-15));
    CHECK_THAT(purity(identity(4) / 4.0), WithinAbs(0.25, 1e-15));
}

TEST_CASE("matrix documents round-trip") {
    const std::string text = serialize_matrix(F5(), Partition{1, 1});
    const auto doc = parse_matrix(text);
    CHECK(doc.matrix == F5());
    REQUIRE(doc.partition);
    CHECK(*doc.partition == Partition{1, 1});
    CHECK(serialize_matrix(doc.matrix, doc.partition) == text);

    CHECK_THROWS_AS(parse_matrix(R"({"dim": 2, "entries": [[1,0],[0,0],[0,0]]})"), ParseError);
    CHECK_THROWS_AS(parse_matrix(R"({"dim": 2})"), ParseError);
    CHECK_THROWS_AS(parse_matrix("not json"), ParseError);
}
