#include "lifres/oracle.hpp"
#include "lifres/state.hpp"
#include "lifres/wl_matrix.hpp"

#include <doctest.h>

#include <cmath>

using namespace lifres;
using doctest::Approx;

namespace
{

// Analytic derivative of (c0 c0^T + c1 c1^T)/2 with tau0 = 1/eps, tau1 = eps.
Eigen::MatrixXd delta_drho(double eps, int n_max)
{
    const double tau[2] = {1.0 / eps, eps};
    const double dtau[2] = {-1.0 / (eps * eps), 1.0};
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int k = 0; k < 2; ++k) {
        const Eigen::VectorXd c = wl_pure_coefficients(n_max, tau[k], 1.0);
        const Eigen::VectorXd dc = wl_pure_coefficients_dtau(n_max, tau[k], 1.0) * dtau[k];
        out += 0.5 * (dc * c.transpose() + c * dc.transpose());
    }
    return out;
}

}  // namespace

TEST_CASE("identical lifetimes with a delta spectrum give a pure state")
{
    const auto rho = assemble_rho({1.0, 1.0}, SpectralModel::delta(), NumericsConfig{});
    const auto eig = eigensystem(rho, 1e-12);
    CHECK(eig.values(0) == Approx(1.0).epsilon(1e-14));
    CHECK(eig.values.tail(eig.dim() - 1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(rho.matrix(0, 0) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("purity of the state at eps = 1")
{
    const auto rho = assemble_rho({1.0, 1.0}, SpectralModel::gaussian(0.25), NumericsConfig{});
    CHECK(purity(rho) == Approx(0.905).epsilon(0.005 / 0.905));
    CHECK(purity(rho) == Approx(purity_limit(0.25)).epsilon(1e-8));
}

TEST_CASE("purity_limit values")
{
    CHECK(purity_limit(0.0) == Approx(1.0).epsilon(1e-12));
    CHECK(purity_limit(0.25) == Approx(0.905).epsilon(0.005 / 0.905));
    CHECK(purity_limit(0.1) >= 0.98);
    double prev = 1.0;
    for (const double s : {0.01, 0.05, 0.3, 1.0, 3.0, 10.0}) {
        const double p = purity_limit(s);
        CHECK(p < prev);
        CHECK(p > 0.0);
        prev = p;
    }
}

TEST_CASE("operator invariants")
{
    const NumericsConfig numerics;
    for (const double sigma : {0.01, 0.25, 1.0})
        for (const double eps : {1.01, 1.3, 2.0}) {
            const auto rho = assemble_rho({1.0, eps}, SpectralModel::gaussian(sigma), numerics);
            CHECK(hermiticity_defect(rho.matrix) < 1e-12);
            CHECK(rho.matrix.trace() == Approx(1.0).epsilon(1e-12));
            CHECK(rho.provenance.trace_deficit >= -1e-12);
            CHECK(rho.provenance.trace_deficit < kMaxTraceDeficit);
            CHECK(rho.provenance.n_max == numerics.n_max);

            const auto eig = eigensystem(rho, numerics.eig_clamp);
            CHECK(eig.values.minCoeff() >= 0.0);
            CHECK(eig.values.sum() == Approx(rho.matrix.trace()).epsilon(1e-10));
            const Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
            CHECK((gram - Eigen::MatrixXd::Identity(eig.dim(), eig.dim())).cwiseAbs().maxCoeff() < 1e-10);
            CHECK(eig.values.array().square().sum() == Approx(purity(rho)).epsilon(1e-10));
        }
}

TEST_CASE("state matches the time-grid projection")
{
    // High modes run past the time window, so compare the low block.
    const LifetimeModel model{1.0, 1.2};
    const auto spectral = SpectralModel::gaussian(0.1);
    const auto rho = assemble_rho(model, spectral, NumericsConfig{});
    const TimeGrid grid;
    const Eigen::MatrixXd projected = wl_projection(rho_time_grid<double>(model, spectral, grid), grid, 30);
    CHECK((rho.matrix.topLeftCorner(31, 31) - projected).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("too small a basis for a broad line is reported")
{
    NumericsConfig numerics;
    numerics.n_max = 40;
    CHECK_THROWS_AS(assemble_rho({1.0, 1.5}, SpectralModel::gaussian(3.0), numerics), TruncationError);
}

TEST_CASE("eigensystem basics")
{
    const auto eig = eigensystem(Eigen::MatrixXd(0.5 * Eigen::MatrixXd::Identity(2, 2)), 1e-12);
    CHECK(eig.values(0) == Approx(0.5));
    CHECK(eig.values(1) == Approx(0.5));

    const auto rho = assemble_rho({1.0, 1.5}, SpectralModel::delta(), NumericsConfig{});
    const auto e = eigensystem(rho, 1e-12);
    CHECK((e.values.array() > 1e-10).count() == 2);
    CHECK(e.values.head(2).sum() == Approx(1.0).epsilon(1e-12));

    Eigen::Matrix2d negative;
    negative << 0.5, 0.0, 0.0, -1e-6;
    CHECK_THROWS_AS(eigensystem(negative, 1e-12), NegativityError);
    Eigen::Matrix2d tiny;
    tiny << 1.0, 0.0, 0.0, -1e-13;
    const auto t = eigensystem(tiny, 1e-12);
    CHECK(t.values(1) == 0.0);
    CHECK(t.clamped_count == 1);
    Eigen::Matrix2d skew;
    skew << 1.0, 0.1, -0.1, 1.0;
    CHECK_THROWS_AS(eigensystem(skew, 1e-12), std::invalid_argument);
}

TEST_CASE("derivative of the delta-case state matches the analytic form")
{
    const NumericsConfig numerics;
    for (const double eps : {1.05, 1.5, 0.7}) {
        const auto d = d_rho_d_eps({1.0, eps}, SpectralModel::delta(), numerics);
        CHECK((d.matrix - delta_drho(eps, numerics.n_max)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("derivative symmetry under eps -> 1/eps")
{
    NumericsConfig numerics;
    numerics.n_max = 60;
    const auto spectral = SpectralModel::gaussian(0.2);
    const auto at1 = d_rho_d_eps({1.0, 1.0}, spectral, numerics);
    CHECK(at1.matrix.cwiseAbs().maxCoeff() < 1e-8);

    // rho(eps) = rho(1/eps), hence d rho(1/eps) / d eps' = -eps^2 d rho(eps) / d eps.
    const double eps = 1.3;
    const auto a = assemble_rho({1.0, eps}, spectral, numerics);
    const auto b = assemble_rho({1.0, 1.0 / eps}, spectral, numerics);
    CHECK((a.matrix - b.matrix).cwiseAbs().maxCoeff() < 1e-12);
    const auto da = d_rho_d_eps({1.0, eps}, spectral, numerics);
    const auto db = d_rho_d_eps({1.0, 1.0 / eps}, spectral, numerics);
    CHECK((db.matrix + eps * eps * da.matrix).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("derivative conserves trace")
{
    const auto d = d_rho_d_eps({1.0, 1.05}, SpectralModel::gaussian(0.1), NumericsConfig{});
    CHECK(std::abs(d.matrix.trace()) < 1e-8);
    CHECK(hermiticity_defect(d.matrix) < 1e-12);
}

TEST_CASE("state_point pairs rho with its derivative")
{
    const auto s = state_point({1.0, 1.2}, SpectralModel::gaussian(0.1), NumericsConfig{});
    const auto rho = assemble_rho({1.0, 1.2}, SpectralModel::gaussian(0.1), NumericsConfig{});
    const auto d = d_rho_d_eps({1.0, 1.2}, SpectralModel::gaussian(0.1), NumericsConfig{});
    CHECK((s.rho.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((s.drho.matrix - d.matrix).cwiseAbs().maxCoeff() < 1e-12);
}
