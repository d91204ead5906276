#include "lifres/fisher.hpp"
#include "lifres/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace lifres;
using doctest::Approx;

TEST_CASE("time grid nodes")
{
    const TimeGrid grid;
    const auto nodes = time_nodes(grid);
    CHECK(nodes.size() == grid.n_points);
    CHECK(nodes.weights.sum() == Approx(grid.t_max).epsilon(1e-13));
    TimeGrid bad;
    bad.n_points = 605;
    CHECK_THROWS(time_nodes(bad));
}

TEST_CASE("trace is within 1e-6 of one")
{
    for (const double eps : {0.5, 1.0, 1.5, 2.0})
        for (const double sigma : {0.0, 0.25, 2.0}) {
            const auto rho = rho_time_grid<double>({1.0, eps}, SpectralModel::gaussian(sigma), TimeGrid{});
            CHECK(std::abs(rho.matrix.trace() - 1.0) < 1e-6);
            CHECK(rho.provenance.basis == "time-grid");
        }
}

TEST_CASE("diagonal is the arrival-time density")
{
    const TimeGrid grid;
    const auto nodes = time_nodes(grid);
    const double eps = 1.4, tau0 = 1 / eps, tau1 = eps;
    for (const double sigma : {0.0, 0.5, 5.0}) {
        const auto rho = rho_time_grid<double>({1.0, eps}, SpectralModel::gaussian(sigma), grid);
        for (Eigen::Index i = 0; i < nodes.size(); i += 37) {
            const double t = nodes.nodes(i);
            const double p = 0.5 * (std::exp(-t / tau0) / tau0 + std::exp(-t / tau1) / tau1);
            CHECK(rho.matrix(i, i) / nodes.weights(i) == Approx(p).epsilon(1e-13));
        }
    }
}

TEST_CASE("one lifetime and no dephasing is a pure state")
{
    const auto rho = rho_time_grid<double>({1.0, 1.0}, SpectralModel::delta(), TimeGrid{});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho.matrix);
    const Eigen::VectorXd v = solver.eigenvalues().reverse();
    CHECK(v(0) == Approx(1.0).epsilon(1e-8));
    CHECK(v.tail(v.size() - 1).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("strong dephasing leaves only populations")
{
    const TimeGrid grid;
    const auto nodes = time_nodes(grid);
    const auto rho = rho_time_grid<double>({1.0, 1.3}, SpectralModel::gaussian(100.0), grid);
    double diag = 0.0, off = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
        diag = std::max(diag, rho.matrix(i, i) / nodes.weights(i));
        for (Eigen::Index j = 0; j < nodes.size(); ++j)
            if (std::abs(nodes.nodes(i) - nodes.nodes(j)) > 0.1)
                off = std::max(off, std::abs(rho.matrix(i, j)) / std::sqrt(nodes.weights(i) * nodes.weights(j)));
    }
    CHECK(off < 1e-3 * diag);
}

TEST_CASE("short windows are rejected")
{
    TimeGrid grid;
    grid.t_max = 10.0;
    CHECK_THROWS_AS(rho_time_grid<double>({1.0, 2.0}, SpectralModel::gaussian(0.1), grid), ExtentError);
    CHECK(time_tail_mass(2.0, 10.0) == Approx(0.5 * (std::exp(-20.0) + std::exp(-5.0))));
}

TEST_CASE("carrier frequency needs the complex path and changes nothing")
{
    const LifetimeModel model{1.0, 1.2};
    CHECK_THROWS(rho_time_grid<double>(model, SpectralModel::gaussian(0.1, 3.0), TimeGrid{}));
    const auto c = rho_time_grid<std::complex<double>>(model, SpectralModel::gaussian(0.1, 3.0), TimeGrid{});
    CHECK(hermiticity_defect(c.matrix) < 1e-15);
    CHECK(c.matrix.imag().cwiseAbs().maxCoeff() > 1e-3);
    const double with = qfi_time_grid(model, SpectralModel::gaussian(0.1, 3.0), TimeGrid{});
    const double without = qfi_time_grid(model, SpectralModel::gaussian(0.1), TimeGrid{});
    CHECK(with == Approx(without).epsilon(1e-9));
}

TEST_CASE("time-grid QFI agrees with the WL pipeline")
{
    const NumericsConfig numerics;
    const TimeGrid grid;
    CHECK(qfi_time_grid({1.0, 1.1}, SpectralModel::gaussian(0.1), grid) ==
          Approx(qfi({1.0, 1.1}, SpectralModel::gaussian(0.1), numerics)).epsilon(5e-3));
    CHECK(qfi_time_grid({1.0, 1.3}, SpectralModel::gaussian(1e-6), grid) == Approx(qfi_max_delta(1.3)).epsilon(5e-3));
    CHECK(qfi_time_grid({1.0, 1.05}, SpectralModel::gaussian(1.0), grid) == Approx(cfi_tcspc(1.05)).epsilon(0.1));
}

TEST_CASE("broad lines need no basis truncation on the time grid")
{
    // Reference for the sigma = 3 limit, where the WL basis needs ~500 modes.
    for (const double eps : {1.05, 1.5})
        CHECK(qfi_time_grid({1.0, eps}, SpectralModel::gaussian(3.0), TimeGrid{}) ==
              Approx(cfi_tcspc(eps)).epsilon(0.01));
}

TEST_CASE("mode functions are orthonormal on the grid")
{
    // Mode n reaches out to t ~ 4n, so the window is wider than the default.
    TimeGrid wide;
    wide.t_max = 200.0;
    wide.n_points = 2000;
    const auto nodes = time_nodes(wide);
    const Eigen::MatrixXd phi = nodes.weights.cwiseSqrt().asDiagonal() * wl_mode_functions(nodes.nodes, 20);
    const Eigen::MatrixXd gram = phi.transpose() * phi;
    CHECK((gram - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS(wl_projection(HermitianOperator<double>{Eigen::MatrixXd::Identity(3, 3), {}}, TimeGrid{}, 2));
}
