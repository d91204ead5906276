#include "lifres/oracle.hpp"

#include "lifres/fisher.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <type_traits>

namespace lifres
{

namespace
{

constexpr double kMaxTailMass = 1e-6;

template <typename Scalar>
Matrix<Scalar> kernel(double epsilon, double sigma_tau_bar, double omega0_tau_bar, const QuadratureRule<double>& nodes)
{
    const Eigen::Index n = nodes.size();
    const Eigen::ArrayXd t = nodes.nodes.array();
    const Eigen::ArrayXd root_w = nodes.weights.array().sqrt();
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
    for (const double tau : {1.0 / epsilon, epsilon}) {
        const Eigen::VectorXd e = ((-t / (2.0 * tau)).exp() * root_w).matrix();
        k.noalias() += (0.5 / tau) * e * e.transpose();
    }
    if (sigma_tau_bar > 0.0) {
        const double c = 0.5 * sigma_tau_bar * sigma_tau_bar;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                const double dt = t(i) - t(j);
                k(i, j) *= std::exp(-c * dt * dt);
            }
    }
    if constexpr (std::is_same_v<Scalar, double>) {
        return k;
    } else {
        Matrix<Scalar> out = k.cast<Scalar>();
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                out(i, j) *= std::polar(1.0, -omega0_tau_bar * (t(i) - t(j)));
        return out;
    }
}

template <typename Scalar>
double qfi_time_grid_impl(const LifetimeModel& model, const SpectralModel& spectral, const TimeGrid& grid,
                          double fd_step, double eig_clamp)
{
    const HermitianOperator<Scalar> rho = rho_time_grid<Scalar>(model, spectral, grid);
    const auto nodes = time_nodes(grid);
    const double sigma = spectral.sigma_tau_bar(model.tau_bar);
    const double omega0 = spectral.omega0 * model.tau_bar;
    const double eps = model.epsilon;
    const double h = fd_step * eps;
    const Matrix<Scalar> drho =
        (kernel<Scalar>(eps + h, sigma, omega0, nodes) - kernel<Scalar>(eps - h, sigma, omega0, nodes)) / (2.0 * h);
    const auto eig = eigensystem(rho.matrix, eig_clamp);
    return qfi(eig, drho);
}

}  // namespace

void TimeGrid::validate() const
{
    if (!(t_max > 0.0))
        throw std::invalid_argument("time grid extent must be positive");
    if (n_points < 1 || panel_nodes < 1 || n_points % panel_nodes != 0)
        throw std::invalid_argument("time grid n_points must be a positive multiple of panel_nodes");
}

QuadratureRule<double> time_nodes(const TimeGrid& grid)
{
    grid.validate();
    const int panels = grid.n_points / grid.panel_nodes;
    const Eigen::VectorXd breaks = Eigen::VectorXd::LinSpaced(panels + 1, 0.0, grid.t_max);
    return composite_gauss_legendre(breaks, grid.panel_nodes);
}

double time_tail_mass(double epsilon, double t_max)
{
    return 0.5 * (std::exp(-t_max * epsilon) + std::exp(-t_max / epsilon));
}

template <typename Scalar>
HermitianOperator<Scalar> rho_time_grid(const LifetimeModel& model, const SpectralModel& spectral,
                                        const TimeGrid& grid)
{
    model.validate();
    spectral.validate();
    grid.validate();
    if constexpr (std::is_same_v<Scalar, double>) {
        if (spectral.omega0 != 0.0)
            throw std::invalid_argument("rho_time_grid: a carrier frequency needs a complex scalar");
    }
    const double tail = time_tail_mass(model.epsilon, grid.t_max);
    if (tail > kMaxTailMass) {
        std::ostringstream msg;
        msg << "time grid extent " << grid.t_max << " leaves tail mass " << tail << " at epsilon = " << model.epsilon;
        throw ExtentError(msg.str());
    }
    const auto nodes = time_nodes(grid);
    HermitianOperator<Scalar> out;
    out.matrix = kernel<Scalar>(model.epsilon, spectral.sigma_tau_bar(model.tau_bar), spectral.omega0 * model.tau_bar,
                                nodes);
    out.provenance.basis = "time-grid";
    out.provenance.epsilon = model.epsilon;
    out.provenance.tau_bar = model.tau_bar;
    out.provenance.spectral_kind = spectral.is_delta() ? SpectralKind::Delta : SpectralKind::Gaussian;
    out.provenance.sigma_tau_bar = spectral.sigma_tau_bar(model.tau_bar);
    out.provenance.trace_deficit = 1.0 - std::real(out.matrix.trace());
    return out;
}

template HermitianOperator<double> rho_time_grid<double>(const LifetimeModel&, const SpectralModel&, const TimeGrid&);
template HermitianOperator<std::complex<double>> rho_time_grid<std::complex<double>>(const LifetimeModel&,
                                                                                     const SpectralModel&,
                                                                                     const TimeGrid&);

double qfi_time_grid(const LifetimeModel& model, const SpectralModel& spectral, const TimeGrid& grid, double fd_step,
                     double eig_clamp)
{
    if (spectral.omega0 == 0.0)
        return qfi_time_grid_impl<double>(model, spectral, grid, fd_step, eig_clamp);
    return qfi_time_grid_impl<std::complex<double>>(model, spectral, grid, fd_step, eig_clamp);
}

Eigen::MatrixXd wl_mode_functions(const Eigen::VectorXd& t, int n_max)
{
    Eigen::MatrixXd phi(t.size(), n_max + 1);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
        const double x = t(i);
        double prev = 1.0;
        double cur = 1.0 - x;
        phi(i, 0) = prev;
        if (n_max >= 1)
            phi(i, 1) = cur;
        for (int k = 1; k < n_max; ++k) {
            const double next = ((2 * k + 1 - x) * cur - k * prev) / (k + 1);
            prev = cur;
            cur = next;
            phi(i, k + 1) = cur;
        }
        phi.row(i) *= std::exp(-0.5 * x);
    }
    return phi;
}

Eigen::MatrixXd wl_projection(const HermitianOperator<double>& rho, const TimeGrid& grid, int n_max)
{
    const auto nodes = time_nodes(grid);
    if (rho.dim() != nodes.size())
        throw std::invalid_argument("wl_projection: operator does not match the time grid");
    const Eigen::MatrixXd phi = nodes.weights.cwiseSqrt().asDiagonal() * wl_mode_functions(nodes.nodes, n_max);
    return phi.transpose() * rho.matrix * phi;
}

}  // namespace lifres
