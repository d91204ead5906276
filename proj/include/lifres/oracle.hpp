#ifndef LIFRES_ORACLE_HPP
#define LIFRES_ORACLE_HPP

#include "lifres/model.hpp"
#include "lifres/quadrature.hpp"
#include "lifres/state.hpp"

#include <Eigen/Core>

namespace lifres
{

// Brute-force reference: the mixture written directly in the temporal mode
// basis,
//   <t|rho_tau|t'> = H(t)H(t')/tau e^{-(t+t')/2tau} e^{-i omega0 (t-t')} e^{-(t-t')^2 sigma^2/2},
// discretized by Nystrom sampling on composite Gauss-Legendre nodes. Entries
// carry sqrt(w_i w_j) so the discrete operator stays Hermitian with trace
// equal to the quadrature of the arrival-time density.
//
// Slow (dense eigendecomposition of n_points^2) and only meant for checking.

struct TimeGrid
{
    double t_max = 40.0;   // units of tau_bar
    int n_points = 600;
    int panel_nodes = 10;  // Gauss-Legendre nodes per panel; must divide n_points

    double spacing() const { return t_max / n_points; }
    void validate() const;
};

QuadratureRule<double> time_nodes(const TimeGrid& grid);

// Mass of the arrival-time density beyond t_max.
double time_tail_mass(double epsilon, double t_max);

// Scalar = double needs omega0 == 0; use std::complex<double> otherwise.
// Throws ExtentError if the tail beyond t_max exceeds 1e-6.
template <typename Scalar>
HermitianOperator<Scalar> rho_time_grid(const LifetimeModel& model, const SpectralModel& spectral,
                                        const TimeGrid& grid);

// QFI from the time-grid state with a central-difference derivative.
double qfi_time_grid(const LifetimeModel& model, const SpectralModel& spectral, const TimeGrid& grid,
                     double fd_step = 1e-4, double eig_clamp = 1e-12);

// <phi_n| rho |phi_m> for n, m <= n_max, from a real time-grid operator.
Eigen::MatrixXd wl_projection(const HermitianOperator<double>& rho, const TimeGrid& grid, int n_max);

// Weighted-Laguerre mode functions e^{-t/2} L_n(t) (tau_bar = 1), rows: t.
Eigen::MatrixXd wl_mode_functions(const Eigen::VectorXd& t, int n_max);

}  // namespace lifres

#endif  // LIFRES_ORACLE_HPP
