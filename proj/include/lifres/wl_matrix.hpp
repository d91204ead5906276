#ifndef LIFRES_WL_MATRIX_HPP
#define LIFRES_WL_MATRIX_HPP

#include "lifres/model.hpp"
#include "lifres/quadrature.hpp"

#include <Eigen/Core>

namespace lifres
{

// Matrix elements of the dephased single-lifetime state in the weighted
// Laguerre (WL) basis phi_n(t) = H(t) e^{-t/2 tau_bar} L_n(t/tau_bar) / sqrt(tau_bar),
// taken at the carrier frequency omega0. The carrier phase cancels, so only
// the centered density P0 enters.
//
// The amplitude of a lifetime-tau photon detuned by omega in mode n is
//   a_n(omega) = (Gamma-/2 + i omega)^n / [sqrt(tau tau_bar) (Gamma+/2 + i omega)^(n+1)],
// and <phi_n|rho_tau|phi_m> = Integral P0(omega) a_n(omega) conj(a_m(omega)).

struct WlElementRequest
{
    int n = 0;
    int m = 0;
    double tau = 1.0;
    double tau_bar = 1.0;
    SpectralModel model;
    NumericsConfig numerics;
};

// Lifetime-limited element [4 tau tau_bar / (tau + tau_bar)^2] r^(n+m),
// r = (tau_bar - tau) / (tau_bar + tau).
double wl_element_delta(int n, int m, double tau, double tau_bar);

// c_n = [2 sqrt(tau tau_bar) / (tau + tau_bar)] r^n, so that
// c_n c_m = wl_element_delta(n, m). The sign convention is that of the
// amplitude a_n(0) above: all WL modes share a real positive phase at t = 0.
double wl_pure_coefficient(int n, double tau, double tau_bar);

// c_0 .. c_{n_max} by repeated multiplication.
Eigen::VectorXd wl_pure_coefficients(int n_max, double tau, double tau_bar);

// d c_n / d tau, analytically.
Eigen::VectorXd wl_pure_coefficients_dtau(int n_max, double tau, double tau_bar);

// Composite Gauss-Legendre rule on the positive frequency half-line
// [0, W], W = max(8 sigma, quad_window / tau_bar). Panel widths follow the
// local oscillation scale of the n_max-th power of the rational factor,
// which is set by `lorentz_halfwidth` = Gamma+/2 (use the smallest one that
// the rule will be applied to), and are capped at sigma/2 inside the Gaussian
// core. `refine` splits every panel into that many equal sub-panels.
QuadratureRule<double> frequency_rule(const SpectralModel& spectral, const NumericsConfig& numerics,
                                      double tau_bar, double lorentz_halfwidth, int refine = 1);

// Amplitudes a_0 .. a_{n_max} at each node (rows: n, columns: nodes).
Eigen::MatrixXcd wl_amplitudes(int n_max, double tau, double tau_bar, const Eigen::VectorXd& omega);

// Full (n_max+1)^2 table for a Gaussian density using a prepared
// half-line rule. The negative half-line is folded in through
// a_n(-omega) = conj(a_n(omega)), which makes the result exactly real.
Eigen::MatrixXd wl_matrix_gaussian(double tau, double tau_bar, const SpectralModel& spectral, int n_max,
                                   const QuadratureRule<double>& rule);

// Full table for either spectral kind. Gaussian tables are computed with
// frequency_rule(...) for this tau alone.
Eigen::MatrixXd wl_matrix(double tau, double tau_bar, const SpectralModel& spectral, const NumericsConfig& numerics);

// Largest change of the diagonal and of the first and last rows when every
// quadrature panel is halved.
double wl_rule_refinement_change(double tau, double tau_bar, const SpectralModel& spectral, int n_max,
                                 const QuadratureRule<double>& rule, const QuadratureRule<double>& refined);

// Single element by full-line complex quadrature. Throws ConvergenceError if
// halving the panels moves the value by more than 1e-8 or if the imaginary
// residue exceeds 1e-12.
double wl_element_gaussian(const WlElementRequest& req);

}  // namespace lifres

#endif  // LIFRES_WL_MATRIX_HPP
