#include "lifres/wl_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace lifres
{

namespace
{

// Panel width, in units of the local oscillation length, of the frequency rule.
constexpr double kPanelScale = 8.0;
// Gaussian core half-width in units of sigma.
constexpr double kGaussianCore = 8.0;

void check_lifetimes(double tau, double tau_bar)
{
    if (!(tau > 0.0) || !(tau_bar > 0.0))
        throw std::invalid_argument("lifetimes must be positive");
}

double ratio(double tau, double tau_bar) { return (tau_bar - tau) / (tau_bar + tau); }

// Integer power by repeated multiplication; the base always has modulus <= 1.
double ipow(double base, int exponent)
{
    double out = 1.0;
    for (int k = 0; k < exponent; ++k)
        out *= base;
    return out;
}

// Element table entries (rows of `rows`, all columns) from amplitudes folded
// over +/- omega: 2 Re sum_k w_k P0(omega_k) a_n conj(a_m).
Eigen::VectorXd weights_times_density(const SpectralModel& spectral, const QuadratureRule<double>& rule)
{
    Eigen::VectorXd wp(rule.size());
    for (Eigen::Index k = 0; k < rule.size(); ++k)
        wp(k) = 2.0 * rule.weights(k) * spectral.density(rule.nodes(k));
    return wp;
}

struct Probe
{
    Eigen::VectorXd diagonal;
    Eigen::VectorXd first_row;
    Eigen::VectorXd last_row;
};

Probe probe(double tau, double tau_bar, const SpectralModel& spectral, int n_max, const QuadratureRule<double>& rule)
{
    const Eigen::MatrixXcd a = wl_amplitudes(n_max, tau, tau_bar, rule.nodes);
    const Eigen::VectorXd wp = weights_times_density(spectral, rule);
    Probe out;
    out.diagonal = a.cwiseAbs2() * wp;
    const Eigen::VectorXcd first = a.row(0).transpose().cwiseProduct(wp.cast<std::complex<double>>());
    const Eigen::VectorXcd last = a.row(n_max).transpose().cwiseProduct(wp.cast<std::complex<double>>());
    out.first_row = (a.conjugate() * first).real();
    out.last_row = (a.conjugate() * last).real();
    return out;
}

}  // namespace

double wl_element_delta(int n, int m, double tau, double tau_bar)
{
    check_lifetimes(tau, tau_bar);
    if (n < 0 || m < 0)
        throw std::invalid_argument("WL indices must be non-negative");
    const double s = tau + tau_bar;
    return 4.0 * tau * tau_bar / (s * s) * ipow(ratio(tau, tau_bar), n + m);
}

double wl_pure_coefficient(int n, double tau, double tau_bar)
{
    check_lifetimes(tau, tau_bar);
    if (n < 0)
        throw std::invalid_argument("WL index must be non-negative");
    return 2.0 * std::sqrt(tau * tau_bar) / (tau + tau_bar) * ipow(ratio(tau, tau_bar), n);
}

Eigen::VectorXd wl_pure_coefficients(int n_max, double tau, double tau_bar)
{
    check_lifetimes(tau, tau_bar);
    Eigen::VectorXd c(n_max + 1);
    const double r = ratio(tau, tau_bar);
    c(0) = 2.0 * std::sqrt(tau * tau_bar) / (tau + tau_bar);
    for (int n = 1; n <= n_max; ++n)
        c(n) = c(n - 1) * r;
    return c;
}

Eigen::VectorXd wl_pure_coefficients_dtau(int n_max, double tau, double tau_bar)
{
    check_lifetimes(tau, tau_bar);
    const double s = tau + tau_bar;
    const double amp = 2.0 * std::sqrt(tau * tau_bar) / s;
    const double d_amp = std::sqrt(tau_bar) * (tau_bar - tau) / (std::sqrt(tau) * s * s);
    const double r = ratio(tau, tau_bar);
    const double d_r = -2.0 * tau_bar / (s * s);
    Eigen::VectorXd d(n_max + 1);
    double r_pow = 1.0;       // r^n
    double r_pow_prev = 0.0;  // r^(n-1), zero for n = 0
    for (int n = 0; n <= n_max; ++n) {
        d(n) = d_amp * r_pow + amp * n * r_pow_prev * d_r;
        r_pow_prev = r_pow;
        r_pow *= r;
    }
    return d;
}

QuadratureRule<double> frequency_rule(const SpectralModel& spectral, const NumericsConfig& numerics, double tau_bar,
                                      double lorentz_halfwidth, int refine)
{
    spectral.validate();
    numerics.validate();
    if (spectral.is_delta())
        throw std::invalid_argument("frequency_rule: delta spectrum needs no quadrature");
    if (!(lorentz_halfwidth > 0.0) || refine < 1)
        throw std::invalid_argument("frequency_rule: bad halfwidth or refinement");

    const double sigma = spectral.sigma;
    const double core = kGaussianCore * sigma;
    const double window = std::max(core, numerics.quad_window / tau_bar);
    const double b = lorentz_halfwidth;

    std::vector<double> breaks{0.0};
    double x = 0.0;
    while (x < window) {
        double h = kPanelScale * (b * b + x * x) / (b * (numerics.n_max + 1));
        if (x < core)
            h = std::min(h, 0.5 * sigma);
        const double next = std::min(x + h, window);
        for (int j = 1; j <= refine; ++j)
            breaks.push_back(x + (next - x) * j / refine);
        x = next;
    }
    breaks.back() = window;
    return composite_gauss_legendre(Eigen::Map<const Eigen::VectorXd>(breaks.data(), Eigen::Index(breaks.size())),
                                    numerics.quad_nodes);
}

Eigen::MatrixXcd wl_amplitudes(int n_max, double tau, double tau_bar, const Eigen::VectorXd& omega)
{
    const GammaPair g = gamma_pair(tau, tau_bar);
    const std::complex<double> i(0.0, 1.0);
    const double norm = 1.0 / std::sqrt(tau * tau_bar);
    Eigen::MatrixXcd a(n_max + 1, omega.size());
    for (Eigen::Index k = 0; k < omega.size(); ++k) {
        const std::complex<double> den = 0.5 * g.gamma_plus + i * omega(k);
        const std::complex<double> factor = (0.5 * g.gamma_minus + i * omega(k)) / den;
        a(0, k) = norm / den;
        for (int n = 1; n <= n_max; ++n)
            a(n, k) = a(n - 1, k) * factor;
    }
    return a;
}

Eigen::MatrixXd wl_matrix_gaussian(double tau, double tau_bar, const SpectralModel& spectral, int n_max,
                                   const QuadratureRule<double>& rule)
{
    const Eigen::MatrixXcd a = wl_amplitudes(n_max, tau, tau_bar, rule.nodes);
    const Eigen::ArrayXd scale = weights_times_density(spectral, rule).array().sqrt();
    const Eigen::Index nodes = rule.size();

    Eigen::MatrixXd factor(n_max + 1, 2 * nodes);
    factor.leftCols(nodes) = (a.real().array().rowwise() * scale.transpose()).matrix();
    factor.rightCols(nodes) = (a.imag().array().rowwise() * scale.transpose()).matrix();

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    out.selfadjointView<Eigen::Lower>().rankUpdate(factor);
    out.triangularView<Eigen::StrictlyUpper>() = out.transpose();
    return out;
}

Eigen::MatrixXd wl_matrix(double tau, double tau_bar, const SpectralModel& spectral, const NumericsConfig& numerics)
{
    numerics.validate();
    if (spectral.is_delta()) {
        const Eigen::VectorXd c = wl_pure_coefficients(numerics.n_max, tau, tau_bar);
        return c * c.transpose();
    }
    const double b = 0.5 * gamma_pair(tau, tau_bar).gamma_plus;
    return wl_matrix_gaussian(tau, tau_bar, spectral, numerics.n_max, frequency_rule(spectral, numerics, tau_bar, b));
}

double wl_rule_refinement_change(double tau, double tau_bar, const SpectralModel& spectral, int n_max,
                                 const QuadratureRule<double>& rule, const QuadratureRule<double>& refined)
{
    const Probe coarse = probe(tau, tau_bar, spectral, n_max, rule);
    const Probe fine = probe(tau, tau_bar, spectral, n_max, refined);
    return std::max({(coarse.diagonal - fine.diagonal).cwiseAbs().maxCoeff(),
                     (coarse.first_row - fine.first_row).cwiseAbs().maxCoeff(),
                     (coarse.last_row - fine.last_row).cwiseAbs().maxCoeff()});
}

namespace
{

std::complex<double> element_full_line(const WlElementRequest& req, const QuadratureRule<double>& half)
{
    const int top = std::max(req.n, req.m);
    std::complex<double> sum = 0.0;
    for (const double sign : {-1.0, 1.0}) {
        const Eigen::VectorXd omega = sign * half.nodes;
        const Eigen::MatrixXcd a = wl_amplitudes(top, req.tau, req.tau_bar, omega);
        for (Eigen::Index k = 0; k < half.size(); ++k)
            sum += half.weights(k) * req.model.density(omega(k)) * a(req.n, k) * std::conj(a(req.m, k));
    }
    return sum;
}

}  // namespace

double wl_element_gaussian(const WlElementRequest& req)
{
    check_lifetimes(req.tau, req.tau_bar);
    if (req.n < 0 || req.m < 0)
        throw std::invalid_argument("WL indices must be non-negative");
    if (req.model.is_delta())
        return wl_element_delta(req.n, req.m, req.tau, req.tau_bar);

    NumericsConfig numerics = req.numerics;
    numerics.n_max = std::max({numerics.n_max, req.n, req.m});
    const double b = 0.5 * gamma_pair(req.tau, req.tau_bar).gamma_plus;
    const auto rule = frequency_rule(req.model, numerics, req.tau_bar, b);
    const auto refined = frequency_rule(req.model, numerics, req.tau_bar, b, 2);

    const std::complex<double> coarse = element_full_line(req, rule);
    const std::complex<double> fine = element_full_line(req, refined);
    if (std::abs(fine.imag()) > 1e-12)
        throw ConvergenceError("WL element has imaginary residue " + std::to_string(fine.imag()));
    if (std::abs(fine.real() - coarse.real()) > 1e-8)
        throw ConvergenceError("WL element quadrature did not converge under node doubling");
    return fine.real();
}

}  // namespace lifres
