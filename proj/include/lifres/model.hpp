#ifndef LIFRES_MODEL_HPP
#define LIFRES_MODEL_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace lifres
{

// Raised when a numerical procedure cannot meet its own accuracy contract.
// The subclasses name the procedure that gave up.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class TruncationError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class NegativityError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class StepError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

class ExtentError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// Mixture of two emitters with lifetimes tau0 = tau_bar / epsilon and
// tau1 = tau_bar * epsilon. tau_bar is the known geometric mean and sets the
// unit of time; epsilon = sqrt(tau1 / tau0) is the resolution parameter.
struct LifetimeModel
{
    double tau_bar = 1.0;
    double epsilon = 1.0;

    void validate() const;
};

struct Lifetimes
{
    double tau0;
    double tau1;
};

Lifetimes lifetimes_from(const LifetimeModel& model);

enum class SpectralKind
{
    Delta,
    Gaussian
};

// Centered spectral density P0 of the emitted photon, shifted to omega0.
// sigma and omega0 are angular frequencies (inverse time). Fisher quantities
// only ever see the centered density, so omega0 is carried for bookkeeping.
struct SpectralModel
{
    SpectralKind kind = SpectralKind::Delta;
    double sigma = 0.0;
    double omega0 = 0.0;

    static SpectralModel delta(double omega0 = 0.0) { return {SpectralKind::Delta, 0.0, omega0}; }
    static SpectralModel gaussian(double sigma, double omega0 = 0.0)
    {
        return {SpectralKind::Gaussian, sigma, omega0};
    }

    // True when the density is a point mass: Delta, or a Gaussian of zero width.
    bool is_delta() const { return kind == SpectralKind::Delta || sigma == 0.0; }

    // Dimensionless width sigma * tau_bar; zero for Delta.
    double sigma_tau_bar(double tau_bar) const { return is_delta() ? 0.0 : sigma * tau_bar; }

    // P0(omega), centered at zero. Not defined for Delta.
    double density(double omega) const;

    void validate() const;
};

struct GammaPair
{
    double gamma_plus;   // 1/tau + 1/tau_bar
    double gamma_minus;  // 1/tau - 1/tau_bar
};

GammaPair gamma_pair(double tau, double tau_bar);

struct NumericsConfig
{
    int n_max = 100;            // highest weighted-Laguerre index kept
    int quad_nodes = 20;        // Gauss-Legendre nodes per frequency panel
    double quad_window = 12.0;  // minimum half-width of the frequency window, units of 1/tau_bar
    double eig_clamp = 1e-12;
    double fd_step = 1e-4;      // relative to epsilon

    int dim() const { return n_max + 1; }
    void validate() const;
};

std::string to_string(SpectralKind kind);
SpectralKind spectral_kind_from_string(const std::string& name);

}  // namespace lifres

#endif  // LIFRES_MODEL_HPP
