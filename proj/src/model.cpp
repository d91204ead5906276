#include "lifres/model.hpp"

#include <cmath>
#include <numbers>

namespace lifres
{

void LifetimeModel::validate() const
{
    if (!(tau_bar > 0.0) || !std::isfinite(tau_bar))
        throw std::invalid_argument("tau_bar must be positive and finite");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be positive and finite");
}

Lifetimes lifetimes_from(const LifetimeModel& model)
{
    model.validate();
    return {model.tau_bar / model.epsilon, model.tau_bar * model.epsilon};
}

double SpectralModel::density(double omega) const
{
    if (is_delta())
        throw std::logic_error("delta spectral density has no pointwise value");
    const double z = omega / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

void SpectralModel::validate() const
{
    if (kind == SpectralKind::Gaussian && (!(sigma >= 0.0) || !std::isfinite(sigma)))
        throw std::invalid_argument("gaussian sigma must be finite and non-negative");
    if (!std::isfinite(omega0))
        throw std::invalid_argument("omega0 must be finite");
}

GammaPair gamma_pair(double tau, double tau_bar)
{
    if (!(tau > 0.0) || !(tau_bar > 0.0))
        throw std::invalid_argument("gamma_pair: lifetimes must be positive");
    return {1.0 / tau + 1.0 / tau_bar, 1.0 / tau - 1.0 / tau_bar};
}

void NumericsConfig::validate() const
{
    if (n_max < 1)
        throw std::invalid_argument("n_max must be at least 1");
    if (quad_nodes < 16)
        throw std::invalid_argument("quad_nodes must be at least 16");
    if (!(quad_window > 0.0))
        throw std::invalid_argument("quad_window must be positive");
    if (!(eig_clamp > 0.0))
        throw std::invalid_argument("eig_clamp must be positive");
    if (!(fd_step > 0.0 && fd_step < 1e-2))
        throw std::invalid_argument("fd_step must lie in (0, 1e-2)");
}

std::string to_string(SpectralKind kind)
{
    return kind == SpectralKind::Delta ? "delta" : "gaussian";
}

SpectralKind spectral_kind_from_string(const std::string& name)
{
    if (name == "delta")
        return SpectralKind::Delta;
    if (name == "gaussian")
        return SpectralKind::Gaussian;
    throw std::invalid_argument("unknown spectral kind: " + name);
}

}  // namespace lifres
