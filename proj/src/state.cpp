#include "lifres/state.hpp"

#include "lifres/quadrature.hpp"
#include "lifres/wl_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

namespace lifres
{

namespace
{

constexpr double kRuleTolerance = 1e-8;
constexpr double kStepTolerance = 1e-6;

// Builds (M(tau0) + M(tau1)) / 2 for epsilon values near a nominal one, in
// units where tau_bar = 1. All evaluations share one frequency rule so that
// finite differences see no change of quadrature.
class MixtureAssembler
{
public:
    MixtureAssembler(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics)
        : model_(model), numerics_(numerics)
    {
        model.validate();
        spectral.validate();
        numerics.validate();
        sigma_tau_bar_ = spectral.sigma_tau_bar(model.tau_bar);
        spectral_ = spectral.is_delta() ? SpectralModel::delta() : SpectralModel::gaussian(sigma_tau_bar_);
        if (!spectral_.is_delta()) {
            // Largest lifetime has the narrowest Lorentzian.
            const double tau_long = std::max(model.epsilon, 1.0 / model.epsilon);
            halfwidth_ = 0.5 * gamma_pair(tau_long, 1.0).gamma_plus;
            rule_ = frequency_rule(spectral_, numerics_, 1.0, halfwidth_);
        }
    }

    void validate_rule() const
    {
        if (!rule_)
            return;
        const auto refined = frequency_rule(spectral_, numerics_, 1.0, halfwidth_, 2);
        for (const double tau : {1.0 / model_.epsilon, model_.epsilon}) {
            const double change = wl_rule_refinement_change(tau, 1.0, spectral_, numerics_.n_max, *rule_, refined);
            if (change > kRuleTolerance) {
                std::ostringstream msg;
                msg << "frequency quadrature not converged (change " << change << " at tau = " << tau << ")";
                throw ConvergenceError(msg.str());
            }
        }
    }

    Eigen::MatrixXd single(double tau) const
    {
        if (!rule_) {
            const Eigen::VectorXd c = wl_pure_coefficients(numerics_.n_max, tau, 1.0);
            return c * c.transpose();
        }
        return wl_matrix_gaussian(tau, 1.0, spectral_, numerics_.n_max, *rule_);
    }

    Eigen::MatrixXd unnormalized(double epsilon) const
    {
        return 0.5 * (single(1.0 / epsilon) + single(epsilon));
    }

    OperatorProvenance provenance() const
    {
        OperatorProvenance p;
        p.basis = "wl";
        p.epsilon = model_.epsilon;
        p.tau_bar = model_.tau_bar;
        p.spectral_kind = spectral_.kind;
        p.sigma_tau_bar = sigma_tau_bar_;
        p.n_max = numerics_.n_max;
        p.quad_nodes = rule_ ? numerics_.quad_nodes : 0;
        p.quad_window = rule_ ? numerics_.quad_window : 0.0;
        return p;
    }

    HermitianOperator<double> rho() const
    {
        validate_rule();
        HermitianOperator<double> out;
        out.matrix = unnormalized(model_.epsilon);
        const double trace = out.matrix.trace();
        out.provenance = provenance();
        out.provenance.trace_deficit = 1.0 - trace;
        if (out.provenance.trace_deficit > kMaxTraceDeficit) {
            std::ostringstream msg;
            msg << "WL truncation at n_max = " << numerics_.n_max << " loses trace " << out.provenance.trace_deficit
                << " (epsilon = " << model_.epsilon << ", sigma*tau_bar = " << sigma_tau_bar_
                << "); increase n_max";
            throw TruncationError(msg.str());
        }
        out.matrix /= trace;
        return out;
    }

    HermitianOperator<double> drho() const { return drho(1.0 - unnormalized(model_.epsilon).trace()); }

    HermitianOperator<double> drho(double trace_deficit) const
    {
        const double eps = model_.epsilon;
        const double h = numerics_.fd_step * eps;
        auto central = [&](double step) {
            return Eigen::MatrixXd((unnormalized(eps + step) - unnormalized(eps - step)) / (2.0 * step));
        };
        HermitianOperator<double> out;
        out.matrix = central(h);
        const Eigen::MatrixXd half = central(0.5 * h);
        const double scale = std::max(1.0, out.matrix.cwiseAbs().maxCoeff());
        const double change = (out.matrix - half).cwiseAbs().maxCoeff();
        if (change > kStepTolerance * scale) {
            std::ostringstream msg;
            msg << "d rho / d epsilon unstable under step halving (change " << change << ")";
            throw StepError(msg.str());
        }
        out.provenance = provenance();
        out.provenance.trace_deficit = trace_deficit;
        return out;
    }

private:
    LifetimeModel model_;
    SpectralModel spectral_;
    NumericsConfig numerics_;
    double sigma_tau_bar_ = 0.0;
    double halfwidth_ = 0.0;
    std::optional<QuadratureRule<double>> rule_;
};

}  // namespace

HermitianOperator<double> assemble_rho(const LifetimeModel& model, const SpectralModel& spectral,
                                       const NumericsConfig& numerics)
{
    return MixtureAssembler(model, spectral, numerics).rho();
}

HermitianOperator<double> d_rho_d_eps(const LifetimeModel& model, const SpectralModel& spectral,
                                      const NumericsConfig& numerics)
{
    return MixtureAssembler(model, spectral, numerics).drho();
}

StatePoint state_point(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics)
{
    const MixtureAssembler assembler(model, spectral, numerics);
    StatePoint out;
    out.rho = assembler.rho();
    out.drho = assembler.drho(out.rho.provenance.trace_deficit);
    return out;
}

double purity_limit(double sigma_tau_bar)
{
    if (!(sigma_tau_bar >= 0.0) || !std::isfinite(sigma_tau_bar))
        throw std::invalid_argument("purity_limit: sigma*tau_bar must be finite and non-negative");
    if (sigma_tau_bar == 0.0)
        return 1.0;  // the integral is the Gaussian normalization
    const double s2 = sigma_tau_bar * sigma_tau_bar;
    auto integrand = [s2](double w) { return std::exp(-0.25 * w * w) / (1.0 + s2 * w * w); };
    // exp(-W^2/4) < 1e-21 beyond W = 14.
    const double half = integrate_adaptive(integrand, 0.0, 14.0, 1e-14, 1e-13);
    return 2.0 * half / std::sqrt(4.0 * std::numbers::pi);
}

double purity(const HermitianOperator<double>& rho)
{
    return rho.matrix.cwiseAbs2().sum();
}

}  // namespace lifres
