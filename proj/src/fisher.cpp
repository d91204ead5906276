#include "lifres/fisher.hpp"

#include "lifres/quadrature.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace Eigen::internal
{

// The NumTraits shipped with Boost predate the infinity()/quiet_NaN() hooks
// Eigen's generic hypot needs; the tridiagonal QR step only needs hypot itself.
template <>
struct hypot_impl<boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                                boost::multiprecision::et_off>>
{
    using Mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;
    static Mp run(const Mp& x, const Mp& y) { return boost::multiprecision::hypot(x, y); }
};

}  // namespace Eigen::internal

namespace lifres
{

namespace
{

using Mp = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>, boost::multiprecision::et_off>;
using Mp4 = Eigen::Matrix<Mp, 4, 4>;

// Clamp and negativity floor used in 100-digit arithmetic; the discarded
// directions are null to ~1e-90.
const Mp kMpClamp("1e-60");

struct MpSpan
{
    Mp4 rho;
    Mp4 drho;
};

// <psi_u|psi_v> = sech((u - v)/2) with u = ln(tau / tau_bar); g1, g2 are the
// first and second derivatives of that overlap in (u - v).
Mp overlap(const Mp& x) { return 1 / cosh(x / 2); }
Mp overlap_d1(const Mp& x) { return -overlap(x) * tanh(x / 2) / 2; }
Mp overlap_d2(const Mp& x)
{
    const Mp s = overlap(x);
    const Mp t = tanh(x / 2);
    return -s * (s * s - t * t) / 4;
}

MpSpan mp_delta_span(double epsilon)
{
    const Mp eps(epsilon);
    const Mp theta = log(eps);
    const Mp u[2] = {-theta, theta};  // tau0 = tau_bar / eps, tau1 = tau_bar * eps
    const Mp du[2] = {-1 / eps, 1 / eps};

    // Basis order: psi0, psi1, d psi0 / d eps, d psi1 / d eps.
    Mp4 gram;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            gram(i, j) = overlap(u[i] - u[j]);
            // <psi_i | d psi_j> = du_j * d/du_j sech((u_i - u_j)/2)
            gram(i, 2 + j) = du[j] * overlap_d1(u[j] - u[i]);
            gram(2 + j, i) = gram(i, 2 + j);
            gram(2 + i, 2 + j) = -du[i] * du[j] * overlap_d2(u[i] - u[j]);
        }
    }

    Mp4 coeff_rho = Mp4::Zero();
    coeff_rho(0, 0) = coeff_rho(1, 1) = Mp(1) / 2;
    Mp4 coeff_drho = Mp4::Zero();
    for (int i = 0; i < 2; ++i)
        coeff_drho(i, 2 + i) = coeff_drho(2 + i, i) = Mp(1) / 2;

    const Eigen::LLT<Mp4> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NumericalError("delta span: Gram matrix is not positive definite");
    const Mp4 lower = llt.matrixL();
    return {lower.transpose() * coeff_rho * lower, lower.transpose() * coeff_drho * lower};
}

// |ln eps| below which the span is numerically degenerate even in 100 digits.
constexpr double kDegenerateTheta = 1e-12;

}  // namespace

DeltaSpan delta_span(double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("delta_span: epsilon must be positive");
    if (std::abs(std::log(epsilon)) < kDegenerateTheta)
        throw std::invalid_argument("delta_span: epsilon too close to 1, the span is degenerate");
    const MpSpan span = mp_delta_span(epsilon);
    return {span.rho.cast<double>(), span.drho.cast<double>()};
}

double qfi_max_delta(double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("qfi_max_delta: epsilon must be positive");
    if (std::abs(std::log(epsilon)) < kDegenerateTheta)
        return 1.0;
    const MpSpan span = mp_delta_span(epsilon);
    const auto eig = eigensystem(span.rho, kMpClamp, kMpClamp);
    return static_cast<double>(qfi(eig, span.drho));
}

double qfi(const StatePoint& state, double eig_clamp)
{
    const auto eig = eigensystem(state.rho.matrix, eig_clamp);
    return qfi(eig, state.drho.matrix);
}

double qfi(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics)
{
    model.validate();
    if (model.epsilon != 1.0)
        return qfi(state_point(model, spectral, numerics), numerics.eig_clamp);
    if (spectral.is_delta())
        return qfi_max_delta(1.0);
    // K(1 + d) = K0 + a d^2 + O(d^3) around the symmetric point.
    const double d1 = 1e-3, d2 = 1e-4;
    LifetimeModel near = model;
    near.epsilon = 1.0 + d1;
    const double k1 = qfi(state_point(near, spectral, numerics), numerics.eig_clamp);
    near.epsilon = 1.0 + d2;
    const double k2 = qfi(state_point(near, spectral, numerics), numerics.eig_clamp);
    return std::max(0.0, (k2 * d1 * d1 - k1 * d2 * d2) / (d1 * d1 - d2 * d2));
}

double tcspc_density(double t, double epsilon)
{
    return 0.5 * (epsilon * std::exp(-epsilon * t) + std::exp(-t / epsilon) / epsilon);
}

double tcspc_density_deps(double t, double epsilon)
{
    const double e2 = epsilon * epsilon;
    return 0.5 * ((1.0 - epsilon * t) * std::exp(-epsilon * t) + (t / (e2 * epsilon) - 1.0 / e2) * std::exp(-t / epsilon));
}

double cfi_tcspc(double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("cfi_tcspc: epsilon must be positive");
    if (epsilon == 1.0)
        return 0.0;
    auto integrand = [epsilon](double t) {
        const double dp = tcspc_density_deps(t, epsilon);
        return dp * dp / tcspc_density(t, epsilon);
    };
    // 50 lifetimes of the slower component.
    const double upper = 50.0 * std::max(epsilon, 1.0 / epsilon);
    // The derivative cancels to O(eps - 1) near eps = 1, so roundoff limits
    // per-piece accuracy; tolerances are taken relative to a coarse total.
    auto integrate = [&](double abs_tol, double rel_tol) {
        double total = 0.0;
        double lo = 0.0;
        for (const double hi : {1.0, 5.0, 20.0, upper}) {
            if (hi <= lo)
                continue;
            total += integrate_adaptive(integrand, lo, hi, abs_tol, rel_tol);
            lo = hi;
        }
        return total;
    };
    const double rough = integrate(1e-300, 1e-6);
    return integrate(1e-11 * rough, 1e-11);
}

WlCfi cfi_wl(const StatePoint& state)
{
    const Eigen::VectorXd p = state.rho.matrix.diagonal();
    const Eigen::VectorXd dp = state.drho.matrix.diagonal();
    WlCfi out;
    out.per_mode = Eigen::VectorXd::Zero(p.size());
    for (Eigen::Index n = 0; n < p.size(); ++n)
        if (p(n) > kMinOutcomeProbability)
            out.per_mode(n) = dp(n) * dp(n) / p(n);
    out.total = out.per_mode.sum();
    return out;
}

WlCfi cfi_wl(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics)
{
    return cfi_wl(state_point(model, spectral, numerics));
}

SldMeasurement::SldMeasurement(double design_eps, const SpectralModel& spectral, const NumericsConfig& numerics,
                               double tau_bar)
    : design_eps_(design_eps), tau_bar_(tau_bar), spectral_(spectral), numerics_(numerics)
{
    const StatePoint state = state_point({tau_bar, design_eps}, spectral, numerics);
    const auto eig = eigensystem(state.rho.matrix, numerics.eig_clamp);
    const auto l = sld(eig, state.drho.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.matrix);
    if (solver.info() != Eigen::Success)
        throw NumericalError("SLD eigendecomposition failed");
    basis_ = solver.eigenvectors();
}

double SldMeasurement::cfi(double eval_eps) const
{
    const StatePoint state = state_point({tau_bar_, eval_eps}, spectral_, numerics_);
    const Eigen::VectorXd p = basis_.cwiseProduct(state.rho.matrix * basis_).colwise().sum().transpose();
    const Eigen::VectorXd dp = basis_.cwiseProduct(state.drho.matrix * basis_).colwise().sum().transpose();
    return classical_fisher(p, dp);
}

double cfi_sld_eigenbasis(double design_eps, double eval_eps, const SpectralModel& spectral,
                          const NumericsConfig& numerics, double tau_bar)
{
    return SldMeasurement(design_eps, spectral, numerics, tau_bar).cfi(eval_eps);
}

std::string to_string(CurveKind kind)
{
    switch (kind) {
    case CurveKind::Qfi:
        return "qfi";
    case CurveKind::CfiTcspc:
        return "cfi_tcspc";
    case CurveKind::CfiWl:
        return "cfi_wl";
    case CurveKind::CfiSld:
        return "cfi_sld";
    case CurveKind::QfiMax:
        return "qfi_max";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name)
{
    for (const auto kind : {CurveKind::Qfi, CurveKind::CfiTcspc, CurveKind::CfiWl, CurveKind::CfiSld, CurveKind::QfiMax})
        if (to_string(kind) == name)
            return kind;
    throw std::invalid_argument("unknown curve kind: " + name);
}

std::vector<FisherCurve> fisher_curves(const std::vector<CurveKind>& kinds, const std::vector<double>& epsilon_grid,
                                       const SpectralModel& spectral, const NumericsConfig& numerics,
                                       std::optional<double> design_eps, double tau_bar)
{
    const bool needs_state = std::any_of(kinds.begin(), kinds.end(), [](CurveKind k) {
        return k == CurveKind::Qfi || k == CurveKind::CfiWl;
    });
    std::optional<SldMeasurement> measurement;
    if (std::find(kinds.begin(), kinds.end(), CurveKind::CfiSld) != kinds.end()) {
        if (!design_eps)
            throw std::invalid_argument("the cfi_sld curve needs a design epsilon");
        measurement.emplace(*design_eps, spectral, numerics, tau_bar);
    }

    std::vector<FisherCurve> curves;
    for (const auto kind : kinds) {
        FisherCurve c;
        c.kind = kind;
        c.spectral = spectral;
        c.numerics = numerics;
        c.tau_bar = tau_bar;
        if (kind == CurveKind::CfiSld)
            c.design_eps = design_eps;
        curves.push_back(std::move(c));
    }

    for (const double eps : epsilon_grid) {
        const LifetimeModel model{tau_bar, eps};
        std::optional<StatePoint> state;
        if (needs_state && eps != 1.0)
            state = state_point(model, spectral, numerics);
        for (auto& curve : curves) {
            double value = 0.0;
            switch (curve.kind) {
            case CurveKind::Qfi:
                value = state ? qfi(*state, numerics.eig_clamp) : qfi(model, spectral, numerics);
                break;
            case CurveKind::CfiWl:
                value = state ? cfi_wl(*state).total : cfi_wl(model, spectral, numerics).total;
                break;
            case CurveKind::CfiTcspc:
                value = cfi_tcspc(eps);
                break;
            case CurveKind::CfiSld:
                value = measurement->cfi(eps);
                break;
            case CurveKind::QfiMax:
                value = qfi_max_delta(eps);
                break;
            }
            curve.samples.emplace_back(eps, value);
        }
    }
    return curves;
}

}  // namespace lifres
