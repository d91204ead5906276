#ifndef LIFRES_FISHER_HPP
#define LIFRES_FISHER_HPP

#include "lifres/model.hpp"
#include "lifres/state.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lifres
{

// Symmetric logarithmic derivative restricted to eigenvalue pairs with
// D_k + D_k' above the eigensystem's clamp.
template <typename Scalar>
struct SldOperator
{
    Matrix<Scalar> matrix;
    int support_dim = 0;  // ordered pairs (k, k') kept in the sum
};

// Energy-basis matrix elements <k| drho |k'>.
template <typename Scalar, typename Derived>
Matrix<Scalar> in_eigenbasis(const EigenSystem<Scalar>& rho_eigen, const Eigen::MatrixBase<Derived>& drho)
{
    if (drho.rows() != rho_eigen.dim() || drho.cols() != rho_eigen.dim())
        throw std::invalid_argument("derivative operator does not match the eigensystem dimension");
    return rho_eigen.vectors.adjoint() * drho * rho_eigen.vectors;
}

template <typename Scalar, typename Derived>
SldOperator<Scalar> sld(const EigenSystem<Scalar>& rho_eigen, const Eigen::MatrixBase<Derived>& drho)
{
    const Matrix<Scalar> d = in_eigenbasis(rho_eigen, drho);
    const Eigen::Index n = rho_eigen.dim();
    Matrix<Scalar> l = Matrix<Scalar>::Zero(n, n);
    SldOperator<Scalar> out;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto s = rho_eigen.values(k) + rho_eigen.values(j);
            if (s > rho_eigen.clamp) {
                l(k, j) = Scalar(2) * d(k, j) / s;
                ++out.support_dim;
            }
        }
    }
    out.matrix = rho_eigen.vectors * l * rho_eigen.vectors.adjoint();
    return out;
}

// K = sum over kept pairs of 2 |<k|drho|k'>|^2 / (D_k + D_k'), which equals
// Tr(L^2 rho) for the SLD above.
template <typename Scalar, typename Derived>
typename Eigen::NumTraits<Scalar>::Real qfi(const EigenSystem<Scalar>& rho_eigen, const Eigen::MatrixBase<Derived>& drho)
{
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    const Matrix<Scalar> d = in_eigenbasis(rho_eigen, drho);
    const Eigen::Index n = rho_eigen.dim();
    Real total = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const Real s = rho_eigen.values(k) + rho_eigen.values(j);
            if (s > rho_eigen.clamp)
                total += Real(2) * Eigen::numext::abs2(d(k, j)) / s;
        }
    }
    return total;
}

template <typename Scalar>
typename Eigen::NumTraits<Scalar>::Real qfi(const EigenSystem<Scalar>& rho_eigen, const HermitianOperator<Scalar>& drho)
{
    return qfi(rho_eigen, drho.matrix);
}

// QFI of the WL-basis mixture. At epsilon == 1 exactly the derivative
// vanishes identically, so the value there is the limit taken from
// epsilon = 1 + 1e-3 and 1 + 1e-4 (quadratic extrapolation).
double qfi(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics);

// QFI from an already assembled state.
double qfi(const StatePoint& state, double eig_clamp);

// The lifetime-limited state rho = (|psi_tau0><psi_tau0| + |psi_tau1><psi_tau1|)/2
// and d rho / d epsilon, written in an orthonormal basis of the span of
// {psi_tau0, psi_tau1, d psi_tau0, d psi_tau1}. Built from the analytic Gram
// matrix of that span in 100-digit arithmetic, then rounded.
struct DeltaSpan
{
    Eigen::Matrix4d rho;
    Eigen::Matrix4d drho;
};

DeltaSpan delta_span(double epsilon);

// QFI of the lifetime-limited mixture (the sigma -> 0 reference). Equals 1
// in the epsilon -> 1 limit.
double qfi_max_delta(double epsilon);

// TCSPC arrival-time density p(t) = [eps e^{-eps t} + e^{-t/eps}/eps]/2
// (tau_bar = 1) and its epsilon derivative.
double tcspc_density(double t, double epsilon);
double tcspc_density_deps(double t, double epsilon);

// Fisher information of the arrival-time histogram; independent of the
// spectral density.
double cfi_tcspc(double epsilon);

struct WlCfi
{
    double total = 0.0;
    Eigen::VectorXd per_mode;  // (d p_n)^2 / p_n, zero where p_n <= 1e-14
};

WlCfi cfi_wl(const StatePoint& state);
WlCfi cfi_wl(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics);

// Projective measurement onto the eigenvectors of the SLD built at a design
// point; evaluated anywhere.
class SldMeasurement
{
public:
    SldMeasurement(double design_eps, const SpectralModel& spectral, const NumericsConfig& numerics,
                   double tau_bar = 1.0);

    double cfi(double eval_eps) const;
    double design_eps() const { return design_eps_; }
    const Eigen::MatrixXd& basis() const { return basis_; }

private:
    double design_eps_;
    double tau_bar_;
    SpectralModel spectral_;
    NumericsConfig numerics_;
    Eigen::MatrixXd basis_;  // columns: SLD eigenvectors
};

double cfi_sld_eigenbasis(double design_eps, double eval_eps, const SpectralModel& spectral,
                          const NumericsConfig& numerics, double tau_bar = 1.0);

// Outcomes with probability at or below this are skipped in CFI sums.
inline constexpr double kMinOutcomeProbability = 1e-14;

template <typename DerivedP, typename DerivedD>
double classical_fisher(const Eigen::MatrixBase<DerivedP>& p, const Eigen::MatrixBase<DerivedD>& dp)
{
    double total = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j)
        if (p(j) > kMinOutcomeProbability)
            total += dp(j) * dp(j) / p(j);
    return total;
}

enum class CurveKind
{
    Qfi,
    CfiTcspc,
    CfiWl,
    CfiSld,
    QfiMax
};

std::string to_string(CurveKind kind);
CurveKind curve_kind_from_string(const std::string& name);

struct FisherCurve
{
    CurveKind kind = CurveKind::Qfi;
    std::vector<std::pair<double, double>> samples;  // (epsilon, value)
    SpectralModel spectral;
    NumericsConfig numerics;
    double tau_bar = 1.0;
    std::optional<double> design_eps;  // CfiSld only
};

// Samples the requested curves on one epsilon grid, assembling each state once.
std::vector<FisherCurve> fisher_curves(const std::vector<CurveKind>& kinds, const std::vector<double>& epsilon_grid,
                                       const SpectralModel& spectral, const NumericsConfig& numerics,
                                       std::optional<double> design_eps = std::nullopt, double tau_bar = 1.0);

}  // namespace lifres

#endif  // LIFRES_FISHER_HPP
