#ifndef LIFRES_STATE_HPP
#define LIFRES_STATE_HPP

#include "lifres/model.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <string>

namespace lifres
{

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Where an operator came from. Written verbatim into serialized operators.
struct OperatorProvenance
{
    std::string basis = "wl";  // "wl" or "time-grid"
    double epsilon = 1.0;
    double tau_bar = 1.0;
    SpectralKind spectral_kind = SpectralKind::Delta;
    double sigma_tau_bar = 0.0;
    int n_max = 0;
    int quad_nodes = 0;
    double quad_window = 0.0;
    double trace_deficit = 0.0;
};

// Finite Hermitian (real symmetric for Scalar = double) operator.
template <typename Scalar>
struct HermitianOperator
{
    using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

    Matrix<Scalar> matrix;
    OperatorProvenance provenance;

    Eigen::Index dim() const { return matrix.rows(); }
};

// Eigen-decomposition with eigenvalues sorted descending and tiny ones
// floored to zero.
template <typename Scalar>
struct EigenSystem
{
    using RealScalar = typename Eigen::NumTraits<Scalar>::Real;

    Vector<RealScalar> values;
    Matrix<Scalar> vectors;  // column k belongs to values(k)
    int clamped_count = 0;
    RealScalar clamp = 0;

    Eigen::Index dim() const { return values.size(); }
};

// Largest |A - A^H| entry.
template <typename Derived>
typename Derived::RealScalar hermiticity_defect(const Eigen::MatrixBase<Derived>& a)
{
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

// Full Hermitian eigendecomposition. Eigenvalues with |D| <= clamp and
// negative ones down to -negativity_tol are set to zero; anything more
// negative raises NegativityError.
template <typename Derived>
EigenSystem<typename Derived::Scalar> eigensystem(const Eigen::MatrixBase<Derived>& op,
                                                  typename Derived::RealScalar clamp,
                                                  typename Derived::RealScalar negativity_tol)
{
    using Scalar = typename Derived::Scalar;
    using Real = typename Derived::RealScalar;
    using std::abs;
    using std::max;

    if (op.rows() != op.cols())
        throw std::invalid_argument("eigensystem: operator must be square");
    const Real scale = max(Real(1), Real(op.cwiseAbs().maxCoeff()));
    if (hermiticity_defect(op) > Real(1e-12) * scale)
        throw std::invalid_argument("eigensystem: operator is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(op.derived());
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigensystem: eigensolver failed");

    const Eigen::Index n = op.rows();
    EigenSystem<Scalar> out;
    out.clamp = clamp;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index k = 0; k < n; ++k) {
        Real& d = out.values(k);
        if (d < -negativity_tol)
            throw NegativityError("eigensystem: eigenvalue below the negativity tolerance");
        if (d <= clamp) {
            if (d != Real(0))
                ++out.clamped_count;
            d = Real(0);
        }
    }
    return out;
}

// Double-precision default: negativity tolerance 1e-10.
template <typename Derived>
EigenSystem<typename Derived::Scalar> eigensystem(const Eigen::MatrixBase<Derived>& op,
                                                  typename Derived::RealScalar clamp)
{
    return eigensystem(op, clamp, typename Derived::RealScalar(1e-10));
}

template <typename Scalar>
EigenSystem<Scalar> eigensystem(const HermitianOperator<Scalar>& op, typename HermitianOperator<Scalar>::RealScalar clamp)
{
    return eigensystem(op.matrix, clamp);
}

// Deficit above which the truncated WL representation is rejected.
inline constexpr double kMaxTraceDeficit = 1e-4;

// rho = (rho_tau0 + rho_tau1) / 2 in the WL basis at tau_bar, renormalized to
// unit trace. The pre-normalization deficit 1 - Tr is kept in provenance.
HermitianOperator<double> assemble_rho(const LifetimeModel& model, const SpectralModel& spectral,
                                       const NumericsConfig& numerics);

// d rho / d epsilon by central differences of the un-renormalized mixture
// with step h = fd_step * epsilon. Throws StepError if halving h moves any
// entry by more than 1e-6 relative to max(1, largest entry).
HermitianOperator<double> d_rho_d_eps(const LifetimeModel& model, const SpectralModel& spectral,
                                      const NumericsConfig& numerics);

// rho and its derivative sharing one validated frequency rule.
struct StatePoint
{
    HermitianOperator<double> rho;
    HermitianOperator<double> drho;
};

StatePoint state_point(const LifetimeModel& model, const SpectralModel& spectral, const NumericsConfig& numerics);

// Tr(rho^2) of the epsilon -> 1 state for Gaussian dephasing:
// (4 pi)^{-1/2} Integral exp(-W^2/4) / (1 + (sigma tau_bar W)^2) dW.
double purity_limit(double sigma_tau_bar);

// Tr(A^2) from entries.
double purity(const HermitianOperator<double>& rho);

}  // namespace lifres

#endif  // LIFRES_STATE_HPP
