#ifndef LIFRES_QUADRATURE_HPP
#define LIFRES_QUADRATURE_HPP

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lifres
{

template <typename Scalar>
struct QuadratureRule
{
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> nodes;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> weights;

    Eigen::Index size() const { return nodes.size(); }
};

// n-point Gauss-Legendre rule on [-1, 1], nodes ascending. Newton iteration on
// the three-term recurrence; accurate to a few ulps for n up to a few hundred.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one node");
    QuadratureRule<Scalar> rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    if (n == 1) {
        rule.nodes(0) = 0;
        rule.weights(0) = 2;
        return rule;
    }
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
        Scalar dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            Scalar p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const Scalar p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const Scalar dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 4 * std::numeric_limits<Scalar>::epsilon())
                break;
        }
        const Scalar w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes(i) = -x;
        rule.nodes(n - 1 - i) = x;
        rule.weights(i) = w;
        rule.weights(n - 1 - i) = w;
    }
    return rule;
}

// Composite Gauss-Legendre rule: `nodes_per_panel` nodes on each interval
// [breaks[k], breaks[k+1]].
template <typename Derived>
QuadratureRule<double> composite_gauss_legendre(const Eigen::DenseBase<Derived>& breaks, int nodes_per_panel)
{
    const auto base = gauss_legendre(nodes_per_panel);
    const Eigen::Index panels = breaks.size() - 1;
    QuadratureRule<double> rule;
    rule.nodes.resize(panels * nodes_per_panel);
    rule.weights.resize(panels * nodes_per_panel);
    for (Eigen::Index k = 0; k < panels; ++k) {
        const double half = 0.5 * (breaks(k + 1) - breaks(k));
        const double mid = 0.5 * (breaks(k + 1) + breaks(k));
        rule.nodes.segment(k * nodes_per_panel, nodes_per_panel) = (mid + half * base.nodes.array()).matrix();
        rule.weights.segment(k * nodes_per_panel, nodes_per_panel) = half * base.weights;
    }
    return rule;
}

namespace detail
{

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct KronrodEstimate
{
    double value;
    double error;
};

template <typename F>
KronrodEstimate kronrod15(F& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double fsum = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[j] * fsum;
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * fsum;
    }
    return {kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <typename F>
double adaptive_step(F& f, double a, double b, double abs_tol, KronrodEstimate whole, int depth, int max_depth)
{
    if (whole.error <= abs_tol || b - a < 1e-14 * (std::abs(a) + std::abs(b)))
        return whole.value;
    if (depth >= max_depth)
        throw std::runtime_error("adaptive quadrature: maximum subdivision depth reached");
    const double mid = 0.5 * (a + b);
    const auto left = kronrod15(f, a, mid);
    const auto right = kronrod15(f, mid, b);
    return adaptive_step(f, a, mid, 0.5 * abs_tol, left, depth + 1, max_depth) +
           adaptive_step(f, mid, b, 0.5 * abs_tol, right, depth + 1, max_depth);
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod 7/15 by recursive bisection. The tolerance
// is max(abs_tol, rel_tol * |first estimate|), split evenly between halves.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-13, double rel_tol = 1e-12,
                          int max_depth = 40)
{
    if (a == b)
        return 0.0;
    const auto whole = detail::kronrod15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(whole.value));
    return detail::adaptive_step(f, a, b, tol, whole, 0, max_depth);
}

}  // namespace lifres

#endif  // LIFRES_QUADRATURE_HPP
