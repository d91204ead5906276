#include "lifres/fisher.hpp"
#include "lifres/two_photon.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace lifres;
using doctest::Approx;

namespace
{

// Coincidence probability by direct enumeration of detection-time pairs on a
// uniform grid. Each photon is a normalized decaying exponential; the
// beam splitter maps a -> (c + d)/sqrt(2), b -> (c - d)/sqrt(2).
double enumerated_coincidences(double eps)
{
    const int n = 3000;
    const double t_max = 60.0 * std::max(eps, 1.0 / eps);
    const double h = t_max / n;
    const Eigen::ArrayXd t = (Eigen::ArrayXd::LinSpaced(n, 0, n - 1) + 0.5) * h;
    auto photon = [&](double tau) {
        Eigen::VectorXd psi = ((-t / (2 * tau)).exp() * std::sqrt(h / tau)).matrix();
        return Eigen::VectorXd(psi / psi.norm());
    };
    const Eigen::VectorXd psi[2] = {photon(1.0 / eps), photon(eps)};
    double total = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            // amplitude for one photon in c at s and one in d at u
            const Eigen::MatrixXd amp = 0.5 * (psi[j] * psi[i].transpose() - psi[i] * psi[j].transpose());
            total += 0.25 * amp.squaredNorm();
        }
    return total;
}

}  // namespace

TEST_CASE("overlap")
{
    CHECK(hom_overlap(1.0) == 1.0);
    CHECK(hom_overlap(2.0) == Approx(0.8).epsilon(1e-15));
    for (const double eps : {0.2, 1.3, 4.0})
        CHECK(hom_overlap(eps) == Approx(hom_overlap(1.0 / eps)).epsilon(1e-15));
    // time integral of the two normalized amplitudes
    const double tau0 = 0.5, tau1 = 2.0;
    CHECK(hom_overlap(2.0) == Approx((1.0 / std::sqrt(tau0 * tau1)) / (0.5 / tau0 + 0.5 / tau1)).epsilon(1e-15));
}

TEST_CASE("coincidence probability")
{
    CHECK(hom_coincidence_prob(1.0) == 0.0);
    CHECK(hom_coincidence_prob(1e8) == Approx(0.25).epsilon(1e-12));
    for (const double eps : {0.5, 1.1, 3.0}) {
        const double o = hom_overlap(eps);
        CHECK(hom_coincidence_prob(eps) == Approx((1.0 - o * o) / 4.0).epsilon(1e-12));
        CHECK(hom_coincidence_prob(eps) == Approx(hom_coincidence_prob(1.0 / eps)).epsilon(1e-14));
    }
}

TEST_CASE("coincidence probability against beam-splitter enumeration")
{
    for (const double eps : {1.1, 2.0})
        CHECK(hom_coincidence_prob(eps) == Approx(enumerated_coincidences(eps)).epsilon(1e-4));
}

TEST_CASE("coincidence Fisher information")
{
    CHECK(hom_cfi(1.0) == 1.0);
    // J(1 + d) = 1 - 2d + O(d^2): the limit is approached smoothly
    for (const double d : {1e-3, 1e-6}) {
        CHECK(std::abs(hom_cfi(1.0 + d) - (1.0 - 2.0 * d)) < 10.0 * d * d);
    }
    CHECK(std::abs(hom_cfi(1.000001) - 1.0) < 1e-5);

    // binomial information from a numerical derivative of P
    for (const double eps : {1.05, 1.3, 2.5}) {
        const double h = 1e-6;
        const double dp = (hom_coincidence_prob(eps + h) - hom_coincidence_prob(eps - h)) / (2 * h);
        const double p = hom_coincidence_prob(eps);
        CHECK(hom_cfi(eps) == Approx(dp * dp / (p * (1 - p))).epsilon(1e-6));
    }
    // as a function of ln(eps) the information is symmetric
    CHECK(hom_cfi(1.5) * 1.5 * 1.5 == Approx(hom_cfi(1.0 / 1.5) / (1.5 * 1.5)).epsilon(1e-12));
}

TEST_CASE("HOM recovers half the information near eps = 1")
{
    const HomResult r = hom_analysis(1.0);
    CHECK(r.overlap == 1.0);
    CHECK(r.coincidence_prob == 0.0);
    CHECK(r.cfi == 1.0);
    CHECK(r.info_fraction == 0.5);
    for (const double eps : {1.001, 1.0001})
        CHECK(hom_analysis(eps).info_fraction == Approx(0.5).epsilon(1e-3));
    for (const double eps : {0.3, 1.2, 4.0}) {
        const HomResult h = hom_analysis(eps);
        CHECK(h.info_fraction >= 0.0);
        CHECK(h.info_fraction <= 1.0);
        CHECK(h.info_fraction == Approx(h.cfi / (2 * qfi_max_delta(eps))));
    }
}

TEST_CASE("scheme comparison")
{
    CHECK(scheme_compare({1.0, 0.6}) == Scheme::OnePhoton);
    CHECK(scheme_compare({1.0, 0.4}) == Scheme::TwoPhoton);
    CHECK(scheme_compare({0.3, 0.1}) == Scheme::TwoPhoton);
    CHECK(scheme_compare({1.0, 0.5}) == Scheme::Tie);
    CHECK(to_string(Scheme::TwoPhoton) == "TwoPhoton");
    CHECK_THROWS(LossModel({1.5, 0.5}).validate());
    CHECK_THROWS(LossModel({0.5, -0.1}).validate());
    CHECK_THROWS(hom_overlap(0.0));
}
