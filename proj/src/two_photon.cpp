#include "lifres/two_photon.hpp"

#include "lifres/fisher.hpp"

#include <cmath>
#include <stdexcept>

namespace lifres
{

namespace
{

void check_epsilon(double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be positive and finite");
}

}  // namespace

double hom_overlap(double epsilon)
{
    check_epsilon(epsilon);
    return 2.0 * epsilon / (1.0 + epsilon * epsilon);
}

double hom_coincidence_prob(double epsilon)
{
    check_epsilon(epsilon);
    // 1 - g^2 = (1 - eps^2)^2 / (1 + eps^2)^2 without cancellation near eps = 1.
    const double e2 = epsilon * epsilon;
    const double ratio = (1.0 - e2) / (1.0 + e2);
    return 0.25 * ratio * ratio;
}

double hom_cfi(double epsilon)
{
    check_epsilon(epsilon);
    const double e2 = epsilon * epsilon;
    const double s = 1.0 + e2;
    const double s4 = s * s * s * s;
    return 16.0 * e2 / (s4 * (1.0 - hom_coincidence_prob(epsilon)));
}

HomResult hom_analysis(double epsilon)
{
    HomResult r;
    r.epsilon = epsilon;
    r.overlap = hom_overlap(epsilon);
    r.coincidence_prob = hom_coincidence_prob(epsilon);
    r.cfi = hom_cfi(epsilon);
    r.info_fraction = r.cfi / (2.0 * qfi_max_delta(epsilon));
    return r;
}

void LossModel::validate() const
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("collection probability p must lie in [0, 1]");
    if (!(xi >= 0.0 && xi <= 1.0))
        throw std::invalid_argument("information fraction xi must lie in [0, 1]");
}

Scheme scheme_compare(const LossModel& loss)
{
    loss.validate();
    const double threshold = 0.5 * loss.p;
    if (loss.xi > threshold)
        return Scheme::OnePhoton;
    if (loss.xi < threshold)
        return Scheme::TwoPhoton;
    return Scheme::Tie;
}

std::string to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::OnePhoton:
        return "OnePhoton";
    case Scheme::TwoPhoton:
        return "TwoPhoton";
    case Scheme::Tie:
        return "Tie";
    }
    return "unknown";
}

}  // namespace lifres
