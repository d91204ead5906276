#ifndef LIFRES_TWO_PHOTON_HPP
#define LIFRES_TWO_PHOTON_HPP

#include <string>

namespace lifres
{

// Hong-Ou-Mandel coincidence counting on two independent lifetime-limited
// photons, each drawn from the equal-weight tau0/tau1 mixture. Only the
// coincidence / no-coincidence outcome is used.

struct HomResult
{
    double epsilon = 1.0;
    double overlap = 1.0;           // |<psi_tau0|psi_tau1>|
    double coincidence_prob = 0.0;  // (1 - overlap^2) / 4
    double cfi = 1.0;               // binomial Fisher information of the coincidence rate
    double info_fraction = 0.5;     // cfi / (2 qfi_max_delta)
};

// 2 eps / (1 + eps^2).
double hom_overlap(double epsilon);

// Mixed pairs (half of all draws) exit through different ports with
// probability (1 - overlap^2)/2; identical pairs never do.
double hom_coincidence_prob(double epsilon);

// (dP/deps)^2 / [P (1 - P)], simplified to 16 eps^2 / [(1 + eps^2)^4 (1 - P)]
// so that epsilon = 1 needs no special case (the value there is 1).
double hom_cfi(double epsilon);

HomResult hom_analysis(double epsilon);

// Per-window collection probability p and the information fraction xi
// recovered by a one-photon measurement.
struct LossModel
{
    double p = 1.0;
    double xi = 1.0;

    void validate() const;
};

enum class Scheme
{
    OnePhoton,
    TwoPhoton,
    Tie
};

// Two-photon events occur with probability p^2 and carry half the
// information of the two photons, so the one-photon scheme wins when xi > p/2.
Scheme scheme_compare(const LossModel& loss);

std::string to_string(Scheme scheme);

}  // namespace lifres

#endif  // LIFRES_TWO_PHOTON_HPP
