#ifndef LIFRES_SWEEP_HPP
#define LIFRES_SWEEP_HPP

#include "lifres/fisher.hpp"
#include "lifres/model.hpp"
#include "lifres/oracle.hpp"
#include "lifres/two_photon.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lifres
{

// Parameter sweeps behind the command-line subcommands. Every command
// returns a table; writing it is a separate step so tests can inspect rows.

enum class OutputFormat
{
    Csv,
    Json
};

OutputFormat output_format_from_string(const std::string& name);

struct Table
{
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;  // diagnostics and summary lines

    // Column index by name; throws if absent.
    std::size_t column(const std::string& name) const;
};

// CSV: provenance and notes as '#' comment lines, one header row, values with
// 12 significant digits. JSON: one object with the same content.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

// Grid syntax:
//   "1.01,1.05,1.2"         explicit values
//   "a:b:n"                 n points, linear from a to b
//   "a:b:n:log"             n points, geometric from a to b (a, b > 0)
//   "a:b:n:log1"            n points with (x - 1) geometric (a, b > 1)
std::vector<double> parse_grid(const std::string& text);

// 60 points with epsilon - 1 logarithmic from 1e-3 to 1.
inline constexpr const char* kDefaultEpsilonGrid = "1.001:2:60:log1";

struct SweepSpec
{
    std::vector<double> epsilon_grid = parse_grid(kDefaultEpsilonGrid);
    std::vector<double> sigma_tau_bar_list{0.01, 0.1, 1.0};
    std::vector<CurveKind> outputs{CurveKind::QfiMax, CurveKind::Qfi, CurveKind::CfiTcspc, CurveKind::CfiWl};
    NumericsConfig numerics;

    void validate() const;
};

struct CommandResult
{
    Table table;
    int failures = 0;  // grid blocks or points that hit a numerical error or tolerance miss
};

// (sigma_tau_bar, purity) over sigma_tau_bar_list.
CommandResult cmd_purity(const SweepSpec& sweep);

// (epsilon, sigma_tau_bar, <requested curves>) for every sigma and epsilon,
// sigma-major. A numerical failure drops that sigma's block and adds a note.
CommandResult cmd_fi_curves(const SweepSpec& sweep);

// Fisher information scaled by TCSPC at the single sigma in the sweep,
// with the SLD eigenbasis built at design_eps (added to the grid if missing).
CommandResult cmd_borderline(double design_eps, const SweepSpec& sweep);

// (epsilon, overlap, p_coincidence, hom_cfi, info_fraction) plus a verdict note.
CommandResult cmd_hom(const SweepSpec& sweep, const LossModel& loss);

// WL-basis QFI against the time-grid oracle on epsilon x sigma.
CommandResult cmd_oracle_check(const SweepSpec& sweep, const TimeGrid& grid, double rel_tolerance = 5e-3);

}  // namespace lifres

#endif  // LIFRES_SWEEP_HPP
