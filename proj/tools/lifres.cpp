// lifres: parameter sweeps of lifetime-resolution Fisher information.
//
// Exit codes: 0 success, 1 bad arguments, 2 numerical failure (output is
// still written, with diagnostics), 3 I/O error.

#include "lifres/io.hpp"
#include "lifres/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace
{

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct Options
{
    std::string epsilon_grid;
    std::string sigma_grid;
    std::string curves = "qfi_max,qfi,cfi_tcspc,cfi_wl";
    std::string config;
    std::string out;
    std::string format = "csv";
    int n_max = -1;
    double design_eps = 1.1;
    double p = 1.0;
    double xi = 0.5;
    double t_max = 40.0;
    int time_points = 600;
    double tolerance = 5e-3;
};

// Options shared by every subcommand, with command-specific grid defaults.
void add_common(CLI::App* cmd, Options& o, const std::string& eps_default, const std::string& sigma_default)
{
    if (!eps_default.empty())
        cmd->add_option("--epsilon-grid", o.epsilon_grid, "list 'a,b,c' or 'start:stop:count[:lin|log|log1]'")
            ->default_val(eps_default);
    if (!sigma_default.empty())
        cmd->add_option("--sigma-tau-bar", o.sigma_grid, "spectral width sigma*tau_bar, same grid syntax")
            ->default_val(sigma_default);
    cmd->add_option("--nmax", o.n_max, "WL basis truncation (overrides --config)");
    cmd->add_option("--config", o.config, "numerics file with 'key = value' lines")->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
}

lifres::SweepSpec build_sweep(const Options& o)
{
    lifres::SweepSpec s;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in)
            throw std::ios_base::failure("cannot open config file " + o.config);
        s.numerics = lifres::parse_numerics(in);
    }
    if (o.n_max >= 0)
        s.numerics.n_max = o.n_max;
    if (!o.epsilon_grid.empty())
        s.epsilon_grid = lifres::parse_grid(o.epsilon_grid);
    if (!o.sigma_grid.empty())
        s.sigma_tau_bar_list = lifres::parse_grid(o.sigma_grid);
    s.outputs.clear();
    std::istringstream names(o.curves);
    std::string name;
    while (std::getline(names, name, ','))
        s.outputs.push_back(lifres::curve_kind_from_string(name));
    return s;
}

int emit(const lifres::CommandResult& result, const Options& o)
{
    const auto format = lifres::output_format_from_string(o.format);
    if (o.out.empty()) {
        lifres::write_table(std::cout, result.table, format);
        std::cout.flush();
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            std::cerr << "lifres: cannot open output file " << o.out << '\n';
            return kExitIo;
        }
        lifres::write_table(file, result.table, format);
        file.close();
        if (!file) {
            std::cerr << "lifres: write failed for " << o.out << '\n';
            return kExitIo;
        }
    }
    if (result.failures > 0) {
        for (const auto& note : result.table.notes)
            if (note.rfind("error", 0) == 0)
                std::cerr << "lifres: " << note << '\n';
        std::cerr << "lifres: " << result.failures << " numerical failure(s)\n";
        return kExitNumerical;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fisher information bounds for resolving two emitter lifetimes"};
    app.set_version_flag("--version", std::string("lifres ") + lifres::kToolVersion);
    app.require_subcommand(1);

    // Separate storage per subcommand: default_val writes through immediately.
    Options po, co, bo, ho, oo;
    auto* purity = app.add_subcommand("purity", "purity of the limiting state versus sigma*tau_bar");
    add_common(purity, po, "", "0.01:10:50:log");

    auto* curves = app.add_subcommand("fi-curves", "QFI and CFI curves versus epsilon");
    add_common(curves, co, lifres::kDefaultEpsilonGrid, "0.01,0.1,1");
    curves->add_option("--curves", co.curves, "comma list of qfi_max, qfi, cfi_tcspc, cfi_wl")->capture_default_str();

    auto* borderline = app.add_subcommand("borderline", "information relative to TCSPC at one spectral width");
    add_common(borderline, bo, "1.001:1.5:40:log1", "0.25");
    borderline->add_option("--design-eps", bo.design_eps, "epsilon at which the SLD eigenbasis is built")
        ->capture_default_str();

    auto* hom = app.add_subcommand("hom", "two-photon coincidence analysis");
    add_common(hom, ho, lifres::kDefaultEpsilonGrid, "");
    hom->add_option("--p", ho.p, "collection probability per photon")->capture_default_str();
    hom->add_option("--xi", ho.xi, "fraction of the one-photon QFI a practical single-photon measurement recovers")
        ->capture_default_str();

    auto* oracle = app.add_subcommand("oracle-check", "WL-basis QFI against the time-grid reference");
    add_common(oracle, oo, "1.05,1.2,1.5", "0.01,0.1,0.25");
    oracle->add_option("--t-max", oo.t_max, "time grid extent in units of tau_bar")->capture_default_str();
    oracle->add_option("--time-points", oo.time_points, "time grid size (multiple of 10)")->capture_default_str();
    oracle->add_option("--tolerance", oo.tolerance, "relative agreement required")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    const Options& o = *purity ? po : *curves ? co : *borderline ? bo : *hom ? ho : oo;
    try {
        const lifres::SweepSpec sweep = build_sweep(o);
        if (*purity)
            return emit(lifres::cmd_purity(sweep), o);
        if (*curves)
            return emit(lifres::cmd_fi_curves(sweep), o);
        if (*borderline)
            return emit(lifres::cmd_borderline(o.design_eps, sweep), o);
        if (*hom)
            return emit(lifres::cmd_hom(sweep, lifres::LossModel{o.p, o.xi}), o);
        lifres::TimeGrid grid;
        grid.t_max = o.t_max;
        grid.n_points = o.time_points;
        return emit(lifres::cmd_oracle_check(sweep, grid, o.tolerance), o);
    } catch (const lifres::NumericalError& e) {
        std::cerr << "lifres: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "lifres: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "lifres: " << e.what() << '\n';
        return kExitUsage;
    }
}
