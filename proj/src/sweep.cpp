#include "lifres/sweep.hpp"

#include "lifres/io.hpp"
#include "lifres/state.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lifres
{

namespace
{

std::string join_numbers(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? " " : "") + format_number(values[i]);
    return out;
}

std::string describe_grid(const std::vector<double>& grid)
{
    if (grid.size() <= 8)
        return join_numbers(grid);
    return std::to_string(grid.size()) + " points from " + format_number(grid.front()) + " to " +
           format_number(grid.back());
}

std::string describe_numerics(const NumericsConfig& n)
{
    std::ostringstream s;
    s << "n_max=" << n.n_max << " quad_nodes=" << n.quad_nodes << " quad_window=" << format_number(n.quad_window)
      << " eig_clamp=" << format_number(n.eig_clamp) << " fd_step=" << format_number(n.fd_step);
    return s.str();
}

Table base_table(const std::string& command)
{
    Table t;
    t.provenance.emplace_back("tool", std::string("lifres ") + kToolVersion);
    t.provenance.emplace_back("command", command);
    return t;
}

void add_sweep_provenance(Table& t, const SweepSpec& sweep, bool with_epsilon)
{
    t.provenance.emplace_back("numerics", describe_numerics(sweep.numerics));
    t.provenance.emplace_back("spectral", "kind=gaussian omega0=0 sigma_tau_bar=" + join_numbers(sweep.sigma_tau_bar_list));
    if (with_epsilon)
        t.provenance.emplace_back("epsilon_grid", describe_grid(sweep.epsilon_grid));
}

double to_number(const std::string& token, const std::string& text)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad grid '" + text + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        parts.push_back(cur);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

// Canonical column order for fi-curves.
constexpr CurveKind kCurveOrder[] = {CurveKind::QfiMax, CurveKind::Qfi, CurveKind::CfiTcspc, CurveKind::CfiWl,
                                     CurveKind::CfiSld};

}  // namespace

OutputFormat output_format_from_string(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    throw std::invalid_argument("unknown output format: " + name);
}

std::size_t Table::column(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw std::out_of_range("no column named " + name);
    return std::size_t(it - columns.begin());
}

void write_table(std::ostream& out, const Table& table, OutputFormat format)
{
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc;
        nlohmann::ordered_json prov = nlohmann::ordered_json::object();
        for (const auto& [key, value] : table.provenance)
            prov[key] = value;
        doc["provenance"] = prov;
        doc["columns"] = table.columns;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const double v : row)
                r.push_back(std::isfinite(v) ? nlohmann::ordered_json(std::stod(format_number(v))) : nlohmann::ordered_json());
            rows.push_back(r);
        }
        doc["rows"] = rows;
        doc["notes"] = table.notes;
        out << doc.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : table.provenance)
        out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
    for (const auto& note : table.notes)
        out << "# " << note << '\n';
}

std::vector<double> parse_grid(const std::string& text)
{
    if (text.empty())
        throw std::invalid_argument("empty grid");
    std::vector<double> grid;
    if (text.find(':') == std::string::npos) {
        for (const auto& token : split(text, ','))
            grid.push_back(to_number(token, text));
        return grid;
    }
    const auto parts = split(text, ':');
    if (parts.size() < 3 || parts.size() > 4)
        throw std::invalid_argument("bad grid '" + text + "'");
    const double start = to_number(parts[0], text);
    const double stop = to_number(parts[1], text);
    const double count_value = to_number(parts[2], text);
    const std::string mode = parts.size() == 4 ? parts[3] : "lin";
    const int count = int(count_value);
    if (count < 1 || double(count) != count_value)
        throw std::invalid_argument("grid point count must be a positive integer in '" + text + "'");
    if (count == 1)
        return {start};

    grid.resize(count);
    for (int i = 0; i < count; ++i) {
        const double f = double(i) / (count - 1);
        if (mode == "lin") {
            grid[i] = start + f * (stop - start);
        } else if (mode == "log") {
            if (!(start > 0.0 && stop > 0.0))
                throw std::invalid_argument("log grid needs positive endpoints in '" + text + "'");
            grid[i] = std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
        } else if (mode == "log1") {
            if (!(start > 1.0 && stop > 1.0))
                throw std::invalid_argument("log1 grid needs endpoints above 1 in '" + text + "'");
            grid[i] = 1.0 + std::exp(std::log(start - 1.0) + f * (std::log(stop - 1.0) - std::log(start - 1.0)));
        } else {
            throw std::invalid_argument("unknown grid spacing '" + mode + "'");
        }
    }
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

void SweepSpec::validate() const
{
    if (epsilon_grid.empty())
        throw std::invalid_argument("epsilon grid is empty");
    for (const double e : epsilon_grid)
        if (!(e > 0.0) || !std::isfinite(e))
            throw std::invalid_argument("epsilon values must be positive");
    if (sigma_tau_bar_list.empty())
        throw std::invalid_argument("sigma*tau_bar list is empty");
    for (const double s : sigma_tau_bar_list)
        if (!(s >= 0.0) || !std::isfinite(s))
            throw std::invalid_argument("sigma*tau_bar values must be non-negative");
    if (outputs.empty())
        throw std::invalid_argument("no output curves requested");
    numerics.validate();
}

CommandResult cmd_purity(const SweepSpec& sweep)
{
    sweep.validate();
    CommandResult result{base_table("purity")};
    result.table.provenance.emplace_back("sigma_tau_bar_grid", describe_grid(sweep.sigma_tau_bar_list));
    result.table.columns = {"sigma_tau_bar", "purity"};
    for (const double s : sweep.sigma_tau_bar_list)
        result.table.rows.push_back({s, purity_limit(s)});
    return result;
}

CommandResult cmd_fi_curves(const SweepSpec& sweep)
{
    sweep.validate();
    if (std::find(sweep.outputs.begin(), sweep.outputs.end(), CurveKind::CfiSld) != sweep.outputs.end())
        throw std::invalid_argument("fi-curves does not produce cfi_sld; use the borderline command");
    CommandResult result{base_table("fi-curves")};
    add_sweep_provenance(result.table, sweep, true);

    std::vector<CurveKind> kinds;
    for (const auto kind : kCurveOrder)
        if (std::find(sweep.outputs.begin(), sweep.outputs.end(), kind) != sweep.outputs.end())
            kinds.push_back(kind);
    result.table.columns = {"epsilon", "sigma_tau_bar"};
    for (const auto kind : kinds)
        result.table.columns.push_back(to_string(kind));

    for (const double sigma : sweep.sigma_tau_bar_list) {
        try {
            const auto curves = fisher_curves(kinds, sweep.epsilon_grid, SpectralModel::gaussian(sigma), sweep.numerics);
            for (std::size_t i = 0; i < sweep.epsilon_grid.size(); ++i) {
                std::vector<double> row{sweep.epsilon_grid[i], sigma};
                for (const auto& c : curves)
                    row.push_back(c.samples[i].second);
                result.table.rows.push_back(std::move(row));
            }
        } catch (const NumericalError& e) {
            ++result.failures;
            result.table.notes.push_back("error: sigma_tau_bar=" + format_number(sigma) + " skipped: " + e.what());
        }
    }
    return result;
}

CommandResult cmd_borderline(double design_eps, const SweepSpec& sweep)
{
    sweep.validate();
    if (sweep.sigma_tau_bar_list.size() != 1)
        throw std::invalid_argument("borderline takes exactly one sigma*tau_bar value");
    if (!(design_eps > 0.0) || design_eps == 1.0)
        throw std::invalid_argument("design epsilon must be positive and different from 1");
    const double sigma = sweep.sigma_tau_bar_list.front();

    std::vector<double> grid = sweep.epsilon_grid;
    if (std::find(grid.begin(), grid.end(), design_eps) == grid.end())
        grid.push_back(design_eps);
    std::sort(grid.begin(), grid.end());

    CommandResult result{base_table("borderline")};
    add_sweep_provenance(result.table, sweep, true);
    result.table.provenance.emplace_back("design_eps", format_number(design_eps));
    result.table.columns = {"epsilon", "qfi_over_tcspc", "cfi_wl_over_tcspc", "cfi_sld_over_tcspc"};

    try {
        const auto curves =
            fisher_curves({CurveKind::Qfi, CurveKind::CfiWl, CurveKind::CfiSld, CurveKind::CfiTcspc}, grid,
                          SpectralModel::gaussian(sigma), sweep.numerics, design_eps);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double tcspc = curves[3].samples[i].second;
            const double nan = std::numeric_limits<double>::quiet_NaN();
            auto scaled = [&](int k) { return tcspc > 0.0 ? curves[k].samples[i].second / tcspc : nan; };
            result.table.rows.push_back({grid[i], scaled(0), scaled(1), scaled(2)});
        }
    } catch (const NumericalError& e) {
        ++result.failures;
        result.table.notes.push_back(std::string("error: ") + e.what());
    }
    return result;
}

CommandResult cmd_hom(const SweepSpec& sweep, const LossModel& loss)
{
    sweep.validate();
    loss.validate();
    CommandResult result{base_table("hom")};
    result.table.provenance.emplace_back("model", "two independent lifetime-limited photons, coincidence counting");
    result.table.provenance.emplace_back("epsilon_grid", describe_grid(sweep.epsilon_grid));
    result.table.columns = {"epsilon", "overlap", "p_coincidence", "hom_cfi", "info_fraction"};
    for (const double eps : sweep.epsilon_grid) {
        const HomResult r = hom_analysis(eps);
        result.table.rows.push_back({eps, r.overlap, r.coincidence_prob, r.cfi, r.info_fraction});
    }
    result.table.notes.push_back("verdict: p=" + format_number(loss.p) + " xi=" + format_number(loss.xi) +
                                 " scheme=" + to_string(scheme_compare(loss)));
    return result;
}

CommandResult cmd_oracle_check(const SweepSpec& sweep, const TimeGrid& grid, double rel_tolerance)
{
    sweep.validate();
    grid.validate();
    CommandResult result{base_table("oracle-check")};
    add_sweep_provenance(result.table, sweep, true);
    result.table.provenance.emplace_back("time_grid", "t_max=" + format_number(grid.t_max) +
                                                          " n_points=" + std::to_string(grid.n_points) +
                                                          " panel_nodes=" + std::to_string(grid.panel_nodes));
    result.table.provenance.emplace_back("rel_tolerance", format_number(rel_tolerance));
    result.table.columns = {"epsilon", "sigma_tau_bar", "qfi_wl", "qfi_time_grid", "rel_diff", "within_tolerance"};
    for (const double sigma : sweep.sigma_tau_bar_list) {
        for (const double eps : sweep.epsilon_grid) {
            const LifetimeModel model{1.0, eps};
            const SpectralModel spectral = SpectralModel::gaussian(sigma);
            try {
                const double wl = qfi(model, spectral, sweep.numerics);
                const double tg = qfi_time_grid(model, spectral, grid, sweep.numerics.fd_step, sweep.numerics.eig_clamp);
                const double rel = std::abs(tg - wl) / std::abs(wl);
                const bool ok = rel < rel_tolerance;
                if (!ok)
                    ++result.failures;
                result.table.rows.push_back({eps, sigma, wl, tg, rel, ok ? 1.0 : 0.0});
            } catch (const NumericalError& e) {
                ++result.failures;
                result.table.notes.push_back("error: epsilon=" + format_number(eps) + " sigma_tau_bar=" +
                                             format_number(sigma) + ": " + e.what());
            }
        }
    }
    return result;
}

}  // namespace lifres
