#include "lifres/io.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lifres
{

namespace
{

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits "key = value"; returns false if there is no '='.
bool split_key_value(const std::string& line, std::string& key, std::string& value)
{
    const auto eq = line.find('=');
    if (eq == std::string::npos)
        return false;
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    return !key.empty();
}

double to_double(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for '" + key + "': " + value);
    }
}

int to_int(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer value for '" + key + "': " + value);
    }
}

std::string exact(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace

std::string format_number(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

void write_operator(std::ostream& out, const HermitianOperator<double>& op)
{
    const OperatorProvenance& p = op.provenance;
    out << "# lifres-operator 1\n";
    out << "# tool_version = " << kToolVersion << '\n';
    out << "# basis = " << p.basis << '\n';
    out << "# epsilon = " << exact(p.epsilon) << '\n';
    out << "# tau_bar = " << exact(p.tau_bar) << '\n';
    out << "# spectral_kind = " << to_string(p.spectral_kind) << '\n';
    out << "# sigma_tau_bar = " << exact(p.sigma_tau_bar) << '\n';
    out << "# n_max = " << p.n_max << '\n';
    out << "# quad_nodes = " << p.quad_nodes << '\n';
    out << "# quad_window = " << exact(p.quad_window) << '\n';
    out << "# trace_deficit = " << exact(p.trace_deficit) << '\n';
    out << op.dim() << '\n';
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
        for (Eigen::Index j = 0; j < op.dim(); ++j)
            out << (j ? " " : "") << exact(op.matrix(i, j));
        out << '\n';
    }
}

HermitianOperator<double> read_operator(std::istream& in)
{
    HermitianOperator<double> op;
    OperatorProvenance& p = op.provenance;
    std::string line;
    bool saw_magic = false;
    long dim = -1;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] != '#') {
            dim = to_int("dim", t);
            break;
        }
        const std::string body = trim(t.substr(1));
        if (body.rfind("lifres-operator", 0) == 0) {
            saw_magic = true;
            continue;
        }
        std::string key, value;
        if (!split_key_value(body, key, value))
            continue;
        if (key == "basis")
            p.basis = value;
        else if (key == "epsilon")
            p.epsilon = to_double(key, value);
        else if (key == "tau_bar")
            p.tau_bar = to_double(key, value);
        else if (key == "spectral_kind")
            p.spectral_kind = spectral_kind_from_string(value);
        else if (key == "sigma_tau_bar")
            p.sigma_tau_bar = to_double(key, value);
        else if (key == "n_max")
            p.n_max = to_int(key, value);
        else if (key == "quad_nodes")
            p.quad_nodes = to_int(key, value);
        else if (key == "quad_window")
            p.quad_window = to_double(key, value);
        else if (key == "trace_deficit")
            p.trace_deficit = to_double(key, value);
    }
    if (!saw_magic)
        throw std::runtime_error("read_operator: missing 'lifres-operator' header");
    if (dim < 1)
        throw std::runtime_error("read_operator: missing or invalid dimension line");
    op.matrix.resize(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            if (!(in >> op.matrix(i, j)))
                throw std::runtime_error("read_operator: truncated matrix data");
    return op;
}

std::string to_key_value(const NumericsConfig& numerics)
{
    std::ostringstream out;
    out << "n_max = " << numerics.n_max << '\n';
    out << "quad_nodes = " << numerics.quad_nodes << '\n';
    out << "quad_window = " << exact(numerics.quad_window) << '\n';
    out << "eig_clamp = " << exact(numerics.eig_clamp) << '\n';
    out << "fd_step = " << exact(numerics.fd_step) << '\n';
    return out.str();
}

NumericsConfig parse_numerics(std::istream& in, NumericsConfig base)
{
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::string key, value;
        if (!split_key_value(t, key, value))
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        if (key == "n_max")
            base.n_max = to_int(key, value);
        else if (key == "quad_nodes")
            base.quad_nodes = to_int(key, value);
        else if (key == "quad_window")
            base.quad_window = to_double(key, value);
        else if (key == "eig_clamp")
            base.eig_clamp = to_double(key, value);
        else if (key == "fd_step")
            base.fd_step = to_double(key, value);
        else
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    base.validate();
    return base;
}

}  // namespace lifres
