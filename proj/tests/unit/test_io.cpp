#include "lifres/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace lifres;

TEST_CASE("numbers carry 12 significant digits")
{
    CHECK(format_number(0.1234567890123456) == "0.123456789012");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(2.5e-7) == "2.5e-07");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("operators round-trip exactly")
{
    NumericsConfig numerics;
    numerics.n_max = 15;
    const auto rho = assemble_rho({1.0, 1.3}, SpectralModel::gaussian(0.2), numerics);
    std::stringstream buffer;
    write_operator(buffer, rho);
    const auto back = read_operator(buffer);
    CHECK(back.matrix == rho.matrix);
    CHECK(back.provenance.epsilon == rho.provenance.epsilon);
    CHECK(back.provenance.sigma_tau_bar == rho.provenance.sigma_tau_bar);
    CHECK(back.provenance.spectral_kind == SpectralKind::Gaussian);
    CHECK(back.provenance.n_max == 15);
    CHECK(back.provenance.trace_deficit == rho.provenance.trace_deficit);
    CHECK(back.provenance.basis == "wl");
}

TEST_CASE("malformed operator files are rejected")
{
    std::istringstream no_header("3\n1 0 0\n0 1 0\n0 0 1\n");
    CHECK_THROWS(read_operator(no_header));
    std::istringstream truncated("# lifres-operator 1\n2\n1 0\n0\n");
    CHECK_THROWS(read_operator(truncated));
    std::istringstream no_dim("# lifres-operator 1\n");
    CHECK_THROWS(read_operator(no_dim));
}

TEST_CASE("numerics key-value format")
{
    NumericsConfig n;
    n.n_max = 250;
    n.fd_step = 3e-5;
    std::istringstream text(to_key_value(n));
    const auto back = parse_numerics(text);
    CHECK(back.n_max == 250);
    CHECK(back.fd_step == 3e-5);
    CHECK(back.quad_nodes == n.quad_nodes);

    std::istringstream partial("# overrides\n\nquad_nodes = 24\n");
    CHECK(parse_numerics(partial).quad_nodes == 24);

    std::istringstream unknown("n_max = 10\nbogus = 1\n");
    CHECK_THROWS(parse_numerics(unknown));
    std::istringstream garbage("n_max = ten\n");
    CHECK_THROWS(parse_numerics(garbage));
    std::istringstream invalid("quad_nodes = 4\n");
    CHECK_THROWS(parse_numerics(invalid));
}
