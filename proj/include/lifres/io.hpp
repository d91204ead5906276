#ifndef LIFRES_IO_HPP
#define LIFRES_IO_HPP

#include "lifres/model.hpp"
#include "lifres/state.hpp"

#include <iosfwd>
#include <string>

namespace lifres
{

inline constexpr const char* kToolVersion = "1.0.0";

// Decimal text with 12 significant digits, as used in every output table.
std::string format_number(double value);

// Dense operator text format:
//
//   # lifres-operator 1
//   # <key> = <value>      (one line per provenance field)
//   <dim>
//   <dim lines of dim entries, 17 significant digits>
//
// The entries round-trip exactly.
void write_operator(std::ostream& out, const HermitianOperator<double>& op);
HermitianOperator<double> read_operator(std::istream& in);

// `key = value` lines; blank lines and lines starting with '#' are ignored.
// Unknown keys are an error. Fields not present keep the values of `base`.
std::string to_key_value(const NumericsConfig& numerics);
NumericsConfig parse_numerics(std::istream& in, NumericsConfig base = {});

}  // namespace lifres

#endif  // LIFRES_IO_HPP
