#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rrscore/rational.hpp"

namespace rrscore {

// RFC-style quoting: fields holding comma, quote, or newline get wrapped,
// embedded quotes doubled.
std::string csv_escape(const std::string& field);
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

// "27/64 = 0.421875" when exact, else the 17-significant-digit decimal alone.
std::string prob_echo(const std::optional<Rat>& exact, double value);

}  // namespace rrscore
