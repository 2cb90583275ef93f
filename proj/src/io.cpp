#include "rrscore/io.hpp"

namespace rrscore {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_escape(fields[i]);
  }
  os << '\n';
}

std::string prob_echo(const std::optional<Rat>& exact, double value) {
  std::string dec = format_double(value);
  if (exact) return format_rational(*exact) + " = " + dec;
  return dec;
}

}  // namespace rrscore
