#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "thermobound/bounds.hpp"
#include "thermobound/spectral.hpp"
#include "thermobound/thermal.hpp"

namespace thermobound::io {

using nlohmann::json;

/// {"dim": n, "re": [[...]], "im": [[...]]}, row-major. "im" may be omitted for real operators.
HermitianOperator operator_from_json(const json &j);
json operator_to_json(const HermitianOperator &h);

/// {"H": <operator>, "T": t}
ThermalSpec thermal_spec_from_json(const json &j);
json thermal_spec_to_json(const ThermalSpec &spec);

/// {"H": <operator>, "N": <operator>, "T": t, "mu": m}
GrandThermalSpec grand_spec_from_json(const json &j);

json bounds_to_json(const BoundsResult &b);

/// Shortest text that reads back as the same double (17 significant digits).
std::string format_double(double value);

inline constexpr const char *bounds_csv_columns = "lower,exact,upper,slack_lower,slack_upper";
/// lower,exact,upper,slack_lower,slack_upper; exact and slacks are empty when no exact value exists.
std::string bounds_csv_row(const BoundsResult &b);

json read_json_file(const std::filesystem::path &path);
/// One level per line; blank lines and lines starting with '#' are skipped.
RealVector read_levels_csv(const std::filesystem::path &path);
/// Dense rows of comma-separated values; every row must have the same length.
RealMatrix read_matrix_csv(const std::filesystem::path &path);

} // namespace thermobound::io
