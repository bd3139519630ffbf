#include "thermobound/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "thermobound/error.hpp"

namespace thermobound::io {

namespace {

RealMatrix real_matrix_from_json(const json &rows, Eigen::Index dim, const char *field) {
    if(!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim)
        throw DomainError(fmt::format("operator JSON: '{}' must be an array of {} rows", field, dim));
    RealMatrix m(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i) {
        const json &row = rows[static_cast<std::size_t>(i)];
        if(!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
            throw DomainError(fmt::format("operator JSON: row {} of '{}' must have {} entries", i, field, dim));
        for(Eigen::Index j = 0; j < dim; ++j) {
            const json &v = row[static_cast<std::size_t>(j)];
            if(!v.is_number()) throw DomainError(fmt::format("operator JSON: '{}'[{}][{}] is not a number", field, i, j));
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

json real_matrix_to_json(const RealMatrix &m) {
    json rows = json::array();
    for(Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for(Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

double number_field(const json &j, const char *key, const char *context) {
    if(!j.contains(key) || !j.at(key).is_number()) throw DomainError(fmt::format("{}: missing numeric field '{}'", context, key));
    return j.at(key).get<double>();
}

std::vector<std::string> data_lines(const std::filesystem::path &path) {
    std::ifstream in(path);
    if(!in) throw DomainError(fmt::format("cannot open '{}'", path.string()));
    std::vector<std::string> out;
    std::string line;
    while(std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if(first == std::string::npos || line[first] == '#') continue;
        out.push_back(line.substr(first));
    }
    return out;
}

std::vector<double> parse_row(const std::string &line, const std::filesystem::path &path, std::size_t lineno) {
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while(std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(cell, &used));
            if(cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
        } catch(const std::exception &) {
            throw DomainError(fmt::format("{}:{}: '{}' is not a number", path.string(), lineno, cell));
        }
    }
    return values;
}

} // namespace

HermitianOperator operator_from_json(const json &j) {
    if(!j.is_object()) throw DomainError("operator JSON: expected an object");
    if(!j.contains("dim") || !j.at("dim").is_number_integer()) throw DomainError("operator JSON: missing integer 'dim'");
    const auto dim = j.at("dim").get<Eigen::Index>();
    if(dim < 1) throw DomainError("operator JSON: 'dim' must be >= 1");
    if(!j.contains("re")) throw DomainError("operator JSON: missing 're'");
    const RealMatrix re = real_matrix_from_json(j.at("re"), dim, "re");
    const RealMatrix im = j.contains("im") ? real_matrix_from_json(j.at("im"), dim, "im") : RealMatrix::Zero(dim, dim);
    ComplexMatrix m(dim, dim);
    m.real() = re;
    m.imag() = im;
    return HermitianOperator(m);
}

json operator_to_json(const HermitianOperator &h) {
    return {{"dim", h.dim()}, {"re", real_matrix_to_json(h.matrix().real())}, {"im", real_matrix_to_json(h.matrix().imag())}};
}

ThermalSpec thermal_spec_from_json(const json &j) {
    if(!j.is_object() || !j.contains("H")) throw DomainError("thermal spec JSON: missing 'H'");
    return ThermalSpec(operator_from_json(j.at("H")), number_field(j, "T", "thermal spec JSON"));
}

json thermal_spec_to_json(const ThermalSpec &spec) { return {{"H", operator_to_json(spec.H)}, {"T", spec.T}}; }

GrandThermalSpec grand_spec_from_json(const json &j) {
    if(!j.is_object() || !j.contains("H") || !j.contains("N")) throw DomainError("grand spec JSON: missing 'H' or 'N'");
    return GrandThermalSpec(operator_from_json(j.at("H")), operator_from_json(j.at("N")), number_field(j, "T", "grand spec JSON"),
                            number_field(j, "mu", "grand spec JSON"));
}

json bounds_to_json(const BoundsResult &b) {
    json out = {{"lower", b.lower}, {"upper", b.upper}, {"guaranteed", b.guaranteed}};
    if(b.exact) {
        out["exact"] = *b.exact;
        out["slack_lower"] = b.slack_lower;
        out["slack_upper"] = b.slack_upper;
    } else {
        out["exact"] = nullptr;
    }
    return out;
}

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

std::string bounds_csv_row(const BoundsResult &b) {
    if(!b.exact) return fmt::format("{},,{},,", format_double(b.lower), format_double(b.upper));
    return fmt::format("{},{},{},{},{}", format_double(b.lower), format_double(*b.exact), format_double(b.upper),
                       format_double(b.slack_lower), format_double(b.slack_upper));
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if(!in) throw DomainError(fmt::format("cannot open '{}'", path.string()));
    try {
        return json::parse(in);
    } catch(const json::parse_error &e) {
        throw DomainError(fmt::format("'{}': invalid JSON ({})", path.string(), e.what()));
    }
}

RealVector read_levels_csv(const std::filesystem::path &path) {
    const std::vector<std::string> lines = data_lines(path);
    RealVector levels(static_cast<Eigen::Index>(lines.size()));
    for(std::size_t i = 0; i < lines.size(); ++i) {
        const std::vector<double> row = parse_row(lines[i], path, i + 1);
        if(row.size() != 1) throw DomainError(fmt::format("{}: expected one level per line", path.string()));
        levels[static_cast<Eigen::Index>(i)] = row[0];
    }
    if(levels.size() == 0) throw DomainError(fmt::format("{}: no levels", path.string()));
    return levels;
}

RealMatrix read_matrix_csv(const std::filesystem::path &path) {
    const std::vector<std::string> lines = data_lines(path);
    if(lines.empty()) throw DomainError(fmt::format("{}: empty matrix", path.string()));
    std::vector<std::vector<double>> rows;
    for(std::size_t i = 0; i < lines.size(); ++i) rows.push_back(parse_row(lines[i], path, i + 1));
    const std::size_t cols = rows.front().size();
    RealMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for(std::size_t i = 0; i < rows.size(); ++i) {
        if(rows[i].size() != cols) throw DomainError(fmt::format("{}: row {} has {} entries, expected {}", path.string(), i + 1, rows[i].size(), cols));
        for(std::size_t j = 0; j < cols; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

} // namespace thermobound::io
