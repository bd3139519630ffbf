#include "cli_support.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "thermobound/error.hpp"
#include "thermobound/io.hpp"

namespace thermobound::cli {

namespace {

std::string cell_text(const Cell &c) {
    if(const double *d = std::get_if<double>(&c)) return io::format_double(*d);
    if(const bool *b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    if(const std::string *s = std::get_if<std::string>(&c)) return *s;
    return "";
}

nlohmann::ordered_json cell_json(const Cell &c) {
    if(const double *d = std::get_if<double>(&c)) return *d;
    if(const bool *b = std::get_if<bool>(&c)) return *b;
    if(const std::string *s = std::get_if<std::string>(&c)) return *s;
    return nullptr;
}

std::string option_value(const CLI::Option &opt) {
    if(opt.get_type_size() == 0) return opt.count() > 0 ? "true" : "false";
    if(opt.count() > 0) {
        std::string joined;
        for(const std::string &r : opt.results()) joined += (joined.empty() ? "" : ",") + r;
        return joined;
    }
    return opt.get_default_str();
}

void render(std::ostream &os, Format format, const std::string &header, const Table &table) {
    if(format == Format::csv) {
        os << header << '\n';
        for(std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
        os << '\n';
        for(const Row &row : table.rows) {
            for(std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell_text(row[c]);
            os << '\n';
        }
        return;
    }
    nlohmann::ordered_json head;
    head["config"] = header.substr(2);
    os << head.dump() << '\n';
    for(const Row &row : table.rows) {
        nlohmann::ordered_json line;
        for(std::size_t c = 0; c < row.size(); ++c) line[table.columns[c]] = cell_json(row[c]);
        os << line.dump() << '\n';
    }
}

} // namespace

Row bounds_cells(const BoundsResult &b) {
    if(!b.exact) return {b.lower, std::monostate{}, b.upper, std::monostate{}, std::monostate{}};
    return {b.lower, *b.exact, b.upper, b.slack_lower, b.slack_upper};
}

std::string config_header(const CLI::App &sub) {
    std::string line = fmt::format("# thermobound {}", sub.get_name());
    for(const CLI::Option *opt : sub.get_options()) {
        if(opt->get_lnames().empty()) continue;
        const std::string name = "--" + opt->get_lnames().front();
        if(name == "--help" || name == "--jobs") continue;
        const std::string value = option_value(*opt);
        if(!value.empty()) line += fmt::format(" {}={}", name, value);
    }
    return line;
}

Sink::Sink(std::string path, Format format) : path_(std::move(path)), format_(format) {
    if(path_.empty()) return;
    std::ofstream probe(path_, std::ios::app);
    if(!probe) throw DomainError(fmt::format("cannot write output file '{}'", path_));
}

void Sink::write(const std::string &header, const Table &table) const {
    if(path_.empty()) {
        render(std::cout, format_, header, table);
        std::cout.flush();
        return;
    }
    std::ofstream out(path_, std::ios::trunc);
    if(!out) throw DomainError(fmt::format("cannot write output file '{}'", path_));
    render(out, format_, header, table);
}

void write_gnuplot(const std::string &csv_path, const std::string &header, const std::string &plot) {
    const std::string script = csv_path + ".gp";
    std::ofstream out(script, std::ios::trunc);
    if(!out) throw DomainError(fmt::format("cannot write gnuplot script '{}'", script));
    const std::string png = std::filesystem::path(csv_path).replace_extension(".png").string();
    out << header << '\n'
        << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set key autotitle columnhead\n"
        << "set terminal pngcairo size 900,600\n"
        << fmt::format("set output '{}'\n", png) << fmt::format("data = '{}'\n", csv_path) << plot;
}

std::vector<double> parse_grid(const std::string &spec, const char *flag) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for(std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if(parts.size() != 3) throw UsageError(fmt::format("{} expects start:stop:count, got '{}'", flag, spec));
    double lo = 0.0, hi = 0.0;
    int count = 0;
    try {
        std::size_t used = 0;
        lo = std::stod(parts[0], &used);
        if(used != parts[0].size()) throw std::invalid_argument(parts[0]);
        hi = std::stod(parts[1], &used);
        if(used != parts[1].size()) throw std::invalid_argument(parts[1]);
        count = std::stoi(parts[2], &used);
        if(used != parts[2].size()) throw std::invalid_argument(parts[2]);
    } catch(const std::logic_error &) {
        throw UsageError(fmt::format("{} expects start:stop:count, got '{}'", flag, spec));
    }
    if(count < 1) throw UsageError(fmt::format("{} needs a count of at least 1, got '{}'", flag, spec));
    return linspace(lo, hi, count);
}

std::vector<double> linspace(double lo, double hi, int points) {
    if(points == 1) return {lo};
    std::vector<double> v(static_cast<std::size_t>(points));
    for(int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
    return v;
}

} // namespace thermobound::cli
