#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "thermobound/bounds.hpp"

namespace thermobound::cli {

/// Malformed flag values that CLI11 cannot check by itself (grid specs, missing companions).
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

/// An empty cell is written as an empty CSV field or a JSON null.
using Cell = std::variant<std::monostate, double, bool, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

/// Cells for lower, exact, upper, slack_lower, slack_upper.
Row bounds_cells(const BoundsResult &b);
inline const std::vector<std::string> bounds_columns{"lower", "exact", "upper", "slack_lower", "slack_upper"};

/// "# thermobound <sub> --name=value ..." built from every option of the subcommand except --jobs and --help.
std::string config_header(const CLI::App &sub);

/// Output destination checked for writability before any computation.
class Sink {
  public:
    Sink(std::string path, Format format);
    void write(const std::string &header, const Table &table) const;
    [[nodiscard]] const std::string &path() const { return path_; }

  private:
    std::string path_;
    Format format_;
};

/// Gnuplot script next to the CSV at <csv>.gp. `plot` is the script body after the terminal/output lines.
void write_gnuplot(const std::string &csv_path, const std::string &header, const std::string &plot);

/// start:stop:count with count >= 1; count = 1 gives {start}.
std::vector<double> parse_grid(const std::string &spec, const char *flag);

/// Evenly spaced samples on [lo, hi], both ends included.
std::vector<double> linspace(double lo, double hi, int points);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads and returns results in index order.
/// The exception of the lowest failing index is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for(std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch(...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), std::max<std::size_t>(n, 1));
    if(workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for(std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for(const std::exception_ptr &e : errors)
        if(e) std::rethrow_exception(e);
    std::vector<Result> out;
    out.reserve(n);
    for(std::optional<Result> &s : slots) out.push_back(std::move(*s));
    return out;
}

} // namespace thermobound::cli
