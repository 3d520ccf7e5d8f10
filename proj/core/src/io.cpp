#include "fgc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

namespace fgc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t col) {
    const std::string_view t = trim(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw InputError("row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": cannot parse '" +
                         std::string(t) + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw InputError("row " + std::to_string(row) + ", column " +
                         std::to_string(col) + ": value is not finite");
    }
    return value;
}

std::vector<double> parse_row(const std::string& line, char delimiter,
                              std::size_t row) {
    std::vector<double> out;
    std::size_t start = 0;
    std::size_t col = 1;
    for (;;) {
        const std::size_t end = line.find(delimiter, start);
        const std::string_view cell(line.data() + start,
                                    (end == std::string::npos ? line.size() : end) -
                                        start);
        out.push_back(parse_cell(cell, row, col));
        if (end == std::string::npos) break;
        start = end + 1;
        ++col;
    }
    return out;
}

void format_value(std::string& out, double v, char delimiter, bool first) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    if (!first) out.push_back(delimiter);
    out += buf;
}

} // namespace

CurveTable read_table(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);

    CurveTable table;
    table.label = std::filesystem::path(path).stem().string();

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        if (delimiter == '\0') {
            delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
        }
        std::vector<double> values = parse_row(line, delimiter, row);
        if (table.header.empty()) {
            table.header = std::move(values);
            continue;
        }
        if (values.size() != table.header.size()) {
            throw InputError("row " + std::to_string(row) + ": has " +
                             std::to_string(values.size()) +
                             " cells but the header has " +
                             std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(values));
    }
    if (table.header.empty()) throw InputError("file is empty: " + path);
    return table;
}

CurveSeries read_curves(const std::string& path, char delimiter) {
    CurveTable table = read_table(path, delimiter);
    for (std::size_t i = 1; i < table.header.size(); ++i) {
        if (table.header[i] <= table.header[i - 1]) {
            throw InputError("row 1, column " + std::to_string(i + 1) +
                             ": grid points must be strictly increasing");
        }
    }
    if (table.header.size() < 3) {
        throw InputError("grid row must hold at least 3 points");
    }
    if (table.rows.size() < 4) {
        throw InputError("file must hold at least 4 curve rows, got " +
                         std::to_string(table.rows.size()));
    }
    return make_series(make_grid(std::move(table.header)),
                       std::move(table.rows), std::move(table.label));
}

std::string render_curves(const CurveSeries& series, char delimiter) {
    std::string out;
    out.reserve((series.size() + 1) * series.grid->size() * 20);
    for (std::size_t j = 0; j < series.grid->size(); ++j) {
        format_value(out, series.grid->points[j], delimiter, j == 0);
    }
    out.push_back('\n');
    for (const Curve& c : series.curves) {
        for (std::size_t j = 0; j < c.values.size(); ++j) {
            format_value(out, c.values[j], delimiter, j == 0);
        }
        out.push_back('\n');
    }
    return out;
}

void write_curves(const CurveSeries& series, const std::string& path,
                  char delimiter) {
    atomic_write_file(path, render_curves(series, delimiter));
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write file: " + tmp.string());
        out << content;
        if (!out) throw InputError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        throw InputError("cannot rename " + tmp.string() + " to " +
                         target.string());
    }
}

CurveSeries log_returns(const CurveSeries& prices, bool midpoint_grid) {
    const std::size_t m = prices.grid->size();
    if (m < 4) {
        throw InputError("log returns need at least 4 grid points per curve");
    }
    const auto& u = prices.grid->points;
    std::vector<double> grid_points(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        grid_points[i] = midpoint_grid ? 0.5 * (u[i] + u[i + 1]) : u[i];
    }
    GridPtr grid = make_grid(std::move(grid_points));

    CurveSeries out;
    out.grid = grid;
    out.label = prices.label;
    out.curves.reserve(prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t) {
        const auto& q = prices[t].values;
        std::vector<double> r(m - 1);
        for (std::size_t i = 0; i < m; ++i) {
            if (!(q[i] > 0.0)) {
                throw InputError("curve " + std::to_string(t + 1) + ", point " +
                                 std::to_string(i + 1) +
                                 ": price must be positive for log returns");
            }
        }
        for (std::size_t i = 0; i + 1 < m; ++i) {
            r[i] = std::log(q[i + 1]) - std::log(q[i]);
        }
        out.curves.push_back(Curve{grid, std::move(r)});
    }
    return out;
}

CurveSeries cpi_normalize(const CurveSeries& prices, const CurveSeries& cpi) {
    if (prices.size() != cpi.size()) {
        throw InputError("cpi_normalize: price series has " +
                         std::to_string(prices.size()) + " curves but CPI has " +
                         std::to_string(cpi.size()));
    }
    if (!same_grid(prices.grid, cpi.grid)) {
        throw InputError("cpi_normalize: price and CPI grids differ");
    }
    CurveSeries out;
    out.grid = prices.grid;
    out.label = prices.label;
    out.curves.reserve(prices.size());
    for (std::size_t t = 0; t < prices.size(); ++t) {
        const auto& q = prices[t].values;
        const auto& c = cpi[t].values;
        std::vector<double> v(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (!(c[i] > 0.0)) {
                throw InputError("curve " + std::to_string(t + 1) + ", point " +
                                 std::to_string(i + 1) +
                                 ": CPI must be positive");
            }
            v[i] = q[i] / c[i] * 100.0;
        }
        out.curves.push_back(Curve{out.grid, std::move(v)});
    }
    return out;
}

} // namespace fgc
