#include "tempest/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace tempest {

namespace {

[[noreturn]] void fail(const std::string& path, long line,
                       const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

TimeSeries load_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    long lineno = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (lineno == 1 && has_header) continue;
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::size_t end =
                comma == std::string::npos ? line.size() : comma;
            // Trim surrounding spaces from the cell.
            std::size_t a = start, b = end;
            while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
            while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t')) --b;
            double value = 0.0;
            const auto res = std::from_chars(line.data() + a, line.data() + b,
                                             value);
            if (res.ec != std::errc{} || res.ptr != line.data() + b || a == b) {
                fail(path, lineno,
                     "non-numeric cell '" + line.substr(start, end - start) +
                         "'");
            }
            if (!std::isfinite(value)) {
                fail(path, lineno, "non-finite value");
            }
            row.push_back(value);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (width == 0) {
            width = row.size();
        } else if (row.size() != width) {
            fail(path, lineno,
                 "ragged row: expected " + std::to_string(width) +
                     " columns, got " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error(path + ": no data rows");
    }
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            m(i, j) = rows[static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)];
        }
    }
    return TimeSeries(std::move(m));
}

void save_csv(const std::string& path, const TimeSeries& series,
              bool with_header) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    std::ostringstream buf;
    if (with_header) {
        for (Index j = 0; j < series.dim(); ++j) {
            if (j) buf << ',';
            buf << 'c' << j;
        }
        buf << '\n';
    }
    for (Index i = 0; i < series.n(); ++i) {
        for (Index j = 0; j < series.dim(); ++j) {
            if (j) buf << ',';
            buf << format_double(series.values()(i, j));
        }
        buf << '\n';
    }
    out << buf.str();
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

}  // namespace tempest
