#include "dgf/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dgf {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(std::string_view token) {
    // Trim ASCII whitespace around the field.
    std::size_t b = 0, e = token.size();
    while (b < e && (token[b] == ' ' || token[b] == '\t' || token[b] == '\r')) ++b;
    while (e > b && (token[e - 1] == ' ' || token[e - 1] == '\t' || token[e - 1] == '\r')) --e;
    if (b == e) throw CsvError("empty numeric field");
    double value = 0.0;
    const auto* first = token.data() + b;
    const auto* last = token.data() + e;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw CsvError("bad numeric field '" + std::string(token.substr(b, e - b)) + "'");
    if (!std::isfinite(value))
        throw CsvError("non-finite numeric field '" + std::string(token.substr(b, e - b)) + "'");
    return value;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

namespace {

std::vector<std::string> read_nonempty_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t') blank = false;
        if (!blank) lines.push_back(line);
    }
    return lines;
}

}  // namespace

SquareMatrix read_matrix_csv(const std::filesystem::path& path) {
    const auto lines = read_nonempty_lines(path);
    if (lines.empty()) throw CsvError("'" + path.string() + "' is empty");
    const std::size_t n = lines.size();
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != n)
            throw CsvError("'" + path.string() + "' row " + std::to_string(i) + " has " +
                           std::to_string(fields.size()) + " fields, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_double(fields[j]);
    }
    return m;
}

void write_matrix_csv(const std::filesystem::path& path, const SquareMatrix& m) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

std::vector<double> read_vector_csv(const std::filesystem::path& path) {
    const auto lines = read_nonempty_lines(path);
    if (lines.size() != 1)
        throw CsvError("'" + path.string() + "' must contain exactly one CSV row, found " +
                       std::to_string(lines.size()));
    const auto fields = split_csv_line(lines[0]);
    std::vector<double> v;
    v.reserve(fields.size());
    for (const auto& f : fields) v.push_back(parse_double(f));
    return v;
}

void write_vector_csv(const std::filesystem::path& path, std::span<const double> v) {
    std::ofstream out(path);
    if (!out) throw CsvError("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << format_double(v[i]);
    }
    out << '\n';
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

}  // namespace dgf
