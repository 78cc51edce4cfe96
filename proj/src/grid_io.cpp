#include "ridgelab/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "ridgelab/errors.hpp"

namespace ridgelab {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return out;
}

bool next_line(std::istream& is, std::string& line) {
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IoError(std::string("cannot parse ") + what + " from '" + s + "'");
    }
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
    std::uint64_t v = 0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw IoError(std::string("cannot parse ") + what + " from '" + s + "'");
    return v;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

void write_grid_csv(std::ostream& os, std::uint64_t p, std::size_t d, const std::vector<cplx>& values) {
    os << "p,d\n" << p << ',' << d << "\nindex,re,im\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << i << ',' << fmt17(values[i].real()) << ',' << fmt17(values[i].imag()) << '\n';
}

void write_grid_csv(std::ostream& os, const GridFunction& f) { write_grid_csv(os, f.p(), f.dim(), f.values()); }
void write_grid_csv(std::ostream& os, const RidgeletCoeffs& w) { write_grid_csv(os, w.p(), w.dim(), w.values()); }

GridTable read_grid_csv(std::istream& is) {
    std::string line;
    if (!next_line(is, line) || split_csv(line) != std::vector<std::string>{"p", "d"})
        throw IoError("grid csv: expected header 'p,d'");
    if (!next_line(is, line)) throw IoError("grid csv: missing p,d values");
    const auto pd = split_csv(line);
    if (pd.size() != 2) throw IoError("grid csv: malformed p,d row");
    GridTable t;
    t.p = parse_uint(pd[0], "p");
    t.d = parse_uint(pd[1], "d");
    if (!next_line(is, line) || split_csv(line) != std::vector<std::string>{"index", "re", "im"})
        throw IoError("grid csv: expected header 'index,re,im'");
    while (next_line(is, line)) {
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw IoError("grid csv: row needs index,re,im: '" + line + "'");
        if (parse_uint(cells[0], "index") != t.values.size())
            throw IoError("grid csv: rows must be in linear-index order");
        t.values.emplace_back(parse_double(cells[1], "re"), parse_double(cells[2], "im"));
    }
    return t;
}

GridFunction to_grid_function(const GridTable& t) { return GridFunction(PrimeModulus(t.p), t.d, t.values); }

RidgeletCoeffs to_ridgelet_coeffs(const GridTable& t) { return RidgeletCoeffs(PrimeModulus(t.p), t.d, t.values); }

std::vector<DataRow> read_dataset_csv(std::istream& is) {
    std::string line;
    if (!next_line(is, line)) throw IoError("dataset csv: empty input");
    const auto header = split_csv(line);
    if (header.size() < 2 || header.back() != "y") throw IoError("dataset csv: header must be x0,...,x{D-1},y");
    const std::size_t d = header.size() - 1;
    for (std::size_t k = 0; k < d; ++k) {
        if (header[k] != "x" + std::to_string(k)) throw IoError("dataset csv: header column " + std::to_string(k) + " must be x" + std::to_string(k));
    }
    std::vector<DataRow> rows;
    while (next_line(is, line)) {
        const auto cells = split_csv(line);
        if (cells.size() != d + 1) throw IoError("dataset csv: wrong column count in '" + line + "'");
        DataRow row;
        row.x.coords.resize(d);
        for (std::size_t k = 0; k < d; ++k) row.x.coords[k] = parse_uint(cells[k], "coordinate");
        row.y = parse_double(cells[d], "y");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<DataRow> read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset " + path.string());
    return read_dataset_csv(in);
}

std::vector<double> read_activation_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open activation file " + path.string());
    std::string line;
    if (!next_line(in, line) || split_csv(line) != std::vector<std::string>{"b", "value"})
        throw IoError(path.string() + ": expected header 'b,value'");
    std::vector<double> out;
    while (next_line(in, line)) {
        const auto cells = split_csv(line);
        if (cells.size() != 2 || parse_uint(cells[0], "b") != out.size())
            throw IoError(path.string() + ": rows must be b,value in order");
        out.push_back(parse_double(cells[1], "value"));
    }
    return out;
}

} // namespace ridgelab
