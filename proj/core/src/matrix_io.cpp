#include "uniexp/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace uniexp {

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RateMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);

    std::string line;
    long lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++lineno;
    if (line.rfind("%%MatrixMarket", 0) != 0)
        throw ParseError("missing MatrixMarket banner", lineno);
    {
        std::istringstream hs(line);
        std::string banner, object, fmt, field, symmetry;
        hs >> banner >> object >> fmt >> field >> symmetry;
        if (object != "matrix" || fmt != "coordinate" || field != "real" ||
            symmetry != "general")
            throw ParseError("unsupported MatrixMarket type: " + line, lineno);
    }

    // one comment block allowed
    int rows = 0, cols = 0;
    long long nnz = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError("missing size line", lineno + 1);
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> nnz))
            throw ParseError("malformed size line: " + line, lineno);
        break;
    }
    if (rows != cols) throw ParseError("matrix must be square", lineno);

    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (long long k = 0; k < nnz; ++k) {
        if (!std::getline(in, line))
            throw ParseError("entry count mismatch: expected " +
                                 std::to_string(nnz) + " entries, got " +
                                 std::to_string(k),
                             lineno + 1);
        ++lineno;
        std::istringstream ss(line);
        int i, j;
        double v;
        if (!(ss >> i >> j >> v))
            throw ParseError("malformed entry: " + line, lineno);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("index out of range: " + line, lineno);
        entries.push_back({i - 1, j - 1, v});
    }
    // trailing non-blank data means the header undercounted
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw ParseError("entry count mismatch: extra data after " +
                                 std::to_string(nnz) + " entries",
                             lineno);
    }
    return RateMatrix(rows, entries);
}

void store_matrix(const RateMatrix& Q, const std::string& path,
                  const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open matrix file for writing: " + path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    for (const std::string& c : comments) out << "% " << c << "\n";
    out << Q.dim() << " " << Q.dim() << " " << Q.nnz() << "\n";
    for (const Triplet& e : Q.entries())
        out << e.row + 1 << " " << e.col + 1 << " " << format_full(e.value) << "\n";
    if (!out) throw std::runtime_error("write failure: " + path);
}

std::vector<double> load_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open vector file: " + path);
    std::vector<double> v;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const char* begin = line.data();
        const char* end = line.data() + line.size();
        double x;
        auto res = std::from_chars(begin, end, x);
        if (res.ec != std::errc{})
            throw ParseError("malformed number: " + line, lineno);
        v.push_back(x);
    }
    return v;
}

void store_vector(const std::vector<double>& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open vector file for writing: " + path);
    for (double x : v) out << format_full(x) << "\n";
    if (!out) throw std::runtime_error("write failure: " + path);
}

}  // namespace uniexp
