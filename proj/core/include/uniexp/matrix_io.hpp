#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uniexp/rate_matrix.hpp"

namespace uniexp {

// Raised on malformed input files; carries a 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, long line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line(line) {}
    long line;
};

// Matrix Market "coordinate real general", 1-based indices,
// values written with 17 significant digits.
RateMatrix load_matrix(const std::string& path);
void store_matrix(const RateMatrix& Q, const std::string& path,
                  const std::vector<std::string>& comments = {});

// Plain text vectors: one decimal per line.
std::vector<double> load_vector(const std::string& path);
void store_vector(const std::vector<double>& v, const std::string& path);

std::string format_full(double x);  // round-trip decimal form

}  // namespace uniexp
