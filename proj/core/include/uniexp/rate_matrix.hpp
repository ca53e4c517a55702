#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uniexp {

// Coordinate entry used when assembling a matrix.
struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

enum class ValidationMode { conservative, substochastic };

struct Violation {
    enum class Kind { negative_offdiagonal, positive_diagonal, row_sum } kind;
    int row = 0;
    int col = 0;          // meaningful for negative_offdiagonal only
    double magnitude = 0.0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Compressed sparse rows, grouped so that a left action v^T M is a single
// pass over the stored entries.
struct SparseCsr {
    int d = 0;
    std::vector<std::int64_t> row_ptr;  // size d+1
    std::vector<int> col;
    std::vector<double> val;

    std::int64_t nnz() const { return static_cast<std::int64_t>(col.size()); }
};

// Sparse CTMC generator: nonnegative off-diagonals, nonpositive diagonal.
// Immutable after construction; zeros are not stored.
class RateMatrix {
public:
    // Throws std::invalid_argument on structural malformation
    // (index out of range, duplicate coordinate, explicit zero).
    RateMatrix(int d, const std::vector<Triplet>& entries);

    int dim() const { return csr_.d; }
    std::int64_t nnz() const { return csr_.nnz(); }
    const SparseCsr& csr() const { return csr_; }
    double diagonal(int i) const { return diag_[i]; }

    // max_i |Q_ii|; 0 for the zero matrix.
    double rho() const { return rho_; }

    ValidationReport validate(ValidationMode mode,
                              double row_sum_tol = 1e-12) const;

    // Dense d x d copy, row-major; test/debug helper for small matrices.
    std::vector<double> to_dense() const;

    std::vector<Triplet> entries() const;

    static constexpr const char* layout_tag = "csr";

private:
    SparseCsr csr_;
    std::vector<double> diag_;  // stored diagonal values (0 if absent)
    double rho_ = 0.0;
};

// P = t*Q + rho*I with rho = t*rho(Q); all stored entries >= 0.
// Exact-zero diagonal results are dropped from storage.
struct ShiftedKernel {
    SparseCsr P;
    double rho = 0.0;
};

ShiftedKernel shift(const RateMatrix& Q, double t = 1.0);

// out = v^T M, one pass over stored entries.
void left_multiply(std::span<const double> v, const SparseCsr& M,
                   std::span<double> out);
std::vector<double> left_multiply(const std::vector<double>& v,
                                  const SparseCsr& M);
std::vector<double> left_multiply(const std::vector<double>& v,
                                  const RateMatrix& Q);

struct SparsityStats {
    int d = 0;
    std::int64_t nnz = 0;
    double r = 0.0;  // positive stored entries per row
};
SparsityStats sparsity_stats(const RateMatrix& Q);

double l1_norm(std::span<const double> v);
double vector_sum(std::span<const double> v);  // compensated

}  // namespace uniexp
