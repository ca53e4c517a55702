#include "uniexp/rate_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uniexp {

RateMatrix::RateMatrix(int d, const std::vector<Triplet>& entries) {
    if (d <= 0) throw std::invalid_argument("matrix dimension must be positive");

    std::vector<Triplet> sorted = entries;
    for (const Triplet& e : sorted) {
        if (e.row < 0 || e.row >= d || e.col < 0 || e.col >= d)
            throw std::invalid_argument("entry index out of range: (" +
                                        std::to_string(e.row) + "," +
                                        std::to_string(e.col) + ")");
        if (e.value == 0.0)
            throw std::invalid_argument("explicit zero entry at (" +
                                        std::to_string(e.row) + "," +
                                        std::to_string(e.col) + ")");
    }
    std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        if (sorted[k].row == sorted[k - 1].row && sorted[k].col == sorted[k - 1].col)
            throw std::invalid_argument("duplicate entry at (" +
                                        std::to_string(sorted[k].row) + "," +
                                        std::to_string(sorted[k].col) + ")");
    }

    csr_.d = d;
    csr_.row_ptr.assign(static_cast<std::size_t>(d) + 1, 0);
    csr_.col.reserve(sorted.size());
    csr_.val.reserve(sorted.size());
    diag_.assign(d, 0.0);
    for (const Triplet& e : sorted) {
        ++csr_.row_ptr[static_cast<std::size_t>(e.row) + 1];
        csr_.col.push_back(e.col);
        csr_.val.push_back(e.value);
        if (e.row == e.col) diag_[e.row] = e.value;
    }
    for (int i = 0; i < d; ++i) csr_.row_ptr[i + 1] += csr_.row_ptr[i];

    rho_ = 0.0;
    for (double q : diag_) rho_ = std::max(rho_, std::abs(q));
}

ValidationReport RateMatrix::validate(ValidationMode mode, double row_sum_tol) const {
    ValidationReport report;
    const int d = csr_.d;
    for (int i = 0; i < d; ++i) {
        double sum = 0.0, comp = 0.0;
        for (std::int64_t k = csr_.row_ptr[i]; k < csr_.row_ptr[i + 1]; ++k) {
            const double v = csr_.val[k];
            if (csr_.col[k] == i) {
                if (v > 0.0)
                    report.violations.push_back(
                        {Violation::Kind::positive_diagonal, i, i, v,
                         "positive diagonal at " + std::to_string(i)});
            } else if (v < 0.0) {
                report.violations.push_back(
                    {Violation::Kind::negative_offdiagonal, i, csr_.col[k], v,
                     "negative off-diagonal (" + std::to_string(i) + "," +
                         std::to_string(csr_.col[k]) + ")"});
            }
            // Kahan: rows mix one large negative with many small positives
            double y = v - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        const double scale = std::max(1.0, std::abs(diag_[i]));
        const bool bad = (mode == ValidationMode::conservative)
                             ? std::abs(sum) > row_sum_tol * scale
                             : sum > row_sum_tol * scale;
        if (bad)
            report.violations.push_back(
                {Violation::Kind::row_sum, i, -1, sum,
                 "row " + std::to_string(i) + " sums to " + std::to_string(sum)});
    }
    return report;
}

std::vector<double> RateMatrix::to_dense() const {
    std::vector<double> dense(static_cast<std::size_t>(csr_.d) * csr_.d, 0.0);
    for (int i = 0; i < csr_.d; ++i)
        for (std::int64_t k = csr_.row_ptr[i]; k < csr_.row_ptr[i + 1]; ++k)
            dense[static_cast<std::size_t>(i) * csr_.d + csr_.col[k]] = csr_.val[k];
    return dense;
}

std::vector<Triplet> RateMatrix::entries() const {
    std::vector<Triplet> out;
    out.reserve(csr_.col.size());
    for (int i = 0; i < csr_.d; ++i)
        for (std::int64_t k = csr_.row_ptr[i]; k < csr_.row_ptr[i + 1]; ++k)
            out.push_back({i, csr_.col[k], csr_.val[k]});
    return out;
}

ShiftedKernel shift(const RateMatrix& Q, double t) {
    const SparseCsr& q = Q.csr();
    ShiftedKernel out;
    out.rho = t * Q.rho();
    out.P.d = q.d;
    out.P.row_ptr.assign(static_cast<std::size_t>(q.d) + 1, 0);
    out.P.col.reserve(q.col.size());
    out.P.val.reserve(q.val.size());
    for (int i = 0; i < q.d; ++i) {
        bool diag_seen = false;
        auto push = [&](int col, double v) {
            out.P.col.push_back(col);
            out.P.val.push_back(v);
            ++out.P.row_ptr[static_cast<std::size_t>(i) + 1];
        };
        for (std::int64_t k = q.row_ptr[i]; k < q.row_ptr[i + 1]; ++k) {
            // rows with no stored diagonal (absorbing states) still gain rho
            if (!diag_seen && q.col[k] > i && out.rho != 0.0) {
                push(i, out.rho);
                diag_seen = true;
            }
            double v = t * q.val[k];
            if (q.col[k] == i) {
                diag_seen = true;
                v += out.rho;
                if (v == 0.0) continue;  // keep structural zero off storage
            }
            push(q.col[k], v);
        }
        if (!diag_seen && out.rho != 0.0) push(i, out.rho);
    }
    for (int i = 0; i < q.d; ++i) out.P.row_ptr[i + 1] += out.P.row_ptr[i];
    return out;
}

void left_multiply(std::span<const double> v, const SparseCsr& M,
                   std::span<double> out) {
    if (static_cast<int>(v.size()) != M.d || static_cast<int>(out.size()) != M.d)
        throw std::invalid_argument("left_multiply: dimension mismatch");
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < M.d; ++i) {
        const double vi = v[i];
        if (vi == 0.0) continue;
        for (std::int64_t k = M.row_ptr[i]; k < M.row_ptr[i + 1]; ++k)
            out[M.col[k]] += vi * M.val[k];
    }
}

std::vector<double> left_multiply(const std::vector<double>& v, const SparseCsr& M) {
    std::vector<double> out(M.d);
    left_multiply(std::span<const double>(v), M, std::span<double>(out));
    return out;
}

std::vector<double> left_multiply(const std::vector<double>& v, const RateMatrix& Q) {
    return left_multiply(v, Q.csr());
}

SparsityStats sparsity_stats(const RateMatrix& Q) {
    SparsityStats s;
    s.d = Q.dim();
    s.nnz = Q.nnz();
    std::int64_t positive = 0;
    for (double v : Q.csr().val)
        if (v > 0.0) ++positive;
    s.r = static_cast<double>(positive) / s.d;
    return s;
}

double l1_norm(std::span<const double> v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double y = std::abs(x) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double vector_sum(std::span<const double> v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace uniexp
