#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "uniexp/matrix_io.hpp"
#include "uniexp/rate_matrix.hpp"

using namespace uniexp;

namespace {
RateMatrix two_state(double w = 1.0) {
    return RateMatrix(2, {{0, 0, -w}, {0, 1, w}, {1, 0, w}, {1, 1, -w}});
}
}  // namespace

TEST_SUITE("sparse_core") {

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(RateMatrix(2, {{0, 2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(RateMatrix(2, {{-1, 0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(RateMatrix(2, {{0, 1, 1.0}, {0, 1, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(RateMatrix(2, {{0, 1, 0.0}}), std::invalid_argument);
}

TEST_CASE("rho and diagonal") {
    const RateMatrix q(3, {{0, 0, -2.0}, {0, 1, 2.0}, {1, 1, -5.0}, {1, 2, 5.0}});
    CHECK(q.rho() == 5.0);
    CHECK(q.diagonal(0) == -2.0);
    CHECK(q.diagonal(2) == 0.0);
    CHECK(RateMatrix(3, {}).rho() == 0.0);
}

TEST_CASE("validate flags each violation kind") {
    const RateMatrix bad(2, {{0, 0, -1.0}, {0, 1, -0.5}, {1, 0, 1.0}, {1, 1, 0.25}});
    const auto rep = bad.validate(ValidationMode::conservative);
    CHECK_FALSE(rep.ok());
    bool neg = false, pos = false, row = false;
    for (const auto& v : rep.violations) {
        if (v.kind == Violation::Kind::negative_offdiagonal) neg = true;
        if (v.kind == Violation::Kind::positive_diagonal) pos = true;
        if (v.kind == Violation::Kind::row_sum) row = true;
    }
    CHECK(neg);
    CHECK(pos);
    CHECK(row);
}

TEST_CASE("validate modes") {
    const RateMatrix sub(2, {{0, 0, -2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, -1.0}});
    CHECK_FALSE(sub.validate(ValidationMode::conservative).ok());
    CHECK(sub.validate(ValidationMode::substochastic).ok());
    CHECK(two_state().validate(ValidationMode::conservative).ok());
}

TEST_CASE("shift removes the diagonal at t = 1") {
    const auto k = shift(two_state(3.0), 1.0);
    CHECK(k.rho == 3.0);
    // -3 + 3 on the diagonal vanishes exactly and is dropped
    CHECK(k.P.nnz() == 2);
    for (double v : k.P.val) CHECK(v == 3.0);
}

TEST_CASE("shift folds t") {
    const auto k = shift(two_state(2.0), 0.5);
    CHECK(k.rho == 1.0);
    for (double v : k.P.val) CHECK(v == 1.0);
}

TEST_CASE("left_multiply matches dense") {
    const RateMatrix q(3, {{0, 0, -1.0},
                           {0, 1, 1.0},
                           {1, 0, 0.5},
                           {1, 1, -0.75},
                           {1, 2, 0.25},
                           {2, 2, -0.0625},
                           {2, 0, 0.0625}});
    const std::vector<double> v{0.25, 0.5, 0.25};
    const auto got = left_multiply(v, q);
    const auto dense = q.to_dense();
    for (int j = 0; j < 3; ++j) {
        double want = 0.0;
        for (int i = 0; i < 3; ++i) want += v[i] * dense[i * 3 + j];
        CHECK(got[j] == doctest::Approx(want).epsilon(1e-15));
    }
    CHECK_THROWS_AS(left_multiply(std::vector<double>{1.0}, q), std::invalid_argument);
}

TEST_CASE("sparsity stats") {
    const auto st = sparsity_stats(two_state());
    CHECK(st.d == 2);
    CHECK(st.nnz == 4);
    CHECK(st.r == doctest::Approx(1.0));  // one positive off-diagonal per row
}

TEST_CASE("compensated sums") {
    std::vector<double> v(1000, 0.1);
    CHECK(vector_sum(v) == doctest::Approx(100.0).epsilon(1e-15));
    v[0] = -0.1;
    CHECK(l1_norm(v) == doctest::Approx(100.0).epsilon(1e-15));
}

}  // TEST_SUITE

TEST_SUITE("matrix_io") {

TEST_CASE("round trip preserves every entry bit-for-bit") {
    const RateMatrix q(3, {{0, 0, -1.0 / 3.0},
                           {0, 2, 1.0 / 3.0},
                           {1, 1, -2.7182818284590452},
                           {1, 0, 2.7182818284590452},
                           {2, 2, -1e-300},
                           {2, 1, 1e-300}});
    const auto path = std::filesystem::temp_directory_path() / "uniexp_rt.mtx";
    store_matrix(q, path.string(), {"round trip"});
    const RateMatrix back = load_matrix(path.string());
    REQUIRE(back.dim() == 3);
    REQUIRE(back.nnz() == q.nnz());
    const auto a = q.entries();
    const auto b = back.entries();
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].row == b[i].row);
        CHECK(a[i].col == b[i].col);
        CHECK(a[i].value == b[i].value);  // exact: 17 significant digits
    }
    std::filesystem::remove(path);
}

TEST_CASE("parse errors carry line numbers") {
    const auto path = std::filesystem::temp_directory_path() / "uniexp_bad.mtx";
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 2 2\n"
            << "1 1 -1.0\n";  // one entry missing
    }
    CHECK_THROWS_AS(load_matrix(path.string()), ParseError);
    {
        std::ofstream out(path);
        out << "%%MatrixMarket matrix coordinate real general\n"
            << "2 2 1\n"
            << "3 1 -1.0\n";  // index out of range
    }
    try {
        load_matrix(path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    {
        std::ofstream out(path);
        out << "%%MatrixMarket not-our-format\n2 2 0\n";
    }
    CHECK_THROWS_AS(load_matrix(path.string()), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("vector round trip") {
    const std::vector<double> v{1.0, 0.1, 1e-308, 12345.6789012345678};
    const auto path = std::filesystem::temp_directory_path() / "uniexp_v.vec";
    store_vector(v, path.string());
    const auto back = load_vector(path.string());
    REQUIRE(back.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(back[i] == v[i]);
    std::filesystem::remove(path);
}

}  // TEST_SUITE
