#pragma once

#include <optional>
#include <vector>

#include "gkz/numbers.hpp"

namespace gkz {

template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<T>>& rows) {
        int r = int(rows.size());
        int c = r ? int(rows[0].size()) : 0;
        Mat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
        return m;
    }

    static Mat from_columns(const std::vector<std::vector<T>>& cols) {
        int c = int(cols.size());
        int r = c ? int(cols[0].size()) : 0;
        Mat m(r, c);
        for (int j = 0; j < c; ++j)
            for (int i = 0; i < r; ++i) m(i, j) = cols[j][i];
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }

    std::vector<T> column(int j) const {
        std::vector<T> c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_column(int j, const std::vector<T>& c) {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

IntMat mul(const IntMat& a, const IntMat& b);
RatMat mul(const RatMat& a, const RatMat& b);
RatVec mul(const RatMat& a, const RatVec& v);
IntVec mul(const IntMat& a, const IntVec& v);
RatVec mul_rat(const IntMat& a, const RatVec& v);
RatMat to_rat(const IntMat& m);

int rank(const RatMat& m);
int rank(const IntMat& m);

// Solves m x = b exactly; nullopt when inconsistent. Free variables are set to 0,
// so the result is deterministic.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);
std::optional<RatVec> solve(const IntMat& m, const RatVec& b);

// Basis of { x : m x = 0 } over the rationals.
std::vector<RatVec> rational_kernel(const RatMat& m);

Int determinant(const IntMat& m);

// Column-style Hermite normal form of the column span of g: the returned matrix
// has one column per basis vector, pivot rows strictly increasing, positive
// pivots, and entries left of a pivot reduced to [0, pivot). Zero columns are
// dropped, which makes the result a canonical basis of the generated lattice.
// When transform is non-null it receives a unimodular V with g*V = [hnf | 0].
IntMat hnf_columns(const IntMat& g, IntMat* transform = nullptr);

struct SmithForm {
    IntMat u;  // rows x rows, unimodular
    IntMat s;  // diagonal, nonnegative, divisibility chain
    IntMat v;  // cols x cols, unimodular
};

// u * m * v = s.
SmithForm smith_normal_form(const IntMat& m);

// Exact inverse of a unimodular integer matrix.
IntMat inverse_unimodular(const IntMat& m);

// Basis (as columns) of { x in Z^c : m x = 0 }.
IntMat integer_kernel(const IntMat& m);

// Some integer c with generators * c = target, or nullopt. The choice is
// deterministic (free coordinates zero in the HNF transform).
std::optional<IntVec> integer_combination(const IntMat& generators, const IntVec& target);

}  // namespace gkz
