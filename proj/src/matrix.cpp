#include "gkz/matrix.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "gkz/errors.hpp"

namespace gkz {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto ok_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!ok_int(s)) throw std::invalid_argument("bad rational literal: " + s);
        return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!ok_int(num) || !ok_int(den) || Int(den) == 0)
        throw std::invalid_argument("bad rational literal: " + s);
    return Rat(Int(num), Int(den));
}

IntMat mul(const IntMat& a, const IntMat& b) {
    IntMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatMat mul(const RatMat& a, const RatMat& b) {
    RatMat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rat& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RatVec mul(const RatMat& a, const RatVec& v) {
    RatVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

IntVec mul(const IntMat& a, const IntVec& v) {
    IntVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

RatVec mul_rat(const IntMat& a, const RatVec& v) {
    RatVec r(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r[i] += Rat(a(i, j)) * v[j];
    return r;
}

RatMat to_rat(const IntMat& m) {
    RatMat r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

namespace {

// Row echelon over Q; returns pivot columns. Reduces m in place.
std::vector<int> echelon(RatMat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        Rat inv = m(r, c);
        for (int j = c; j < m.cols(); ++j) m(r, j) /= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(const RatMat& m) {
    RatMat t = m;
    return int(echelon(t).size());
}

int rank(const IntMat& m) { return rank(to_rat(m)); }

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
    RatMat aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<int> pivots = echelon(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    RatVec x(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), m.cols());
    return x;
}

std::optional<RatVec> solve(const IntMat& m, const RatVec& b) { return solve(to_rat(m), b); }

std::vector<RatVec> rational_kernel(const RatMat& m) {
    RatMat t = m;
    std::vector<int> pivots = echelon(t);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        RatVec v(m.cols(), Rat(0));
        v[c] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -t(int(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

Int determinant(const IntMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    // Fraction-free via rational elimination on a copy; result is integral.
    RatMat t = to_rat(m);
    Rat det = 1;
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (t(i, c) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(t(p, j), t(c, j));
            det = -det;
        }
        det *= t(c, c);
        Rat inv = t(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (t(i, c) == 0) continue;
            Rat f = t(i, c) / inv;
            for (int j = c; j < n; ++j) t(i, j) -= f * t(c, j);
        }
    }
    return numerator(det);
}

IntMat hnf_columns(const IntMat& g, IntMat* transform) {
    IntMat m = g;
    int rows = m.rows(), cols = m.cols();
    IntMat v = IntMat::identity(cols);

    auto colop_swap = [&](int a, int b) {
        for (int i = 0; i < rows; ++i) std::swap(m(i, a), m(i, b));
        for (int i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
    };
    auto colop_neg = [&](int a) {
        for (int i = 0; i < rows; ++i) m(i, a) = -m(i, a);
        for (int i = 0; i < cols; ++i) v(i, a) = -v(i, a);
    };
    // col[a] -= f * col[b]
    auto colop_axpy = [&](int a, const Int& f, int b) {
        for (int i = 0; i < rows; ++i) m(i, a) -= f * m(i, b);
        for (int i = 0; i < cols; ++i) v(i, a) -= f * v(i, b);
    };

    int c = 0;
    for (int r = 0; r < rows && c < cols; ++r) {
        // gcd-eliminate row r across columns c..cols-1
        while (true) {
            int nz = -1;
            for (int j = c; j < cols; ++j)
                if (m(r, j) != 0) { nz = j; break; }
            if (nz < 0) break;
            // find column with minimal |entry| in row r
            int best = -1;
            for (int j = c; j < cols; ++j) {
                if (m(r, j) == 0) continue;
                if (best < 0 || abs(m(r, j)) < abs(m(r, best))) best = j;
            }
            if (best != c) colop_swap(c, best);
            if (m(r, c) < 0) colop_neg(c);
            bool clean = true;
            for (int j = c + 1; j < cols; ++j) {
                if (m(r, j) == 0) continue;
                Int f = m(r, j) / m(r, c);  // floor toward zero is fine; loop re-runs
                colop_axpy(j, f, c);
                if (m(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(r, c) != 0) {
            // reduce earlier columns against this pivot
            for (int j = 0; j < c; ++j) {
                Int q = m(r, j) / m(r, c);
                if (m(r, j) - q * m(r, c) < 0) q -= 1;  // floor division
                if (q != 0) colop_axpy(j, q, c);
            }
            ++c;
        }
    }
    int nbasis = c;
    // move basis columns first (they already are), drop zero columns
    IntMat basis(rows, nbasis);
    for (int j = 0; j < nbasis; ++j)
        for (int i = 0; i < rows; ++i) basis(i, j) = m(i, j);
    if (transform) *transform = v;
    return basis;
}

namespace {

void rowop_swap(IntMat& m, IntMat& u, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
    for (int j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
}
void rowop_neg(IntMat& m, IntMat& u, int a) {
    for (int j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
    for (int j = 0; j < u.cols(); ++j) u(a, j) = -u(a, j);
}
void rowop_axpy(IntMat& m, IntMat& u, int a, const Int& f, int b) {  // row[a] -= f*row[b]
    for (int j = 0; j < m.cols(); ++j) m(a, j) -= f * m(b, j);
    for (int j = 0; j < u.cols(); ++j) u(a, j) -= f * u(b, j);
}
void colop_swap(IntMat& m, IntMat& v, int a, int b) {
    for (int i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
    for (int i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
}
void colop_axpy(IntMat& m, IntMat& v, int a, const Int& f, int b) {  // col[a] -= f*col[b]
    for (int i = 0; i < m.rows(); ++i) m(i, a) -= f * m(i, b);
    for (int i = 0; i < v.rows(); ++i) v(i, a) -= f * v(i, b);
}

}  // namespace

SmithForm smith_normal_form(const IntMat& input) {
    IntMat m = input;
    int rows = m.rows(), cols = m.cols();
    IntMat u = IntMat::identity(rows);
    IntMat v = IntMat::identity(cols);
    int n = std::min(rows, cols);

    for (int k = 0; k < n; ++k) {
        // move a minimal nonzero entry of the trailing block to (k,k)
        while (true) {
            int pi = -1, pj = -1;
            for (int i = k; i < rows; ++i)
                for (int j = k; j < cols; ++j) {
                    if (m(i, j) == 0) continue;
                    if (pi < 0 || abs(m(i, j)) < abs(m(pi, pj))) { pi = i; pj = j; }
                }
            if (pi < 0) break;  // trailing block zero
            if (pi != k) rowop_swap(m, u, k, pi);
            if (pj != k) colop_swap(m, v, k, pj);
            if (m(k, k) < 0) rowop_neg(m, u, k);
            bool again = false;
            for (int i = k + 1; i < rows; ++i) {
                if (m(i, k) == 0) continue;
                rowop_axpy(m, u, i, m(i, k) / m(k, k), k);
                if (m(i, k) != 0) again = true;
            }
            for (int j = k + 1; j < cols; ++j) {
                if (m(k, j) == 0) continue;
                colop_axpy(m, v, j, m(k, j) / m(k, k), k);
                if (m(k, j) != 0) again = true;
            }
            if (again) continue;
            // pivot must divide every entry of the trailing block
            bool divides = true;
            for (int i = k + 1; i < rows && divides; ++i)
                for (int j = k + 1; j < cols; ++j)
                    if (m(i, j) % m(k, k) != 0) {
                        rowop_axpy(m, u, k, Int(-1), i);  // row k += row i
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
    }
    SmithForm f{std::move(u), std::move(m), std::move(v)};
    return f;
}

IntMat integer_kernel(const IntMat& m) {
    // u m v = s diagonal; kernel of m is spanned by the columns of v past the rank
    SmithForm f = smith_normal_form(m);
    int r = 0;
    for (int i = 0; i < std::min(f.s.rows(), f.s.cols()); ++i)
        if (f.s(i, i) != 0) ++r;
    IntMat k(m.cols(), m.cols() - r);
    for (int j = r; j < m.cols(); ++j)
        for (int i = 0; i < m.cols(); ++i) k(i, j - r) = f.v(i, j);
    return k;
}

std::optional<IntVec> integer_combination(const IntMat& generators, const IntVec& target) {
    IntMat v;
    IntMat h = hnf_columns(generators, &v);
    if (h.cols() == 0) return is_zero_vec(target) ? std::optional<IntVec>(IntVec(std::size_t(generators.cols()), Int(0))) : std::nullopt;
    auto y = solve(h, to_rat(target));
    if (!y) return std::nullopt;
    IntVec yi(y->size());
    for (std::size_t i = 0; i < y->size(); ++i) {
        if (!is_integer((*y)[i])) return std::nullopt;
        yi[i] = numerator((*y)[i]);
    }
    // basis columns are generators * v[:, 0..r), so c = v[:, 0..r) * y
    IntVec c(std::size_t(generators.cols()), Int(0));
    for (int i = 0; i < generators.cols(); ++i)
        for (int j = 0; j < h.cols(); ++j) c[std::size_t(i)] += v(i, j) * yi[std::size_t(j)];
    return c;
}

IntMat inverse_unimodular(const IntMat& m) {
    int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
    RatMat a = to_rat(m);
    IntMat inv(n, n);
    for (int j = 0; j < n; ++j) {
        RatVec e(n, Rat(0));
        e[j] = 1;
        auto x = solve(a, e);
        if (!x) throw InternalInconsistency("inverse_unimodular: singular matrix");
        for (int i = 0; i < n; ++i) {
            if (!is_integer((*x)[i]))
                throw InternalInconsistency("inverse_unimodular: matrix is not unimodular");
            inv(i, j) = numerator((*x)[i]);
        }
    }
    return inv;
}

}  // namespace gkz
