#pragma once

#include <vector>

#include "wedgelift/errors.hpp"
#include "wedgelift/quad.hpp"
#include "wedgelift/rational.hpp"
#include "wedgelift/witt.hpp"

namespace wedgelift {

/// Ring hooks the generic linear algebra needs. "Unit" means invertible in
/// the coefficient ring: nonzero over a field, unit residue over a Witt ring.
template <class S>
struct ring_traits;

template <>
struct ring_traits<Rat> {
    static Rat zero_like(const Rat&) { return Rat(0); }
    static Rat one_like(const Rat&) { return Rat(1); }
    static bool is_zero(const Rat& x) { return x == 0; }
    static bool is_unit(const Rat& x) { return x != 0; }
    static Rat inverse(const Rat& x) {
        if (x == 0) fail(errc::singular_input, "division by zero");
        return Rat(1) / x;
    }
};

template <>
struct ring_traits<QuadScalar> {
    static QuadScalar zero_like(const QuadScalar& s) {
        return QuadScalar(s.d() == 0 ? QuadScalar(Rat(0))
                                     : QuadScalar(s.d(), Rat(0), Rat(0)));
    }
    static QuadScalar one_like(const QuadScalar& s) {
        return s.d() == 0 ? QuadScalar(Rat(1))
                          : QuadScalar(s.d(), Rat(1), Rat(0));
    }
    static bool is_zero(const QuadScalar& x) { return x.is_zero(); }
    static bool is_unit(const QuadScalar& x) { return !x.is_zero(); }
    static QuadScalar inverse(const QuadScalar& x) { return x.inverse(); }
};

template <>
struct ring_traits<WittScalar> {
    static WittScalar zero_like(const WittScalar& s) {
        return WittScalar::zero(s.ring());
    }
    static WittScalar one_like(const WittScalar& s) {
        return WittScalar::one(s.ring());
    }
    static bool is_zero(const WittScalar& x) { return x.is_zero(); }
    static bool is_unit(const WittScalar& x) { return x.is_unit(); }
    static WittScalar inverse(const WittScalar& x) { return x.inverse(); }
};

/// Small dense matrix with exact entries. Everything in the toolkit is 4x4,
/// 6x6 or 8x8, so this favors clarity over blocking tricks; the exact scalar
/// arithmetic dominates anyway.
template <class S>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols, const S& fill)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), fill) {}

    static Matrix identity(int n, const S& one) {
        Matrix m(n, n, ring_traits<S>::zero_like(one));
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& at(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const S& at(int i, int j) const {
        return a_[static_cast<size_t>(i * cols_ + j)];
    }
    const std::vector<S>& data() const { return a_; }
    std::vector<S>& data() { return a_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    int rows_, cols_;
    std::vector<S> a_;
};

template <class S>
Matrix<S> operator*(const Matrix<S>& A, const Matrix<S>& B) {
    if (A.cols() != B.rows()) fail(errc::bad_input, "matrix shape mismatch");
    S z = ring_traits<S>::zero_like(A.at(0, 0));
    Matrix<S> C(A.rows(), B.cols(), z);
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            const S& aik = A.at(i, k);
            if (ring_traits<S>::is_zero(aik)) continue;
            for (int j = 0; j < B.cols(); ++j)
                C.at(i, j) = C.at(i, j) + aik * B.at(k, j);
        }
    return C;
}

template <class S>
Matrix<S> operator+(const Matrix<S>& A, const Matrix<S>& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        fail(errc::bad_input, "matrix shape mismatch");
    Matrix<S> C = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C.at(i, j) = A.at(i, j) + B.at(i, j);
    return C;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& A, const Matrix<S>& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        fail(errc::bad_input, "matrix shape mismatch");
    Matrix<S> C = A;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) C.at(i, j) = A.at(i, j) - B.at(i, j);
    return C;
}

template <class S>
Matrix<S> operator-(const Matrix<S>& A) {
    Matrix<S> C = A;
    for (auto& x : C.data()) x = -x;
    return C;
}

template <class S>
Matrix<S> operator*(const S& c, const Matrix<S>& A) {
    Matrix<S> C = A;
    for (auto& x : C.data()) x = c * x;
    return C;
}

template <class S>
Matrix<S> transpose(const Matrix<S>& A) {
    Matrix<S> T(A.cols(), A.rows(), A.at(0, 0));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) T.at(j, i) = A.at(i, j);
    return T;
}

template <class S>
std::vector<S> mat_apply(const Matrix<S>& A, const std::vector<S>& v) {
    if (A.cols() != static_cast<int>(v.size()))
        fail(errc::bad_input, "matrix/vector shape mismatch");
    S z = ring_traits<S>::zero_like(A.at(0, 0));
    std::vector<S> w(static_cast<size_t>(A.rows()), z);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            w[static_cast<size_t>(i)] =
                w[static_cast<size_t>(i)] + A.at(i, j) * v[static_cast<size_t>(j)];
    return w;
}

template <class S>
bool is_identity(const Matrix<S>& A) {
    if (A.rows() != A.cols()) return false;
    S one = ring_traits<S>::one_like(A.at(0, 0));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            if (i == j ? !(A.at(i, j) == one)
                       : !ring_traits<S>::is_zero(A.at(i, j)))
                return false;
        }
    return true;
}

template <class S>
bool is_zero_matrix(const Matrix<S>& A) {
    for (const auto& x : A.data())
        if (!ring_traits<S>::is_zero(x)) return false;
    return true;
}

/// Determinant by elimination on unit pivots. Over a field this is the plain
/// determinant; over a Witt ring it requires the matrix to have unit
/// determinant structure (every pivot a unit) and returns zero_like when the
/// residue matrix is singular, which is all the callers need.
template <class S>
S det(const Matrix<S>& A) {
    if (A.rows() != A.cols()) fail(errc::bad_input, "det of non-square matrix");
    int n = A.rows();
    Matrix<S> M = A;
    S result = ring_traits<S>::one_like(A.at(0, 0));
    S zero = ring_traits<S>::zero_like(A.at(0, 0));
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (ring_traits<S>::is_unit(M.at(r, col))) { piv = r; break; }
        if (piv < 0) {
            // No unit pivot left. Over a field every nonzero entry is a unit,
            // so the column is zero below and the determinant vanishes.
            bool all_zero = true;
            for (int r = col; r < n; ++r)
                if (!ring_traits<S>::is_zero(M.at(r, col))) all_zero = false;
            if (all_zero) return zero;
            fail(errc::singular_input, "det: no unit pivot at finite precision");
        }
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(col, j));
            result = -result;
        }
        result = result * M.at(col, col);
        S inv = ring_traits<S>::inverse(M.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (ring_traits<S>::is_zero(M.at(r, col))) continue;
            S f = M.at(r, col) * inv;
            for (int j = col; j < n; ++j)
                M.at(r, j) = M.at(r, j) - f * M.at(col, j);
        }
    }
    return result;
}

/// Gauss-Jordan inverse on unit pivots; throws singular_input when the
/// matrix is not invertible over the coefficient ring.
template <class S>
Matrix<S> inverse(const Matrix<S>& A) {
    if (A.rows() != A.cols()) fail(errc::bad_input, "inverse of non-square");
    int n = A.rows();
    Matrix<S> M = A;
    Matrix<S> R = Matrix<S>::identity(n, ring_traits<S>::one_like(A.at(0, 0)));
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (ring_traits<S>::is_unit(M.at(r, col))) { piv = r; break; }
        if (piv < 0) fail(errc::singular_input, "matrix not invertible");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(piv, j), M.at(col, j));
                std::swap(R.at(piv, j), R.at(col, j));
            }
        S inv = ring_traits<S>::inverse(M.at(col, col));
        for (int j = 0; j < n; ++j) {
            M.at(col, j) = inv * M.at(col, j);
            R.at(col, j) = inv * R.at(col, j);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || ring_traits<S>::is_zero(M.at(r, col))) continue;
            S f = M.at(r, col);
            for (int j = 0; j < n; ++j) {
                M.at(r, j) = M.at(r, j) - f * M.at(col, j);
                R.at(r, j) = R.at(r, j) - f * R.at(col, j);
            }
        }
    }
    return R;
}

/// Rank as the number of unit pivots found by elimination. Over a field this
/// is the usual rank; over a Witt ring it is the rank of the residue matrix.
template <class S>
int unit_rank(const Matrix<S>& A) {
    Matrix<S> M = A;
    int rank = 0;
    int rows = M.rows(), cols = M.cols();
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (ring_traits<S>::is_unit(M.at(r, col))) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < cols; ++j) std::swap(M.at(piv, j), M.at(row, j));
        S inv = ring_traits<S>::inverse(M.at(row, col));
        for (int r = row + 1; r < rows; ++r) {
            if (ring_traits<S>::is_zero(M.at(r, col))) continue;
            S f = M.at(r, col) * inv;
            for (int j = col; j < cols; ++j)
                M.at(r, j) = M.at(r, j) - f * M.at(row, j);
        }
        ++rank;
        ++row;
    }
    return rank;
}

/// Solves A x = y over a field for invertible square A.
template <class S>
std::vector<S> solve(const Matrix<S>& A, const std::vector<S>& y) {
    return mat_apply(inverse(A), y);
}

using MatQ = Matrix<Rat>;
using MatQuad = Matrix<QuadScalar>;
using MatW = Matrix<WittScalar>;
using VecQ = std::vector<Rat>;

}  // namespace wedgelift
