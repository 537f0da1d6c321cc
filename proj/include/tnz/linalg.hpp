#ifndef TNZ_LINALG_HPP
#define TNZ_LINALG_HPP

#include "tnz/scalar.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace Eigen
{

// Eigen only needs the field operations; conjugation goes through
// tnz::adjoint_of, never through Eigen's adjoint(), which ignores it here.
template <> struct NumTraits<tnz::Scalar> : GenericNumTraits<tnz::Scalar> {
    using Real = tnz::Scalar;
    using NonInteger = tnz::Scalar;
    using Nested = tnz::Scalar;
    using Literal = tnz::Scalar;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 4,
        AddCost = 16,
        MulCost = 32,
    };

    static inline Real epsilon() { return tnz::Scalar(0); }
    static inline Real dummy_precision() { return tnz::Scalar(0); }
    static inline int digits10() { return 0; }
};

} // namespace Eigen

namespace tnz
{

template <typename S> using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S> using DenseVector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Matrix = DenseMatrix<Scalar>;
using Vector = DenseVector<Scalar>;

/// Exact conjugate transpose. Avoids relying on Eigen's conj dispatch for
/// non-std complex types.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> adjoint_of(const Eigen::MatrixBase<Derived>& m)
{
    using S = typename Derived::Scalar;
    DenseMatrix<S> out(m.cols(), m.rows());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out(c, r) = conj(m(r, c));
        }
    }
    return out;
}

template <typename A, typename B>
bool exactly_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (a(r, c) != b(r, c)) {
                return false;
            }
        }
    }
    return true;
}

template <typename Derived> bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m)
{
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

template <typename Derived> bool is_hermitian(const Eigen::MatrixBase<Derived>& m)
{
    return m.rows() == m.cols() && exactly_equal(m, adjoint_of(m));
}

/// Kronecker product a (x) b; a's index is the more significant one.
template <typename A, typename B>
DenseMatrix<typename A::Scalar> kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b)
{
    DenseMatrix<typename A::Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Row echelon form computed in place by exact Gauss-Jordan elimination.
/// Returns the pivot column of each non-zero row, in order.
template <typename S> std::vector<Eigen::Index> reduce_to_rref(DenseMatrix<S>& m)
{
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        if (pivot != row) {
            m.row(pivot).swap(m.row(row));
        }
        const S inv = m(row, col).inverse();
        for (Eigen::Index c = col; c < m.cols(); ++c) {
            m(row, c) *= inv;
        }
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) {
                continue;
            }
            const S factor = m(r, col);
            for (Eigen::Index c = col; c < m.cols(); ++c) {
                m(r, c) -= factor * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename Derived> Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m)
{
    DenseMatrix<typename Derived::Scalar> work = m;
    return static_cast<Eigen::Index>(reduce_to_rref(work).size());
}

template <typename Derived> bool has_full_column_rank(const Eigen::MatrixBase<Derived>& m)
{
    return exact_rank(m) == m.cols();
}

/// Any exact solution of a x = b (free variables set to zero), or nullopt
/// when the system is inconsistent.
template <typename A, typename B>
std::optional<DenseVector<typename A::Scalar>> solve_any(const Eigen::MatrixBase<A>& a,
                                                         const Eigen::MatrixBase<B>& b)
{
    using S = typename A::Scalar;
    DenseMatrix<S> aug(a.rows(), a.cols() + 1);
    aug.leftCols(a.cols()) = a;
    aug.col(a.cols()) = b;
    const auto pivots = reduce_to_rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) {
        return std::nullopt;
    }
    DenseVector<S> x = DenseVector<S>::Constant(a.cols(), S(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
    }
    return x;
}

} // namespace tnz

#endif // TNZ_LINALG_HPP
