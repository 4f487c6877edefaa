#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tritangle {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;

/// Dense row-major complex matrix for the few sizes a three-qubit system
/// needs. Every dimension is 1, 2, 4 or 8; anything else is a SizeError.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const cplx> d);
    static Matrix column(std::span<const cplx> v);
    /// |v><v|
    static Matrix projector(std::span<const cplx> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> data() noexcept { return data_; }

    Matrix adjoint() const;
    Matrix transpose() const;
    Matrix conjugate() const;
    cplx trace() const;
    double max_abs() const noexcept;
    double frobenius() const noexcept;
    bool finite() const noexcept;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cplx s) noexcept;

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
    friend Matrix operator*(cplx s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

namespace pauli {
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

Matrix hadamard();

/// (a⊗b)[i·rb + k, j·cb + l] = a[i,j]·b[k,l]
Matrix kron(const Matrix& a, const Matrix& b);

/// Trace out every qubit not listed in `keep` (1-based, qubit 1 most
/// significant). Kept qubits stay in ascending order.
Matrix partial_trace(const Matrix& rho, std::span<const int> keep, int total_qubits);

/// max |h - h†|
double hermiticity_defect(const Matrix& h);

struct HermEig {
    std::vector<double> values;  // descending
    Matrix vectors;              // column k belongs to values[k]
};

/// Cyclic complex Jacobi. Throws ContractError when h is not Hermitian
/// within 1e-10.
HermEig herm_eigh(const Matrix& h);
std::vector<double> herm_eigvals(const Matrix& h);

struct Svd2 {
    Matrix u;
    std::array<double, 2> s{};  // s[0] >= s[1] >= 0
    Matrix v;                   // m = u · diag(s) · v†
};

Svd2 svd2(const Matrix& m);

/// Singular values in descending order (one-sided Jacobi); small values keep
/// their relative accuracy.
std::vector<double> singular_values(const Matrix& m);

cplx det2(const Matrix& m);

}  // namespace tritangle
