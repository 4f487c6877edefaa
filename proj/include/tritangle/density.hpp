#pragma once

#include <span>

#include "tritangle/matrix.hpp"

namespace tritangle {

/// One- or two-qubit density matrix. Construction checks that the matrix is
/// Hermitian (1e-10), has unit trace (1e-10) and no eigenvalue below -1e-10;
/// any violation is a ContractError.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m);

    static DensityMatrix from_pure(std::span<const cplx> amps);

    const Matrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.rows(); }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

private:
    Matrix m_;
};

}  // namespace tritangle
