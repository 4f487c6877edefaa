#include "tritangle/density.hpp"

#include <cmath>
#include <string>

#include "tritangle/errors.hpp"

namespace tritangle {

namespace {
constexpr double kDensityTol = 1e-10;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (!m_.square() || (m_.rows() != 2 && m_.rows() != 4)) {
        throw ContractError("density matrix must be 2x2 or 4x4");
    }
    if (!m_.finite()) throw ContractError("density matrix has non-finite entries");
    const double defect = hermiticity_defect(m_);
    if (defect > kDensityTol) throw ContractError("density matrix not Hermitian (defect " + std::to_string(defect) + ")");
    const cplx tr = m_.trace();
    if (std::abs(tr - 1.0) > kDensityTol) {
        throw ContractError("density matrix trace " + std::to_string(tr.real()) + " != 1");
    }
    const auto ev = herm_eigvals(m_);
    if (ev.back() < -kDensityTol) {
        throw ContractError("density matrix has negative eigenvalue " + std::to_string(ev.back()));
    }
}

DensityMatrix DensityMatrix::from_pure(std::span<const cplx> amps) { return DensityMatrix(Matrix::projector(amps)); }

}  // namespace tritangle
