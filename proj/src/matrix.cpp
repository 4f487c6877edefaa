#include "tritangle/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "tritangle/errors.hpp"

namespace tritangle {

namespace {

bool supported_dim(std::size_t n) { return n == 1 || n == 2 || n == 4 || n == 8; }

void require_dims(std::size_t rows, std::size_t cols) {
    if (!supported_dim(rows) || !supported_dim(cols)) {
        throw SizeError("unsupported matrix shape " + std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.finite()) throw ContractError(std::string(what) + ": non-finite entry");
}

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kSingularClamp = 1e-13;

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_dims(rows, cols);
    data_.assign(rows * cols, cplx{});
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows.size() ? rows.begin()->size() : 0;
    require_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw SizeError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::column(std::span<const cplx> v) {
    Matrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
}

Matrix Matrix::projector(std::span<const cplx> v) {
    Matrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Matrix Matrix::conjugate() const {
    Matrix m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
}

cplx Matrix::trace() const {
    if (!square()) throw SizeError("trace of a non-square matrix");
    cplx t{};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double Matrix::frobenius() const noexcept {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool Matrix::finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw SizeError("shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(cplx s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw SizeError("shape mismatch in product");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

namespace pauli {
Matrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
Matrix y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
Matrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

Matrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{r, r}, {r, -r}};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim) {
        throw SizeError("kron result " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds 8");
    }
    require_finite(a, "kron");
    require_finite(b, "kron");
    Matrix c(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return c;
}

Matrix partial_trace(const Matrix& rho, std::span<const int> keep, int total_qubits) {
    if (total_qubits < 1 || total_qubits > 3) throw SizeError("partial_trace supports 1..3 qubits");
    const std::size_t dim = std::size_t{1} << total_qubits;
    if (rho.rows() != dim || rho.cols() != dim) throw SizeError("partial_trace: rho is not 2^n x 2^n");
    require_finite(rho, "partial_trace");

    unsigned keep_mask = 0;
    for (int q : keep) {
        if (q < 1 || q > total_qubits) throw SizeError("partial_trace: qubit index out of range");
        const unsigned bit = 1u << (total_qubits - q);
        if (keep_mask & bit) throw SizeError("partial_trace: repeated qubit index");
        keep_mask |= bit;
    }
    const unsigned all = static_cast<unsigned>(dim - 1);
    if (keep_mask == 0 || keep_mask == all) throw SizeError("partial_trace: keep must be a nonempty proper subset");

    // Compress the kept bits of a full index into an output index.
    auto kept_index = [&](unsigned idx) {
        unsigned out = 0;
        for (int b = total_qubits - 1; b >= 0; --b) {
            if (keep_mask & (1u << b)) out = (out << 1) | ((idx >> b) & 1u);
        }
        return out;
    };

    const std::size_t out_dim = std::size_t{1} << std::popcount(keep_mask);
    Matrix out(out_dim, out_dim);
    const unsigned traced = all & ~keep_mask;
    for (unsigned i = 0; i < dim; ++i)
        for (unsigned j = 0; j < dim; ++j)
            if ((i & traced) == (j & traced)) out(kept_index(i), kept_index(j)) += rho(i, j);
    return out;
}

double hermiticity_defect(const Matrix& h) {
    if (!h.square()) throw SizeError("hermiticity of a non-square matrix");
    double d = 0.0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = i; j < h.cols(); ++j) d = std::max(d, std::abs(h(i, j) - std::conj(h(j, i))));
    return d;
}

HermEig herm_eigh(const Matrix& h) {
    if (!h.square()) throw SizeError("herm_eigh: non-square input");
    require_finite(h, "herm_eigh");
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) {
        throw ContractError("herm_eigh: input not Hermitian (defect " + std::to_string(defect) + ")");
    }

    const std::size_t n = h.rows();
    Matrix a = (h + h.adjoint()) * 0.5;
    Matrix v = Matrix::identity(n);
    const double scale = std::max(1.0, a.frobenius());

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() >= kJacobiTol * scale; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(a(p, q));
                if (g == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double zeta = (aqq - app) / (2.0 * g);
                double t;
                if (std::abs(zeta) > 1e150) {
                    t = 0.5 / zeta;
                } else {
                    t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx e = a(p, q) / g;
                const cplx jpq = s * e;               // J(p,q)
                const cplx jqp = -s * std::conj(e);   // J(q,p)

                // a <- a·J
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * c + arq * jqp;
                    a(r, q) = arp * jpq + arq * c;
                }
                // a <- J†·a
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc + std::conj(jqp) * aqc;
                    a(q, col) = std::conj(jpq) * apc + c * aqc;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // v <- v·J
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp * c + vrq * jqp;
                    v(r, q) = vrp * jpq + vrq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermEig out{std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> herm_eigvals(const Matrix& h) { return herm_eigh(h).values; }

Svd2 svd2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw SizeError("svd2 requires a 2x2 matrix");
    require_finite(m, "svd2");

    const HermEig eig = herm_eigh(m.adjoint() * m);
    const cplx v0[2] = {eig.vectors(0, 0), eig.vectors(1, 0)};
    const cplx v1[2] = {eig.vectors(0, 1), eig.vectors(1, 1)};
    const cplx w0[2] = {m(0, 0) * v0[0] + m(0, 1) * v0[1], m(1, 0) * v0[0] + m(1, 1) * v0[1]};
    const cplx w1[2] = {m(0, 0) * v1[0] + m(0, 1) * v1[1], m(1, 0) * v1[0] + m(1, 1) * v1[1]};

    Svd2 out{Matrix::identity(2), {0.0, 0.0}, eig.vectors};
    const double s0 = std::hypot(std::abs(w0[0]), std::abs(w0[1]));
    if (s0 < kSingularClamp) return out;

    const cplx u0[2] = {w0[0] / s0, w0[1] / s0};
    // Unit vector orthogonal to u0; its phase is fixed so that <u1|m|v1> >= 0.
    const cplx perp[2] = {-std::conj(u0[1]), std::conj(u0[0])};
    const cplx z = std::conj(perp[0]) * w1[0] + std::conj(perp[1]) * w1[1];
    double s1 = std::abs(z);
    const cplx phase = s1 < kSingularClamp ? cplx(1.0) : z / s1;
    if (s1 < kSingularClamp) s1 = 0.0;

    out.u = {{u0[0], perp[0] * phase}, {u0[1], perp[1] * phase}};
    out.s = {s0, std::min(s1, s0)};
    return out;
}

std::vector<double> singular_values(const Matrix& m) {
    require_finite(m, "singular_values");
    Matrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    auto dot = [&](std::size_t p, std::size_t q) {
        cplx s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::conj(a(r, p)) * a(r, q);
        return s;
    };
    // One-sided (Hestenes) Jacobi: rotate column pairs until they are mutually
    // orthogonal; the column norms are then the singular values.
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p)
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double alpha = dot(p, p).real(), beta = dot(q, q).real();
                const cplx gamma = dot(p, q);
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const cplx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t), s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const cplx ap = a(r, p), aq = a(r, q) * std::conj(phase);
                    a(r, p) = c * ap - s * aq;
                    a(r, q) = (s * ap + c * aq) * phase;
                }
            }
        if (!rotated) break;
    }
    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) sv[c] = std::sqrt(dot(c, c).real());
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

cplx det2(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw SizeError("det2 requires a 2x2 matrix");
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

}  // namespace tritangle
