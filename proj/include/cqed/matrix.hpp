#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cqed {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
///
/// Sized for the small Hilbert spaces used here (4, 8, and the 16/64
/// superoperators). Value type; all operations return new matrices.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-wise initializer, e.g. {{0, -1i}, {1i, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |i><j| in dimension dim.
  static ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j);
  /// |psi><psi|.
  static ComplexMatrix projector(std::span<const Complex> psi);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;
  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  /// Largest |A_ij - conj(A_ji)|.
  double hermiticity_violation() const noexcept;
  /// (A + A^dagger) / 2.
  ComplexMatrix hermitian_part() const;
  std::vector<double> real_diagonal() const;

  /// Elementwise comparison with an explicit absolute tolerance.
  bool approx_equal(const ComplexMatrix& other, double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s) noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

/// Frobenius norm of (a - b).
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product; index of a varies slowest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tensor bipartition (dA, dB) of a dA*dB dimensional space.
struct Split {
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t total() const noexcept { return dim_a * dim_b; }
  friend bool operator==(const Split&, const Split&) = default;
};

enum class Side { A, B };

/// Reduced matrix on the kept side. Works on any operator, not only states.
ComplexMatrix partial_trace(const ComplexMatrix& m, Split split, Side keep);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// |0><1|: lowering operator of a two-level factor.
ComplexMatrix lowering();
}  // namespace pauli

}  // namespace cqed
