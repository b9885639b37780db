#include "oscspin/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace oscspin {

namespace {
void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                    const char* what) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
}
}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs, "operator+=");
  kernels::active().axpy(size(), cplx(1.0, 0.0), rhs.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs, "operator-=");
  kernels::active().axpy(size(), cplx(-1.0, 0.0), rhs.data(), data());
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx a) {
  kernels::active().scale(size(), a, data());
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx a, const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs, "add_scaled");
  kernels::active().axpy(size(), a, rhs.data(), data());
  return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t(0.0, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : data_) m = std::max(m, std::abs(v));
  return m;
}

void ComplexMatrix::hermitize() {
  for (std::size_t i = 0; i < dim_; ++i) {
    (*this)(i, i) = cplx((*this)(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const cplx avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = avg;
      (*this)(j, i) = std::conj(avg);
    }
  }
}

bool ComplexMatrix::is_hermitian(double atol) const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > atol)
        return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out += b;
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out -= b;
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "operator*");
  ComplexMatrix out(a.dim());
  kernels::active().matmul(a.dim(), a.data(), b.data(), out.data());
  return out;
}

ComplexMatrix operator*(cplx a, const ComplexMatrix& m) {
  ComplexMatrix out = m;
  out *= a;
  return out;
}

ComplexMatrix operator*(double a, const ComplexMatrix& m) {
  return cplx(a, 0.0) * m;
}

void matmul_acc(cplx alpha, const ComplexMatrix& a, const ComplexMatrix& b,
                ComplexMatrix& c) {
  check_same_dim(a, b, "matmul_acc");
  check_same_dim(a, c, "matmul_acc");
  kernels::active().matmul_acc(a.dim(), alpha, a.data(), b.data(), c.data());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a * b;
  matmul_acc(cplx(-1.0, 0.0), b, a, out);
  return out;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a * b;
  matmul_acc(cplx(1.0, 0.0), b, a, out);
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double atol) {
  return max_abs_diff(a, b) <= atol;
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "trace_of_product");
  // tr(AB) = sum_ik A(i,k) B(k,i)
  cplx t(0.0, 0.0);
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
  return t;
}

BandedOperator::BandedOperator(std::size_t dim, int lower, int upper)
    : dim_(dim), lower_(lower), upper_(upper) {
  if (lower < 0 || upper < 0)
    throw DomainError("BandedOperator: negative bandwidth");
  band_.assign(dim_ * width(), cplx(0.0, 0.0));
}

BandedOperator BandedOperator::from_dense(const ComplexMatrix& m,
                                          double atol) {
  const std::size_t n = m.dim();
  int lower = 0, upper = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(m(i, j)) > atol) {
        const int off = static_cast<int>(j) - static_cast<int>(i);
        lower = std::min(lower, off);
        upper = std::max(upper, off);
      }
  BandedOperator b(n, -lower, upper);
  for (std::size_t i = 0; i < n; ++i) {
    const int jmin = std::max(0, static_cast<int>(i) + lower);
    const int jmax =
        std::min(static_cast<int>(n) - 1, static_cast<int>(i) + upper);
    for (int j = jmin; j <= jmax; ++j)
      b.at(i, j - static_cast<int>(i)) = m(i, static_cast<std::size_t>(j));
  }
  return b;
}

ComplexMatrix BandedOperator::to_dense() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const int jmin = std::max(0, static_cast<int>(i) - lower_);
    const int jmax =
        std::min(static_cast<int>(dim_) - 1, static_cast<int>(i) + upper_);
    for (int j = jmin; j <= jmax; ++j)
      out(i, static_cast<std::size_t>(j)) = at(i, j - static_cast<int>(i));
  }
  return out;
}

void BandedOperator::apply_left(cplx alpha, const ComplexMatrix& x,
                                ComplexMatrix& y) const {
  if (x.dim() != dim_ || y.dim() != dim_)
    throw DimensionError("BandedOperator::apply_left: dimension mismatch");
  const auto& ops = kernels::active();
  const std::size_t n = dim_;
  for (std::size_t i = 0; i < n; ++i) {
    const int kmin = std::max(0, static_cast<int>(i) - lower_);
    const int kmax =
        std::min(static_cast<int>(n) - 1, static_cast<int>(i) + upper_);
    for (int k = kmin; k <= kmax; ++k) {
      const cplx bik = at(i, k - static_cast<int>(i));
      if (bik == cplx(0.0, 0.0)) continue;
      ops.axpy(n, alpha * bik, x.data() + static_cast<std::size_t>(k) * n,
               y.data() + i * n);
    }
  }
}

void BandedOperator::apply_right(cplx alpha, const ComplexMatrix& x,
                                 ComplexMatrix& y) const {
  if (x.dim() != dim_ || y.dim() != dim_)
    throw DimensionError("BandedOperator::apply_right: dimension mismatch");
  const std::size_t n = dim_;
  // y(i, j) += alpha * x(i, k) * B(k, j); row-wise so all accesses stream.
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* xrow = x.data() + i * n;
    cplx* yrow = y.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx c = alpha * xrow[k];
      if (c == cplx(0.0, 0.0)) continue;
      const int jmin = std::max(0, static_cast<int>(k) - lower_);
      const int jmax =
          std::min(static_cast<int>(n) - 1, static_cast<int>(k) + upper_);
      for (int j = jmin; j <= jmax; ++j)
        yrow[j] += c * at(k, j - static_cast<int>(k));
    }
  }
}

}  // namespace oscspin
