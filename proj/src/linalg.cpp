#include "oscspin/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace oscspin::linalg {

namespace {

using EigenMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> map_of(const ComplexMatrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.dim()),
          static_cast<Eigen::Index>(m.dim())};
}

ComplexMatrix from_eigen(const EigenMat& e) {
  ComplexMatrix out(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return out;
}

double one_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  ComplexMatrix h = m;
  h.hermitize();
  Eigen::SelfAdjointEigenSolver<EigenMat> solver(map_of(h),
                                                 Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue_hermitian(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).front();
}

std::vector<cplx> complex_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<EigenMat> solver(map_of(m), false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("solve: dimension mismatch");
  Eigen::PartialPivLU<EigenMat> lu(map_of(a));
  EigenMat x = lu.solve(EigenMat(map_of(b)));
  return from_eigen(x);
}

ComplexMatrix expm(const ComplexMatrix& a) {
  // Higham's (13,13) coefficients; theta such that the truncation error of
  // the scaled Pade form stays at machine level.
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;

  const std::size_t n = a.dim();
  const double norm = one_norm(a);
  int squarings = 0;
  ComplexMatrix as = a;
  if (norm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    as *= cplx(std::ldexp(1.0, -squarings), 0.0);
  }

  const ComplexMatrix ident = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = as * as;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
  ComplexMatrix w = b[13] * a6;
  w.add_scaled(b[11], a4);
  w.add_scaled(b[9], a2);
  ComplexMatrix u = a6 * w;
  u.add_scaled(b[7], a6);
  u.add_scaled(b[5], a4);
  u.add_scaled(b[3], a2);
  u.add_scaled(b[1], ident);
  u = as * u;

  // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
  ComplexMatrix z = b[12] * a6;
  z.add_scaled(b[10], a4);
  z.add_scaled(b[8], a2);
  ComplexMatrix v = a6 * z;
  v.add_scaled(b[6], a6);
  v.add_scaled(b[4], a4);
  v.add_scaled(b[2], a2);
  v.add_scaled(b[0], ident);

  ComplexMatrix result = solve(v - u, u + v);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace oscspin::linalg
