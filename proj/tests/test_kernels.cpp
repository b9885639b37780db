#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "oscspin/kernels.hpp"

using oscspin::kernels::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(dist(rng), dist(rng));
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("backend listing always includes scalar") {
  const auto backends = oscspin::kernels::available_backends();
  CHECK(!backends.empty());
  CHECK(backends.front() == "scalar");
}

TEST_CASE("scalar axpy and scale do complex arithmetic") {
  const auto& ops = oscspin::kernels::scalar_ops();
  std::vector<cplx> x{{1.0, 2.0}, {0.0, -1.0}};
  std::vector<cplx> y{{0.5, 0.0}, {1.0, 1.0}};
  ops.axpy(2, cplx(0.0, 1.0), x.data(), y.data());
  CHECK(std::abs(y[0] - cplx(-1.5, 1.0)) < 1e-15);
  CHECK(std::abs(y[1] - cplx(2.0, 1.0)) < 1e-15);
  ops.scale(2, cplx(2.0, 0.0), y.data());
  CHECK(std::abs(y[0] - cplx(-3.0, 2.0)) < 1e-15);
}

TEST_CASE("scalar matmul against hand-computed 2x2") {
  const auto& ops = oscspin::kernels::scalar_ops();
  // [[1, i], [0, 2]] * [[1, 0], [1, -i]] = [[1+i, 1], [2, -2i]]
  std::vector<cplx> a{{1, 0}, {0, 1}, {0, 0}, {2, 0}};
  std::vector<cplx> b{{1, 0}, {0, 0}, {1, 0}, {0, -1}};
  std::vector<cplx> valc(4);
  ops.matmul(2, a.data(), b.data(), valc.data());
  CHECK(std::abs(valc[0] - cplx(1, 1)) < 1e-15);
  CHECK(std::abs(valc[1] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(valc[2] - cplx(2, 0)) < 1e-15);
  CHECK(std::abs(valc[3] - cplx(0, -2)) < 1e-15);
}

#if defined(OSCSPIN_HAVE_AVX2)
TEST_CASE("avx2 backend matches scalar reference") {
  const auto backends = oscspin::kernels::available_backends();
  const bool has_avx2 =
      std::find(backends.begin(), backends.end(), "avx2") != backends.end();
  if (!has_avx2) return;  // cpu without avx2: nothing to compare

  const auto& sc = oscspin::kernels::scalar_ops();
  const auto& vx = oscspin::kernels::avx2_ops();
  std::mt19937 rng(99);

  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 33u, 64u}) {
    auto x = random_vec(n, rng);
    auto y1 = random_vec(n, rng);
    auto y2 = y1;
    const cplx alpha(0.7, -1.3);
    sc.axpy(n, alpha, x.data(), y1.data());
    vx.axpy(n, alpha, x.data(), y2.data());
    CHECK(max_diff(y1, y2) < 1e-13);

    auto s1 = x, s2 = x;
    sc.scale(n, alpha, s1.data());
    vx.scale(n, alpha, s2.data());
    CHECK(max_diff(s1, s2) < 1e-13);

    const cplx d1 = sc.dotc(n, x.data(), y1.data());
    const cplx d2 = vx.dotc(n, x.data(), y1.data());
    CHECK(std::abs(d1 - d2) < 1e-12 * (1.0 + std::abs(d1)));
  }

  for (std::size_t n : {1u, 2u, 5u, 16u, 31u, 48u}) {
    auto a = random_vec(n * n, rng);
    auto b = random_vec(n * n, rng);
    std::vector<cplx> c1(n * n), c2(n * n);
    sc.matmul(n, a.data(), b.data(), c1.data());
    vx.matmul(n, a.data(), b.data(), c2.data());
    CHECK(max_diff(c1, c2) < 1e-12 * n);

    auto acc1 = c1, acc2 = c1;
    const cplx alpha(-0.25, 0.5);
    sc.matmul_acc(n, alpha, a.data(), b.data(), acc1.data());
    vx.matmul_acc(n, alpha, a.data(), b.data(), acc2.data());
    CHECK(max_diff(acc1, acc2) < 1e-12 * n);
  }
}
#endif

TEST_CASE("force_backend round trip") {
  oscspin::kernels::force_backend("scalar");
  CHECK(std::string(oscspin::kernels::active().name) == "scalar");
  CHECK_THROWS_AS(oscspin::kernels::force_backend("no_such_backend"),
                  std::invalid_argument);
  oscspin::kernels::force_backend("auto");
}
