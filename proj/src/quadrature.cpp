#include "oscspin/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace oscspin::quad {

namespace {

using cplx = std::complex<double>;

// 15-point Kronrod extension of 7-point Gauss (quadpack dqk15 constants).
const double kXgk[8] = {0.9914553711208126, 0.9491079123427585,
                        0.8648644233597691, 0.7415311855993944,
                        0.5860872354676911, 0.4058451513773972,
                        0.2077849550078985, 0.0};
const double kWgk[8] = {0.0229353220105292, 0.0630920926299785,
                        0.1047900103222502, 0.1406532597155259,
                        0.1690047266392679, 0.1903505780647854,
                        0.2044329400752989, 0.2094821410847278};
const double kWg[4] = {0.1294849661688697, 0.2797053914892767,
                       0.3818300505051189, 0.4179591836734694};

struct GkEval {
  double kronrod;
  double err;
};

GkEval gk15(const Fn& f, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  evals += 15;
  double kron = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
  for (int i = 0; i < 3; ++i)
    gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  kron *= h;
  gauss *= h;
  return {kron, std::abs(kron - gauss)};
}

void gk_adapt(const Fn& f, double a, double b, double tol, int depth,
              const Options& opts, double& value, double& err, long& evals) {
  GkEval e = gk15(f, a, b, evals);
  if (e.err <= tol || depth >= opts.max_depth) {
    if (evals > opts.max_evals)
      throw QuadratureError(
          "adaptive_gk15: evaluation budget exhausted, error estimate " +
              std::to_string(err + e.err),
          err + e.err);
    value += e.kronrod;
    err += e.err;
    return;
  }
  const double m = 0.5 * (a + b);
  gk_adapt(f, a, m, 0.5 * tol, depth + 1, opts, value, err, evals);
  gk_adapt(f, m, b, 0.5 * tol, depth + 1, opts, value, err, evals);
}

// ---- Filon machinery -------------------------------------------------

struct Moments {
  cplx m0, m1, m2;  // integrals of u^k exp(i tau u) over [-h, h]
};

Moments filon_moments(double tau, double h) {
  const double theta = tau * h;
  Moments m;
  if (std::abs(theta) < 0.25) {
    const double t2 = theta * theta;
    const double s0 =
        1.0 + t2 * (-1.0 / 6.0 +
                    t2 * (1.0 / 120.0 +
                          t2 * (-1.0 / 5040.0 + t2 * (1.0 / 362880.0))));
    const double s1 =
        theta * (1.0 / 3.0 +
                 t2 * (-1.0 / 30.0 +
                       t2 * (1.0 / 840.0 + t2 * (-1.0 / 45360.0))));
    const double s2 =
        1.0 / 3.0 +
        t2 * (-1.0 / 10.0 + t2 * (1.0 / 168.0 + t2 * (-1.0 / 6480.0)));
    m.m0 = cplx(2.0 * h * s0, 0.0);
    m.m1 = cplx(0.0, 2.0 * h * h * s1);
    m.m2 = cplx(2.0 * h * h * h * s2, 0.0);
  } else {
    const double s = std::sin(theta), c = std::cos(theta);
    m.m0 = cplx(2.0 * s / tau, 0.0);
    m.m1 = cplx(0.0, 2.0 * (s - theta * c) / (tau * tau));
    m.m2 = cplx(2.0 * (2.0 * theta * c + (theta * theta - 2.0) * s) /
                    (tau * tau * tau),
                0.0);
  }
  return m;
}

// Quadratic-interpolation Filon estimate of int_a^b f exp(i tau x) dx from
// endpoint and midpoint values.
cplx filon_panel(double tau, double a, double b, double fa, double fm,
                 double fb) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const Moments mo = filon_moments(tau, h);
  const double c0 = fm;
  const double c1 = (fb - fa) / (2.0 * h);
  const double c2 = (fa - 2.0 * fm + fb) / (2.0 * h * h);
  const cplx phase = std::exp(cplx(0.0, tau * mid));
  return phase * (c0 * mo.m0 + c1 * mo.m1 + c2 * mo.m2);
}

void filon_adapt(const Fn& f, double tau, double a, double m, double b,
                 double fa, double fm, double fb, cplx whole, double tol,
                 int depth, const Options& opts, cplx& value, double& err,
                 long& evals) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const cplx left = filon_panel(tau, a, m, fa, flm, fm);
  const cplx right = filon_panel(tau, m, b, fm, frm, fb);
  const cplx refined = left + right;
  const double delta = std::abs(refined - whole);
  if (delta <= 15.0 * tol || depth >= opts.max_depth) {
    if (evals > opts.max_evals)
      throw QuadratureError(
          "fourier_finite: evaluation budget exhausted, error estimate " +
              std::to_string(err + delta / 15.0),
          err + delta / 15.0);
    value += refined + (refined - whole) / 15.0;
    err += delta / 15.0;
    return;
  }
  filon_adapt(f, tau, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opts,
              value, err, evals);
  filon_adapt(f, tau, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opts,
              value, err, evals);
}

}  // namespace

Result adaptive_gk15(const Fn& f, double a, double b, const Options& opts,
                     const std::vector<double>& seeds) {
  std::vector<double> edges{a};
  for (double s : seeds)
    if (s > a && s < b) edges.push_back(s);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Result out;
  const double tol_share =
      std::max(opts.abs_tol, 1e-300) / static_cast<double>(edges.size() - 1);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k)
    gk_adapt(f, edges[k], edges[k + 1], tol_share, 0, opts, out.value,
             out.error, out.evals);
  return out;
}

Result integrate_to_infinity(const Fn& f, double w, const Options& opts) {
  if (w <= 0.0) throw DomainError("integrate_to_infinity: w must be > 0");
  const Fn g = [&f](double u) { return f(1.0 / u) / (u * u); };
  return adaptive_gk15(g, 0.0, 1.0 / w, opts);
}

FourierResult fourier_finite(const Fn& f, double tau,
                             const std::vector<double>& edges,
                             const Options& opts) {
  if (edges.size() < 2)
    throw DomainError("fourier_finite: need at least two edges");
  FourierResult out;
  out.omega_max = edges.back();
  const double tol_share =
      std::max(opts.abs_tol, 1e-300) / static_cast<double>(edges.size() - 1);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1];
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    out.evals += 3;
    const cplx whole = filon_panel(tau, a, b, fa, fm, fb);
    filon_adapt(f, tau, a, m, b, fa, fm, fb, whole, tol_share, 0, opts,
                out.value, out.error, out.evals);
  }
  return out;
}

std::pair<cplx, double> ibp_tail(const Fn& g, double w, double tau) {
  if (tau <= 0.0 || w <= 0.0)
    throw DomainError("ibp_tail: needs tau > 0 and w > 0");
  const double h = 1e-3 * w;
  const double gm2 = g(w - 2.0 * h), gm1 = g(w - h), g0 = g(w),
               gp1 = g(w + h), gp2 = g(w + 2.0 * h);
  const double d1 = (gp1 - gm1) / (2.0 * h);
  const double d2 = (gp1 - 2.0 * g0 + gm1) / (h * h);
  const double d3 = (gp2 - 2.0 * gp1 + 2.0 * gm1 - gm2) / (2.0 * h * h * h);
  const cplx phase = std::exp(cplx(0.0, tau * w));
  const cplx it(0.0, tau);
  // integral_w^inf g e^{i tau x} dx = -e^{i tau w} sum_k (-1)^k g^(k)/(i tau)^(k+1)
  cplx sum = g0 / it - d1 / (it * it) + d2 / (it * it * it) -
             d3 / (it * it * it * it);
  const cplx tail = -phase * sum;
  const double local = std::abs(d3) / std::pow(tau, 4);
  const double err = local * 4.0 / std::max(w * tau, 1.0);
  return {tail, err};
}

Result pv_integral(const Fn& numerator, double pole, double delta,
                   double tail_start, const Options& opts,
                   const std::vector<double>& seeds) {
  if (pole <= 0.0) throw DomainError("pv_integral: pole must be > 0");
  delta = std::min(delta, 0.9 * pole);
  if (delta <= 0.0) throw DomainError("pv_integral: bad delta");
  const double w = std::max(tail_start, pole + 10.0 * delta);

  Result out;
  const Fn g = [&](double x) { return numerator(x) / (x - pole); };

  Result left = adaptive_gk15(g, 0.0, pole - delta, opts, seeds);
  // symmetric window: int_0^delta [n(p+s) - n(p-s)]/s ds
  const Fn sym = [&](double s) {
    return (numerator(pole + s) - numerator(pole - s)) / s;
  };
  Result mid = adaptive_gk15(sym, 0.0, delta, opts);
  Result right = adaptive_gk15(g, pole + delta, w, opts, seeds);
  Result tail = integrate_to_infinity(g, w, opts);

  out.value = left.value + mid.value + right.value + tail.value;
  out.error = left.error + mid.error + right.error + tail.error;
  out.evals = left.evals + mid.evals + right.evals + tail.evals;
  return out;
}

std::vector<double> geometric_edges(double h0, double w, double ratio) {
  std::vector<double> edges{0.0};
  double x = h0;
  while (x < w) {
    edges.push_back(x);
    x *= ratio;
  }
  edges.push_back(w);
  return edges;
}

const Gk15Nodes& gk15_nodes() {
  static const Gk15Nodes nodes = [] {
    Gk15Nodes n{};
    for (int i = 0; i < 7; ++i) {
      n.x[i] = -kXgk[i];
      n.x[14 - i] = kXgk[i];
      n.wk[i] = kWgk[i];
      n.wk[14 - i] = kWgk[i];
      n.wg[i] = 0.0;
      n.wg[14 - i] = 0.0;
    }
    n.x[7] = 0.0;
    n.wk[7] = kWgk[7];
    n.wg[7] = kWg[3];
    for (int i = 0; i < 3; ++i) {
      n.wg[2 * i + 1] = kWg[i];
      n.wg[13 - 2 * i] = kWg[i];
    }
    return n;
  }();
  return nodes;
}

}  // namespace oscspin::quad
