#pragma once

#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace satcov {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  // nested integrals run their inner quadrature tighter than the outer one
  QuadratureSpec tightened(double factor = 10.0) const {
    return {rel_tol / factor, abs_tol / factor, max_subdivisions};
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_est = 0.0;
  int subdivisions = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadratureResult partial)
      : std::runtime_error(msg), partial_(partial) {}
  const QuadratureResult& partial() const { return partial_; }

 private:
  QuadratureResult partial_;
};

namespace qk {

// Gauss-Kronrod 7-15 pair on [-1,1]. All Kronrod abscissae are interior,
// so panel endpoints are never evaluated; integrable endpoint blow-ups
// (inverse square root) are handled by subdivision alone.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel evaluate(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::fabs(resk);
  double fv[14];
  for (int j = 0; j < 7; ++j) {
    const double dx = kXgk[j] * h;
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[2 * j] - mean) + std::fabs(fv[2 * j + 1] - mean));
  resasc *= std::fabs(h);
  resabs *= std::fabs(h);

  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {a, b, resk * h, err};
}

}  // namespace qk

// Globally adaptive integration of f over [a,b]: the worst panel (largest
// error estimate) is bisected until the summed error meets the tolerance or
// the panel budget runs out, in which case a QuadratureError carrying the
// partial result is thrown.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
  if (a == b) return {0.0, 0.0, 0};
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::priority_queue<qk::Panel> panels;
  qk::Panel first = qk::evaluate(f, a, b);
  double total = first.value;
  double err = first.error;
  panels.push(first);
  int n = 1;

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };

  while (err > target() && n < spec.max_subdivisions) {
    qk::Panel worst = panels.top();
    if (!(worst.error > 0.0)) break;
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval at floating resolution
    qk::Panel left = qk::evaluate(f, worst.a, mid);
    qk::Panel right = qk::evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++n;
  }

  QuadratureResult out{sign * total, err, n};
  if (!std::isfinite(total) || !std::isfinite(err))
    throw QuadratureError("non-finite integrand encountered", out);
  if (err > target())
    throw QuadratureError("tolerance not reached within subdivision budget", out);
  return out;
}

}  // namespace satcov
