#include "satcov/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace satcov {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// GEO belt quantities reused across the integrals. The nearest-distance law
// along the belt is exponential in the arc angle: the void probability of the
// sub-arc within angle g of the meridian is exp(-rho*g), so integrals against
// the serving-distance density become uniform after u = Psi(r).
struct GeoCtx {
  bool live = false;  // nonzero density and a nonempty visible arc
  double R = 0, re = 0;
  double gvis = 0, rho = 0;
  double rmin = 0, rmax = 0;
  double psi_max = 1.0;  // void probability of the whole visible arc
};

GeoCtx geo_ctx(const ScenarioConfig& cfg) {
  GeoCtx g;
  g.R = cfg.geom.geo_orbit_radius_km();
  g.re = cfg.geom.earth_radius_km;
  if (!(cfg.geo.density > 0.0) || !geo_visible(cfg.terminal, cfg.geom)) return g;
  g.live = true;
  g.gvis = geo_visible_halfangle(cfg.terminal, cfg.geom);
  g.rho = 2.0 * cfg.geo.density * g.R;
  g.rmin = geo_distance_at_angle(0.0, cfg.terminal, cfg.geom);
  g.rmax = std::sqrt(g.R * g.R - g.re * g.re);
  g.psi_max = std::exp(-g.rho * g.gvis);
  return g;
}

double geo_angle_of_u(const GeoCtx& g, double u) {
  if (u >= 1.0) return 0.0;
  if (!(u > 0.0)) return g.gvis;
  return std::min(-std::log(u) / g.rho, g.gvis);
}

double geo_r_of_u(const GeoCtx& g, const ScenarioConfig& cfg, double u) {
  return geo_distance_at_angle(geo_angle_of_u(g, u), cfg.terminal, cfg.geom);
}

struct LeoCtx {
  bool live = false;
  double R = 0, re = 0, aL = 0, rmax = 0;
  double c0 = 0;          // rate of Lambda(r) = exp(-c0 (r^2 - aL^2))
  double lam_max = 1.0;   // Lambda at the visibility edge
};

LeoCtx leo_ctx(const ScenarioConfig& cfg) {
  LeoCtx l;
  l.R = cfg.geom.leo_shell_radius_km();
  l.re = cfg.geom.earth_radius_km;
  l.aL = cfg.geom.leo_altitude_km;
  const DistanceBounds b = leo_distance_bounds(cfg.geom);
  l.rmax = b.r_vis_max_km;
  if (!(cfg.leo.density > 0.0)) return l;
  l.live = true;
  l.c0 = kPi * cfg.leo.density * l.R / l.re;
  l.lam_max = std::exp(-l.c0 * (l.rmax * l.rmax - l.aL * l.aL));
  return l;
}

double leo_lambda(const LeoCtx& l, double r) {
  return std::exp(-l.c0 * (r * r - l.aL * l.aL));
}

double leo_r_of_u(const LeoCtx& l, double u) {
  if (u >= 1.0) return l.aL;
  if (!(u > 0.0)) return l.rmax;
  const double r2 = l.aL * l.aL - std::log(u) / l.c0;
  return std::min(std::sqrt(r2), l.rmax);
}

// CDFs extended by 0 below and 1 above the support, for cross-type exclusion.
double cdf_geo_ext(const GeoCtx& g, const ScenarioConfig& cfg, double r) {
  if (!g.live) return 0.0;
  if (r <= g.rmin) return 0.0;
  if (r >= g.rmax) return 1.0;
  const double psi = std::exp(-g.rho * geo_angle_at_distance(r, cfg.terminal, cfg.geom));
  return (1.0 - psi) / (1.0 - g.psi_max);
}

double cdf_leo_ext(const LeoCtx& l, double r) {
  if (!l.live) return 0.0;
  if (r <= l.aL) return 0.0;
  if (r >= l.rmax) return 1.0;
  return (1.0 - leo_lambda(l, r)) / (1.0 - l.lam_max);
}

// 1 - (m w r^a / (s + m w r^a))^m: per-interferer fading-averaged suppression.
double suppression(double s, int m, double omega, double alpha, double r) {
  const double x = m * omega * std::pow(r, alpha);
  return -std::expm1(-m * std::log1p(s / x));
}

// E[exp(-s I_G)] with interferers on the arc beyond angle gamma0. In angle
// space the arc measure is flat (r dr / sqrt(v1 - (v2 - r^2)^2) = dgamma / 2),
// which removes the inverse-square-root endpoint singularity entirely.
double laplace_geo_core(double s, double gamma0, const GeoCtx& g, const ScenarioConfig& cfg,
                        const QuadratureSpec& spec) {
  if (s < 0.0) throw std::invalid_argument("laplace transform needs s >= 0");
  if (s == 0.0 || !g.live || gamma0 >= g.gvis) return 1.0;
  const double omega = omega_coefficient(cfg.geo.budget.tx_power_w,
                                         cfg.geo.budget.interferer_gain, cfg.channel);
  const double alpha = cfg.geo.budget.pathloss_exp;
  const int m = cfg.channel.nakagami_m;
  auto f = [&](double gamma) {
    return suppression(s, m, omega, alpha, geo_distance_at_angle(gamma, cfg.terminal, cfg.geom));
  };
  const QuadratureResult q = integrate(f, std::max(gamma0, 0.0), g.gvis, spec);
  return std::exp(-g.rho * q.value);
}

double laplace_leo_core(double s, double r0, const LeoCtx& l, const ScenarioConfig& cfg,
                        const QuadratureSpec& spec) {
  if (s < 0.0) throw std::invalid_argument("laplace transform needs s >= 0");
  if (s == 0.0 || !l.live) return 1.0;
  const double lo = std::clamp(r0, l.aL, l.rmax);
  if (lo >= l.rmax) return 1.0;
  const double omega = omega_coefficient(cfg.leo.budget.tx_power_w,
                                         cfg.leo.budget.interferer_gain, cfg.channel);
  const double alpha = cfg.leo.budget.pathloss_exp;
  const int m = cfg.channel.nakagami_m;
  auto f = [&](double r) { return suppression(s, m, omega, alpha, r) * r; };
  const QuadratureResult q = integrate(f, lo, l.rmax, spec);
  return std::exp(-2.0 * kPi * cfg.leo.density * l.R / l.re * q.value);
}

// Shared coverage integral: expectation over the serving distance of the
// fading-threshold sum, with own-type interference excluded inside the
// serving distance and cross-type interference excluded inside the
// equal-biased-power radius.
double cov_kernel(double tau, SatType type, bool cross, const ScenarioConfig& cfg) {
  if (!(tau > 0.0)) throw std::invalid_argument("coverage threshold must be positive");
  const GeoCtx g = geo_ctx(cfg);
  const LeoCtx l = leo_ctx(cfg);
  const int m = cfg.channel.nakagami_m;
  const double nu = nakagami_nu(m);
  const double n0w = noise_power_w(cfg.channel);
  const QuadratureSpec inner = cfg.quad.tightened();

  const SatParams& own = type == SatType::geo ? cfg.geo : cfg.leo;
  const double om0 =
      omega_coefficient(own.budget.tx_power_w, own.budget.mainlobe_gain, cfg.channel);
  const double alpha = own.budget.pathloss_exp;

  if (type == SatType::geo && !g.live)
    throw std::domain_error("no GEO serving branch: arc not visible or density zero");
  if (type == SatType::leo && !l.live)
    throw std::domain_error("no LEO serving branch: density zero");

  auto threshold_sum = [&](double r, double own_gamma0_or_r) {
    const double delta = nu * tau * om0 * std::pow(r, alpha);
    const double dx = cross ? biased_distance(r, type == SatType::geo ? SatType::leo
                                                                      : SatType::geo, cfg)
                            : 0.0;
    double sum = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double s = i * delta;
      double term = std::exp(-s * n0w);
      if (type == SatType::geo) {
        term *= laplace_geo_core(s, own_gamma0_or_r, g, cfg, inner);
        if (cross) term *= laplace_leo_core(s, dx, l, cfg, inner);
      } else {
        term *= laplace_leo_core(s, own_gamma0_or_r, l, cfg, inner);
        if (cross) term *= laplace_geo_core(
            s, g.live ? (dx >= g.rmax ? g.gvis
                                      : (dx <= g.rmin
                                             ? 0.0
                                             : geo_angle_at_distance(dx, cfg.terminal, cfg.geom)))
                      : 0.0,
            g, cfg, inner);
      }
      sum += (i % 2 == 1 ? 1.0 : -1.0) * binomial(m, i) * term;
    }
    return sum;
  };

  QuadratureResult q;
  double norm;
  if (type == SatType::geo) {
    auto h = [&](double u) {
      const double gamma = geo_angle_of_u(g, u);
      return threshold_sum(geo_distance_at_angle(gamma, cfg.terminal, cfg.geom), gamma);
    };
    q = integrate(h, g.psi_max, 1.0, cfg.quad);
    norm = 1.0 - g.psi_max;
  } else {
    auto h = [&](double u) {
      const double r = leo_r_of_u(l, u);
      return threshold_sum(r, r);
    };
    q = integrate(h, l.lam_max, 1.0, cfg.quad);
    norm = 1.0 - l.lam_max;
  }
  return clamp01(q.value / norm);
}

}  // namespace

double p_vis_geo(const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  if (!g.live) return 0.0;
  return clamp01(-std::expm1(-g.rho * g.gvis));
}

double p_vis_leo(const ScenarioConfig& cfg) {
  if (!(cfg.leo.density > 0.0)) return 0.0;
  const double R = cfg.geom.leo_shell_radius_km();
  return clamp01(-std::expm1(-2.0 * kPi * cfg.leo.density * R * cfg.geom.leo_altitude_km));
}

double cdf_r0_geo(double r_km, const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  if (!g.live) throw std::domain_error("GEO nearest-distance law undefined: not visible");
  if (r_km < g.rmin || r_km > g.rmax)
    throw std::domain_error("distance outside the visible GEO support");
  return clamp01(cdf_geo_ext(g, cfg, r_km));
}

double pdf_r0_geo(double r_km, const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  if (!g.live) throw std::domain_error("GEO nearest-distance law undefined: not visible");
  if (r_km < g.rmin || r_km > g.rmax)
    throw std::domain_error("distance outside the visible GEO support");
  const double cp = std::cos(cfg.terminal.latitude_phi);
  // factored radicand, stable against cancellation near the support edges
  const double near2 = g.R * g.R + g.re * g.re - 2.0 * g.R * g.re * cp;
  const double far2 = g.R * g.R + g.re * g.re + 2.0 * g.R * g.re * cp;
  const double radicand = std::max(0.0, (r_km * r_km - near2) * (far2 - r_km * r_km));
  const double psi = std::exp(-g.rho * geo_angle_at_distance(r_km, cfg.terminal, cfg.geom));
  // diverges like an inverse square root at the near support endpoint
  return g.rho * psi * 2.0 * r_km / std::sqrt(radicand) / (1.0 - g.psi_max);
}

double cdf_r0_leo(double r_km, const ScenarioConfig& cfg) {
  const LeoCtx l = leo_ctx(cfg);
  if (!l.live) throw std::domain_error("LEO nearest-distance law undefined: density zero");
  if (r_km < l.aL || r_km > l.rmax)
    throw std::domain_error("distance outside the visible LEO support");
  return clamp01(cdf_leo_ext(l, r_km));
}

double pdf_r0_leo(double r_km, const ScenarioConfig& cfg) {
  const LeoCtx l = leo_ctx(cfg);
  if (!l.live) throw std::domain_error("LEO nearest-distance law undefined: density zero");
  if (r_km < l.aL || r_km > l.rmax)
    throw std::domain_error("distance outside the visible LEO support");
  return 2.0 * l.c0 * r_km * leo_lambda(l, r_km) / (1.0 - l.lam_max);
}

double biased_distance(double r_km, SatType toward, const ScenarioConfig& cfg) {
  if (!(r_km > 0.0)) throw std::invalid_argument("biased_distance needs r > 0");
  const LinkBudget& to = toward == SatType::geo ? cfg.geo.budget : cfg.leo.budget;
  const LinkBudget& from = toward == SatType::geo ? cfg.leo.budget : cfg.geo.budget;
  const double ratio = (to.tx_power_w * to.mainlobe_gain * to.bias) /
                       (from.tx_power_w * from.mainlobe_gain * from.bias);
  return std::pow(ratio, 1.0 / to.pathloss_exp) *
         std::pow(r_km, from.pathloss_exp / to.pathloss_exp);
}

namespace {

// serving distance at which the biased equivalent distance reaches d_km
double biased_crossing(double d_km, SatType toward, const ScenarioConfig& cfg) {
  const LinkBudget& to = toward == SatType::geo ? cfg.geo.budget : cfg.leo.budget;
  const LinkBudget& from = toward == SatType::geo ? cfg.leo.budget : cfg.geo.budget;
  const double ratio = (to.tx_power_w * to.mainlobe_gain * to.bias) /
                       (from.tx_power_w * from.mainlobe_gain * from.bias);
  return std::pow(std::pow(d_km, to.pathloss_exp) / ratio, 1.0 / from.pathloss_exp);
}

double geo_quantile(const GeoCtx& g, const ScenarioConfig& cfg, double p) {
  const double psi = 1.0 - p * (1.0 - g.psi_max);
  const double gamma = std::min(-std::log(psi) / g.rho, g.gvis);
  return geo_distance_at_angle(gamma, cfg.terminal, cfg.geom);
}

double leo_quantile(const LeoCtx& l, double p) {
  const double lam = 1.0 - p * (1.0 - l.lam_max);
  return std::min(std::sqrt(l.aL * l.aL - std::log(lam) / l.c0), l.rmax);
}

// Integrate f over [lo, 1], splitting at interior breakpoints so the panels
// on either side of a support edge see a smooth integrand.
template <typename F>
double integrate_split(F&& f, double lo, std::vector<double> breaks,
                       const QuadratureSpec& spec) {
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                              [&](double b) { return !(b > lo && b < 1.0); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double a = lo;
  for (const double b : breaks) {
    total += integrate(f, a, b, spec).value;
    a = b;
  }
  return total + integrate(f, a, 1.0, spec).value;
}

}  // namespace

double p_assc_geo(const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  const LeoCtx l = leo_ctx(cfg);
  if (!g.live) throw std::domain_error("association undefined: GEO arc not visible");
  if (!l.live) throw std::domain_error("association undefined: LEO density zero");
  auto f = [&](double u) {
    const double r = geo_r_of_u(g, cfg, u);
    return cdf_leo_ext(l, biased_distance(r, SatType::leo, cfg));
  };
  // When the LEO shell is dense its CDF rises over a sliver of the GEO serving
  // range; split at quantile crossings so that sliver owns quadrature panels.
  std::vector<double> breaks;
  for (const double p : {0.0, 1e-4, 0.5, 1.0 - 1e-4, 1.0}) {
    const double rb = biased_crossing(leo_quantile(l, p), SatType::leo, cfg);
    if (rb > g.rmin && rb < g.rmax)
      breaks.push_back(
          std::exp(-g.rho * geo_angle_at_distance(rb, cfg.terminal, cfg.geom)));
  }
  const double q = integrate_split(f, g.psi_max, std::move(breaks), cfg.quad);
  return clamp01(1.0 - q / (1.0 - g.psi_max));
}

double p_assc_leo(const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  const LeoCtx l = leo_ctx(cfg);
  if (!g.live) throw std::domain_error("association undefined: GEO arc not visible");
  if (!l.live) throw std::domain_error("association undefined: LEO density zero");
  auto f = [&](double u) {
    const double r = leo_r_of_u(l, u);
    return cdf_geo_ext(g, cfg, biased_distance(r, SatType::geo, cfg));
  };
  // Mirror image: a dense GEO arc concentrates its CDF in a sliver of the LEO
  // serving range, so anchor panels at quantile crossings.
  std::vector<double> breaks;
  for (const double p : {0.0, 1e-4, 0.5, 1.0 - 1e-4, 1.0}) {
    const double rb = biased_crossing(geo_quantile(g, cfg, p), SatType::geo, cfg);
    if (rb > l.aL && rb < l.rmax)
      breaks.push_back(std::exp(-l.c0 * (rb * rb - l.aL * l.aL)));
  }
  const double q = integrate_split(f, l.lam_max, std::move(breaks), cfg.quad);
  return clamp01(1.0 - q / (1.0 - l.lam_max));
}

double laplace_interference_geo(double s, double r0_km, const ScenarioConfig& cfg) {
  const GeoCtx g = geo_ctx(cfg);
  if (!g.live) return 1.0;
  double gamma0 = 0.0;
  if (r0_km >= g.rmax) return 1.0;
  if (r0_km > g.rmin) gamma0 = geo_angle_at_distance(r0_km, cfg.terminal, cfg.geom);
  return laplace_geo_core(s, gamma0, g, cfg, cfg.quad);
}

double laplace_interference_leo(double s, double r0_km, const ScenarioConfig& cfg) {
  const LeoCtx l = leo_ctx(cfg);
  return laplace_leo_core(s, r0_km, l, cfg, cfg.quad);
}

double p_cov_geo(double tau, const ScenarioConfig& cfg) {
  return cov_kernel(tau, SatType::geo, true, cfg);
}

double p_cov_leo(double tau, const ScenarioConfig& cfg) {
  return cov_kernel(tau, SatType::leo, true, cfg);
}

double p_cov_nocross_geo(double tau, const ScenarioConfig& cfg) {
  return cov_kernel(tau, SatType::geo, false, cfg);
}

double p_cov_nocross_leo(double tau, const ScenarioConfig& cfg) {
  return cov_kernel(tau, SatType::leo, false, cfg);
}

CoverageBreakdown p_cov_total(double tau, const ScenarioConfig& cfg) {
  CoverageBreakdown out;
  out.p_vis_geo = p_vis_geo(cfg);
  out.p_vis_leo = p_vis_leo(cfg);
  const bool geo_ok = geo_ctx(cfg).live;
  const bool leo_ok = leo_ctx(cfg).live;

  if (geo_ok && leo_ok) {
    out.p_assc_geo = p_assc_geo(cfg);
    out.p_assc_leo = p_assc_leo(cfg);
    out.p_cov_geo = p_cov_geo(tau, cfg);
    out.p_cov_leo = p_cov_leo(tau, cfg);
  } else {
    out.p_assc_geo = geo_ok ? 1.0 : 0.0;
    out.p_assc_leo = leo_ok ? 1.0 : 0.0;
  }
  if (geo_ok) out.p_cov_geo_nocross = p_cov_nocross_geo(tau, cfg);
  if (leo_ok) out.p_cov_leo_nocross = p_cov_nocross_leo(tau, cfg);

  out.p_cov_total = clamp01(
      out.p_vis_geo * out.p_vis_leo *
          (out.p_assc_geo * out.p_cov_geo + out.p_assc_leo * out.p_cov_leo) +
      out.p_vis_geo * (1.0 - out.p_vis_leo) * out.p_cov_geo_nocross +
      (1.0 - out.p_vis_geo) * out.p_vis_leo * out.p_cov_leo_nocross);
  return out;
}

}  // namespace satcov
