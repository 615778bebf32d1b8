#include "satcov/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "satcov/geometry.hpp"

namespace satcov {

namespace {

void check_m(int m) {
  if (m < 1) throw std::invalid_argument("nakagami_m must be an integer >= 1");
  if (m > kMaxNakagamiM)
    throw std::invalid_argument("nakagami_m above 20 breaks exact binomial sums");
}

}  // namespace

double path_loss_coeff(const ChannelParams& params) {
  const double k = kSpeedOfLightKmS / (4.0 * kPi * params.carrier_freq_hz);
  return k * k;
}

double path_loss(double distance_km, double alpha, const ChannelParams& params) {
  if (!(distance_km > 0.0)) throw std::invalid_argument("path_loss needs distance > 0");
  return path_loss_coeff(params) * std::pow(distance_km, -alpha);
}

double nakagami_cdf(double x, int m) {
  check_m(m);
  if (x < 0.0) throw std::invalid_argument("channel gain cannot be negative");
  // 1 - e^{-mx} sum_{q<m} (mx)^q / q!
  const double mx = m * x;
  double term = 1.0, sum = 1.0;
  for (int q = 1; q < m; ++q) {
    term *= mx / q;
    sum += term;
  }
  const double tail = std::exp(-mx) * sum;
  return tail >= 1.0 ? 0.0 : 1.0 - tail;
}

double nakagami_nu(int m) {
  check_m(m);
  return m * std::pow(std::tgamma(m + 1.0), -1.0 / m);
}

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kMaxNakagamiM)
    throw std::invalid_argument("binomial arguments out of supported range");
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double nakagami_cdf_approx(double x, int m) {
  check_m(m);
  if (x < 0.0) throw std::invalid_argument("channel gain cannot be negative");
  const double nu = nakagami_nu(m);
  double tail = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double sign = (i % 2 == 1) ? 1.0 : -1.0;
    tail += sign * binomial(m, i) * std::exp(-nu * i * x);
  }
  if (tail > 1.0) tail = 1.0;
  if (tail < 0.0) tail = 0.0;
  return 1.0 - tail;
}

double sample_channel_gain(int m, std::mt19937_64& rng) {
  check_m(m);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum -= std::log1p(-uni(rng));
  return sum / m;
}

double eirp_density_to_power(double eirp_density_dbw_mhz, double mainlobe_gain,
                             double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  const double density_w_mhz = std::pow(10.0, eirp_density_dbw_mhz / 10.0);
  return density_w_mhz * (bandwidth_hz / 1e6) / mainlobe_gain;
}

double omega_coefficient(double tx_power_w, double gain, const ChannelParams& params) {
  if (!(tx_power_w > 0.0) || !(gain > 0.0))
    throw std::invalid_argument("omega_coefficient needs positive power and gain");
  const double f_over_c = params.carrier_freq_hz / kSpeedOfLightKmS;
  return 16.0 * kPi * kPi * f_over_c * f_over_c / (tx_power_w * gain);
}

double noise_power_w(const ChannelParams& params) {
  const double dbm = params.noise_psd_dbm_hz + 10.0 * std::log10(params.bandwidth_hz);
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace satcov
