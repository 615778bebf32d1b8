#pragma once

#include <cstdint>
#include <random>

namespace satcov {

struct ChannelParams {
  double carrier_freq_hz = 20e9;
  int nakagami_m = 1;             // integer shape; 1 is Rayleigh power fading
  double noise_psd_dbm_hz = -174.0;
  double bandwidth_hz = 30e6;
};

// Per-constellation link budget. Gains are effective (satellite-side gain
// times any terminal receive gain, folded at config parse), linear ratios.
struct LinkBudget {
  double tx_power_w = 1.0;
  double mainlobe_gain = 1.0;   // gain of the beam pointed at the terminal
  double interferer_gain = 1.0; // uniform gain of misaligned beams
  double bias = 1.0;            // association bias, linear
  double pathloss_exp = 2.0;
};

// Largest shape for which the alternating binomial sums stay exact in doubles.
inline constexpr int kMaxNakagamiM = 20;

// (c / (4 pi f_c))^2 with c in km/s: multiplying by d^-alpha (d in km) gives
// the unit-gain path loss.
double path_loss_coeff(const ChannelParams& params);
double path_loss(double distance_km, double alpha, const ChannelParams& params);

// CDF of the unit-mean gamma power gain and its exponential-mixture
// approximation (exact at m = 1), plus the rate constant nu = m * (m!)^(-1/m)
// the approximation is built from.
double nakagami_cdf(double x, int m);
double nakagami_cdf_approx(double x, int m);
double nakagami_nu(int m);

// Exact binomial coefficient as a double; requires n <= kMaxNakagamiM.
double binomial(int n, int k);

// Unit-mean gamma(m, 1/m) draw, realized as a sum of m exponentials so the
// sampling path is identical across standard-library implementations.
double sample_channel_gain(int m, std::mt19937_64& rng);

// Transmit power from an EIRP spectral density (dBW/MHz) and the satellite
// mainlobe gain: density = P_t * gain / W.
double eirp_density_to_power(double eirp_density_dbw_mhz, double mainlobe_gain,
                             double bandwidth_hz);

// Reciprocal of the received power at 1 km: 16 pi^2 f_c^2 / (P G c^2).
// Multiplied by d^alpha it converts an SINR threshold into a fading threshold.
double omega_coefficient(double tx_power_w, double gain, const ChannelParams& params);

// Thermal noise power N0*W in watts from the dBm/Hz density.
double noise_power_w(const ChannelParams& params);

}  // namespace satcov
