#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace cohmap {

// Ground-state spin parameters of the NV ensemble: zero-field splitting D,
// gyromagnetic ratio, and the lab-frame bias field.
struct SpinParams {
  double d_mhz = 2870.0;
  double gamma_e_mhz_per_mt = 28.0;
  std::array<double, 3> bias_mt{0.0, 0.0, 0.0};

  void validate() const;  // throws ValidationError
};

// One of the four <111> defect axes, unit-normalized.
struct NVOrientation {
  std::array<double, 3> axis;
};

// The four canonical axes (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1) / sqrt(3).
const std::array<NVOrientation, 4>& nv_orientations();

struct RabiParams {
  double omega_r_rad_ns = 0.0;  // bare drive frequency
  double delta_rad_ns = 0.0;    // drive detuning from resonance
  double t2_star_ns = 1.0;
};

// One Lorentzian resonance in a synthesized spectrum.
struct OdmrLine {
  double center_mhz = 0.0;
  double contrast = 0.0;     // fractional dip depth in (0, 1)
  double fwhm_mhz = 1.0;
};

// Splitting of the ms = +1 / -1 pair for an axis-projected field: 2 * gamma_e * b.
double zeeman_splitting_mhz(const SpinParams& p, double b_proj_mt);

// (D - gamma_e*b, D + gamma_e*b). Requires b_proj >= 0 (pass |projection|);
// throws ValidationError when the lower branch would reach zero or below.
std::pair<double, double> resonance_pair_mhz(const SpinParams& p, double b_proj_mt);

// The eight resonance frequencies of the four axis families, ascending.
// Degenerate projections yield coincident values; the count stays eight.
std::array<double, 8> odmr_frequencies_mhz(const SpinParams& p);

// sqrt(omega_r^2 + delta^2)
double generalized_rabi(double omega_r_rad_ns, double delta_rad_ns);

// exp(-t/T2*) * sin^2(omega' t / 2), with omega' = generalized_rabi(omega_r, delta).
double rabi_signal(double t_ns, const RabiParams& p);

// The normalized-PL trace model shared by the scene synthesizer and the
// fitter: N(tau) = a - c * exp(-tau/T2*) * sin^2(omega' tau / 2).
double normalized_pl_model(double tau_ns, double baseline, double contrast,
                           double omega_prime_rad_ns, double t2_star_ns);

// 1 - sum of Lorentzian dips, evaluated on a strictly increasing grid.
std::vector<double> odmr_spectrum(std::span<const double> freq_mhz,
                                  std::span<const OdmrLine> lines);

// Local minima of a normalized spectrum deeper than min_depth, refined by
// parabolic interpolation over the neighboring samples.
std::vector<double> find_spectrum_dips(std::span<const double> freq_mhz,
                                       std::span<const double> values,
                                       double min_depth);

}  // namespace cohmap
