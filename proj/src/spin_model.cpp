#include "cohmap/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohmap/errors.hpp"

namespace cohmap {

void SpinParams::validate() const {
  if (!(d_mhz > 0.0)) throw ValidationError("spin.d_mhz must be > 0");
  if (!(gamma_e_mhz_per_mt > 0.0)) throw ValidationError("spin.gamma_e_mhz_per_mt must be > 0");
  for (double b : bias_mt) {
    if (!std::isfinite(b)) throw ValidationError("spin.bias_mt components must be finite");
  }
}

const std::array<NVOrientation, 4>& nv_orientations() {
  static const std::array<NVOrientation, 4> axes = [] {
    const double s = 1.0 / std::sqrt(3.0);
    return std::array<NVOrientation, 4>{{
        {{s, s, s}},
        {{s, -s, -s}},
        {{-s, s, -s}},
        {{-s, -s, s}},
    }};
  }();
  return axes;
}

double zeeman_splitting_mhz(const SpinParams& p, double b_proj_mt) {
  return 2.0 * p.gamma_e_mhz_per_mt * b_proj_mt;
}

std::pair<double, double> resonance_pair_mhz(const SpinParams& p, double b_proj_mt) {
  if (b_proj_mt < 0.0) throw ValidationError("resonance_pair: b_proj must be >= 0");
  const double shift = p.gamma_e_mhz_per_mt * b_proj_mt;
  const double f_minus = p.d_mhz - shift;
  if (f_minus <= 0.0) {
    throw ValidationError("resonance_pair: lower branch " + std::to_string(f_minus) +
                          " MHz is not positive; field outside model validity");
  }
  return {f_minus, p.d_mhz + shift};
}

std::array<double, 8> odmr_frequencies_mhz(const SpinParams& p) {
  std::array<double, 8> out{};
  int n = 0;
  for (const NVOrientation& o : nv_orientations()) {
    const double proj = std::abs(p.bias_mt[0] * o.axis[0] + p.bias_mt[1] * o.axis[1] +
                                 p.bias_mt[2] * o.axis[2]);
    const auto [lo, hi] = resonance_pair_mhz(p, proj);
    out[n++] = lo;
    out[n++] = hi;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double generalized_rabi(double omega_r_rad_ns, double delta_rad_ns) {
  return std::hypot(omega_r_rad_ns, delta_rad_ns);
}

double rabi_signal(double t_ns, const RabiParams& p) {
  const double omega_prime = generalized_rabi(p.omega_r_rad_ns, p.delta_rad_ns);
  const double s = std::sin(0.5 * omega_prime * t_ns);
  return std::exp(-t_ns / p.t2_star_ns) * s * s;
}

double normalized_pl_model(double tau_ns, double baseline, double contrast,
                           double omega_prime_rad_ns, double t2_star_ns) {
  const double s = std::sin(0.5 * omega_prime_rad_ns * tau_ns);
  return baseline - contrast * std::exp(-tau_ns / t2_star_ns) * s * s;
}

std::vector<double> odmr_spectrum(std::span<const double> freq_mhz,
                                  std::span<const OdmrLine> lines) {
  for (std::size_t i = 1; i < freq_mhz.size(); ++i) {
    if (!(freq_mhz[i] > freq_mhz[i - 1])) {
      throw ValidationError("odmr_spectrum: frequency grid must be strictly increasing");
    }
  }
  std::vector<double> out(freq_mhz.size(), 1.0);
  for (const OdmrLine& line : lines) {
    const double hw = 0.5 * line.fwhm_mhz;
    const double hw2 = hw * hw;
    for (std::size_t i = 0; i < freq_mhz.size(); ++i) {
      const double d = freq_mhz[i] - line.center_mhz;
      out[i] -= line.contrast * hw2 / (d * d + hw2);
    }
  }
  return out;
}

std::vector<double> find_spectrum_dips(std::span<const double> freq_mhz,
                                       std::span<const double> values,
                                       double min_depth) {
  std::vector<double> centers;
  if (values.size() != freq_mhz.size() || values.size() < 3) return centers;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i - 1] && values[i] <= values[i + 1])) continue;
    if (1.0 - values[i] < min_depth) continue;
    // Parabola through the three samples around the minimum.
    const double denom = values[i - 1] - 2.0 * values[i] + values[i + 1];
    double shift = 0.0;
    if (denom > 0.0) {
      shift = 0.5 * (values[i - 1] - values[i + 1]) / denom;
      shift = std::clamp(shift, -0.5, 0.5);
    }
    const double step = (shift >= 0.0) ? freq_mhz[i + 1] - freq_mhz[i]
                                       : freq_mhz[i] - freq_mhz[i - 1];
    centers.push_back(freq_mhz[i] + shift * step);
  }
  return centers;
}

}  // namespace cohmap
