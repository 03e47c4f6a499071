#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cohmap/image.hpp"
#include "cohmap/spin_model.hpp"

namespace cohmap {

// Circular drive loop parallel to the sample plane, standoff_um above it.
// Field magnitudes are unitless Biot-Savart sums (1/um); drive_scale turns
// them into a bare Rabi frequency in rad/ns.
struct AntennaModel {
  std::array<double, 2> loop_center_um{0.0, 0.0};
  double loop_radius_um = 40.0;
  double standoff_um = 60.0;
  double drive_scale = 1.0;
  int n_segments = 256;

  void validate() const;
};

struct SceneGeometry {
  int width = 0;
  int height = 0;
  double pixel_pitch_um = 1.67;

  // Pixel centers; x grows with column index, y with row index.
  double x_um(int ix) const { return (ix + 0.5) * pixel_pitch_um; }
  double y_um(int iy) const { return (iy + 0.5) * pixel_pitch_um; }
};

// Scalar field over the scene: uniform value, linear gradient along an
// image axis, per-pixel table, radial profile around a point, or a
// Gaussian beam profile (peak over a floor, 1/e^2 diameter).
struct FieldSpec {
  enum class Kind { Uniform, GradientX, GradientY, Table, Radial, Gaussian };
  Kind kind = Kind::Uniform;

  double value = 0.0;              // Uniform
  double start = 0.0, stop = 0.0;  // Gradient endpoints (first to last pixel)
  std::vector<double> table;       // Table, row-major width*height
  std::array<double, 2> center_um{0.0, 0.0};  // Radial / Gaussian
  double inner = 0.0, outer = 0.0, falloff_um = 1.0;  // Radial
  double peak = 0.0, e2_diameter_um = 1.0, floor = 0.0;  // Gaussian

  static FieldSpec uniform(double v);

  double eval(int ix, int iy, const SceneGeometry& geom) const;
  void validate(const SceneGeometry& geom, const std::string& name) const;
};

// Per-pixel ground truth for synthesis: bare Rabi frequency, detuning,
// intrinsic coherence time, expected photoelectrons per readout, and the
// contrast of the PL dip.
struct SceneMap {
  int width = 0;
  int height = 0;
  double pixel_pitch_um = 1.67;
  std::vector<double> omega_r_rad_ns;
  std::vector<double> delta_rad_ns;
  std::vector<double> t2_intrinsic_ns;
  std::vector<double> brightness_l0;  // photoelectrons per single readout
  std::vector<double> contrast;
  // When set, the dip amplitude scales by omega_r^2/omega'^2 under detuning
  // instead of staying fixed.
  bool contrast_scales_with_detuning = false;

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width + x;
  }
  std::size_t size() const { return omega_r_rad_ns.size(); }
  void validate() const;
  uint64_t content_hash() const;
};

struct CameraModel {
  double gain = 1.0;              // counts per photoelectron
  double read_noise_sigma = 2.0;  // counts RMS
  double dark_mean = 100.0;       // counts per frame
  int bit_depth = 16;
  uint32_t full_well_counts = 65535;

  void validate() const;
};

struct AcquisitionPlan {
  std::vector<double> tau_list_ns;
  int sequences_per_frame = 150;
  int frames_per_kind = 250;
  double exposure_ms = 40.0;
  double init_duration_us = 300.0;

  void validate() const;
  int tau_index(double tau_ns) const;  // throws ValidationError if absent
};

enum class FrameKind : int { M = 0, L = 1, B = 2 };
const char* to_string(FrameKind k);
FrameKind frame_kind_from_string(const std::string& s);

// One acquisition unit: every camera frame of one kind at one tau.
struct FrameStack {
  FrameKind kind = FrameKind::M;
  double tau_ns = 0.0;
  int tau_index = 0;
  uint64_t seed = 0;
  uint64_t scene_hash = 0;
  std::vector<FrameImage> frames;
};

struct MwFieldSample {
  double magnitude = 0.0;
  std::array<double, 3> direction{0.0, 0.0, 1.0};
};

// Biot-Savart midpoint sum around the loop, evaluated at a sample-plane
// point. Exponentially convergent in n_segments for points off the wire.
MwFieldSample mw_field_at(const AntennaModel& antenna, double x_um, double y_um);

// Ground truth from the antenna model: omega_r from the MW field component
// perpendicular to the chosen NV axis, detuning from the local resonance
// against the drive frequency, T2*/brightness/contrast from field specs.
SceneMap build_scene(const AntennaModel& antenna, const SpinParams& spin,
                     double mw_freq_mhz, const FieldSpec& t2_map,
                     const FieldSpec& brightness, const SceneGeometry& geom,
                     int nv_axis_index = 0, const FieldSpec& contrast = FieldSpec::uniform(0.03),
                     bool contrast_scales_with_detuning = false);

// Same scene assembly with a uniform drive instead of an antenna.
SceneMap build_scene_uniform_drive(double omega_r_rad_ns, const SpinParams& spin,
                                   double mw_freq_mhz, const FieldSpec& t2_map,
                                   const FieldSpec& brightness, const SceneGeometry& geom,
                                   int nv_axis_index = 0,
                                   const FieldSpec& contrast = FieldSpec::uniform(0.03),
                                   bool contrast_scales_with_detuning = false);

}  // namespace cohmap
