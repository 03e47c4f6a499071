#include "cohmap/scene.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

#include "cohmap/errors.hpp"
#include "cohmap/rng.hpp"
#include "cohmap/units.hpp"

namespace cohmap {

void AntennaModel::validate() const {
  if (!(loop_radius_um > 0.0)) throw ValidationError("antenna.loop_radius_um must be > 0");
  if (!(standoff_um > 0.0)) throw ValidationError("antenna.standoff_um must be > 0");
  if (n_segments < 16) throw ValidationError("antenna.n_segments must be >= 16");
  if (!(drive_scale > 0.0)) throw ValidationError("antenna.drive_scale must be > 0");
}

FieldSpec FieldSpec::uniform(double v) {
  FieldSpec s;
  s.kind = Kind::Uniform;
  s.value = v;
  return s;
}

double FieldSpec::eval(int ix, int iy, const SceneGeometry& geom) const {
  switch (kind) {
    case Kind::Uniform:
      return value;
    case Kind::GradientX: {
      const double t = geom.width > 1 ? double(ix) / double(geom.width - 1) : 0.0;
      return start + (stop - start) * t;
    }
    case Kind::GradientY: {
      const double t = geom.height > 1 ? double(iy) / double(geom.height - 1) : 0.0;
      return start + (stop - start) * t;
    }
    case Kind::Table:
      return table[static_cast<std::size_t>(iy) * geom.width + ix];
    case Kind::Radial: {
      const double dx = geom.x_um(ix) - center_um[0];
      const double dy = geom.y_um(iy) - center_um[1];
      const double r2 = dx * dx + dy * dy;
      const double f2 = falloff_um * falloff_um;
      return outer + (inner - outer) * std::exp(-r2 / f2);
    }
    case Kind::Gaussian: {
      const double dx = geom.x_um(ix) - center_um[0];
      const double dy = geom.y_um(iy) - center_um[1];
      const double w0 = 0.5 * e2_diameter_um;  // 1/e^2 radius
      return floor + peak * std::exp(-2.0 * (dx * dx + dy * dy) / (w0 * w0));
    }
  }
  return 0.0;
}

void FieldSpec::validate(const SceneGeometry& geom, const std::string& name) const {
  if (kind == Kind::Table &&
      table.size() != static_cast<std::size_t>(geom.width) * geom.height) {
    std::ostringstream msg;
    msg << name << ": table has " << table.size() << " entries, scene needs "
        << static_cast<std::size_t>(geom.width) * geom.height;
    throw ValidationError(msg.str());
  }
  if (kind == Kind::Radial && !(falloff_um > 0.0)) {
    throw ValidationError(name + ": radial falloff_um must be > 0");
  }
  if (kind == Kind::Gaussian && !(e2_diameter_um > 0.0)) {
    throw ValidationError(name + ": gaussian e2_diameter_um must be > 0");
  }
}

void SceneMap::validate() const {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (width <= 0 || height <= 0) throw ValidationError("scene: dimensions must be positive");
  if (omega_r_rad_ns.size() != n || delta_rad_ns.size() != n || t2_intrinsic_ns.size() != n ||
      brightness_l0.size() != n || contrast.size() != n) {
    throw ValidationError("scene: per-pixel arrays must all match the scene dimensions");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (omega_r_rad_ns[i] < 0.0) throw ValidationError("scene: omega_r must be >= 0");
    if (!(t2_intrinsic_ns[i] > 0.0)) throw ValidationError("scene: t2_intrinsic must be > 0");
    if (brightness_l0[i] < 0.0) throw ValidationError("scene: brightness must be >= 0");
    if (contrast[i] < 0.0) throw ValidationError("scene: contrast must be >= 0");
  }
}

uint64_t SceneMap::content_hash() const {
  // FNV-1a over the raw plane bytes plus dimensions; identifies ground truth
  // in manifests.
  uint64_t h = 1469598103934665603ULL;
  auto mix_bytes = [&h](const void* p, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  mix_bytes(&width, sizeof width);
  mix_bytes(&height, sizeof height);
  mix_bytes(&pixel_pitch_um, sizeof pixel_pitch_um);
  for (const auto* plane : {&omega_r_rad_ns, &delta_rad_ns, &t2_intrinsic_ns,
                            &brightness_l0, &contrast}) {
    mix_bytes(plane->data(), plane->size() * sizeof(double));
  }
  const unsigned char flag = contrast_scales_with_detuning ? 1 : 0;
  mix_bytes(&flag, 1);
  return h;
}

void CameraModel::validate() const {
  if (!(gain > 0.0)) throw ValidationError("camera.gain must be > 0");
  if (read_noise_sigma < 0.0) throw ValidationError("camera.read_noise_sigma must be >= 0");
  if (dark_mean < 0.0 || dark_mean >= full_well_counts) {
    throw ValidationError("camera.dark_mean must be in [0, full_well_counts)");
  }
  if (full_well_counts > 65535) throw ValidationError("camera.full_well_counts must be <= 65535");
  if (bit_depth != 16) throw ValidationError("camera.bit_depth must be 16");
}

void AcquisitionPlan::validate() const {
  if (tau_list_ns.empty()) throw ValidationError("plan.tau_list_ns must be nonempty");
  if (tau_list_ns.front() < 0.0) throw ValidationError("plan.tau_list_ns must be nonnegative");
  for (std::size_t i = 1; i < tau_list_ns.size(); ++i) {
    if (!(tau_list_ns[i] > tau_list_ns[i - 1])) {
      throw ValidationError("plan.tau_list_ns must be strictly increasing");
    }
  }
  if (sequences_per_frame < 1) throw ValidationError("plan.sequences_per_frame must be >= 1");
  if (frames_per_kind < 1) throw ValidationError("plan.frames_per_kind must be >= 1");
  if (!(exposure_ms > 0.0)) throw ValidationError("plan.exposure_ms must be > 0");
  if (!(init_duration_us > 0.0)) throw ValidationError("plan.init_duration_us must be > 0");
}

int AcquisitionPlan::tau_index(double tau_ns) const {
  for (std::size_t i = 0; i < tau_list_ns.size(); ++i) {
    if (tau_list_ns[i] == tau_ns) return static_cast<int>(i);
  }
  std::ostringstream msg;
  msg << "tau " << tau_ns << " ns is not in the acquisition plan";
  throw ValidationError(msg.str());
}

const char* to_string(FrameKind k) {
  switch (k) {
    case FrameKind::M: return "M";
    case FrameKind::L: return "L";
    case FrameKind::B: return "B";
  }
  return "?";
}

FrameKind frame_kind_from_string(const std::string& s) {
  if (s == "M") return FrameKind::M;
  if (s == "L") return FrameKind::L;
  if (s == "B") return FrameKind::B;
  throw ValidationError("unknown frame kind '" + s + "'");
}

MwFieldSample mw_field_at(const AntennaModel& antenna, double x_um, double y_um) {
  // Midpoint rule on the circular Biot-Savart integrand: nodes at segment
  // midpoints with exact tangents and arc-length weights. For a periodic
  // analytic integrand this converges geometrically, so modest n_segments
  // already reproduce the on-axis closed form to machine precision.
  const double r_loop = antenna.loop_radius_um;
  const double dtheta = kTwoPi / antenna.n_segments;
  double bx = 0.0, by = 0.0, bz = 0.0;
  for (int k = 0; k < antenna.n_segments; ++k) {
    const double theta = (k + 0.5) * dtheta;
    const double c = std::cos(theta), s = std::sin(theta);
    // dl = R dtheta (-sin, cos, 0); r points from the wire to the field point.
    const double dlx = -r_loop * dtheta * s;
    const double dly = r_loop * dtheta * c;
    const double rx = x_um - (antenna.loop_center_um[0] + r_loop * c);
    const double ry = y_um - (antenna.loop_center_um[1] + r_loop * s);
    const double rz = -antenna.standoff_um;
    const double r2 = rx * rx + ry * ry + rz * rz;
    const double inv_r3 = 1.0 / (r2 * std::sqrt(r2));
    bx += dly * rz * inv_r3;
    by += -dlx * rz * inv_r3;
    bz += (dlx * ry - dly * rx) * inv_r3;
  }
  MwFieldSample out;
  out.magnitude = std::sqrt(bx * bx + by * by + bz * bz);
  if (out.magnitude > 0.0) {
    out.direction = {bx / out.magnitude, by / out.magnitude, bz / out.magnitude};
  }
  return out;
}

namespace {

SceneMap assemble_scene(const SpinParams& spin, double mw_freq_mhz,
                        const FieldSpec& t2_map, const FieldSpec& brightness,
                        const SceneGeometry& geom, int nv_axis_index,
                        const FieldSpec& contrast, bool contrast_scaled,
                        const std::vector<double>& omega_r) {
  spin.validate();
  if (geom.width <= 0 || geom.height <= 0) {
    throw ValidationError("scene: dimensions must be positive");
  }
  if (!(geom.pixel_pitch_um > 0.0)) throw ValidationError("scene: pixel_pitch_um must be > 0");
  if (nv_axis_index < 0 || nv_axis_index > 3) {
    throw ValidationError("scene: nv_axis_index must be in [0, 3]");
  }
  t2_map.validate(geom, "scene.t2_map");
  brightness.validate(geom, "scene.brightness");
  contrast.validate(geom, "scene.contrast");

  const NVOrientation& axis = nv_orientations()[nv_axis_index];
  const double b_proj = std::abs(spin.bias_mt[0] * axis.axis[0] +
                                 spin.bias_mt[1] * axis.axis[1] +
                                 spin.bias_mt[2] * axis.axis[2]);
  const double f_plus = resonance_pair_mhz(spin, b_proj).second;
  const double delta = mhz_to_rad_ns(mw_freq_mhz - f_plus);

  SceneMap scene;
  scene.width = geom.width;
  scene.height = geom.height;
  scene.pixel_pitch_um = geom.pixel_pitch_um;
  scene.contrast_scales_with_detuning = contrast_scaled;
  const std::size_t n = static_cast<std::size_t>(geom.width) * geom.height;
  scene.omega_r_rad_ns = omega_r;
  scene.delta_rad_ns.assign(n, delta);
  scene.t2_intrinsic_ns.resize(n);
  scene.brightness_l0.resize(n);
  scene.contrast.resize(n);
  for (int y = 0; y < geom.height; ++y) {
    for (int x = 0; x < geom.width; ++x) {
      const std::size_t i = scene.index(x, y);
      const double t2 = t2_map.eval(x, y, geom);
      if (!(t2 > 0.0)) {
        std::ostringstream msg;
        msg << "scene.t2_map yields nonpositive value " << t2 << " at pixel (" << x << ", "
            << y << ")";
        throw ValidationError(msg.str());
      }
      scene.t2_intrinsic_ns[i] = t2;
      const double b = brightness.eval(x, y, geom);
      if (b < 0.0) {
        std::ostringstream msg;
        msg << "scene.brightness yields negative value " << b << " at pixel (" << x << ", "
            << y << ")";
        throw ValidationError(msg.str());
      }
      scene.brightness_l0[i] = b;
      const double c = contrast.eval(x, y, geom);
      if (c < 0.0) throw ValidationError("scene.contrast yields negative value");
      scene.contrast[i] = c;
    }
  }
  scene.validate();
  return scene;
}

}  // namespace

SceneMap build_scene(const AntennaModel& antenna, const SpinParams& spin,
                     double mw_freq_mhz, const FieldSpec& t2_map,
                     const FieldSpec& brightness, const SceneGeometry& geom,
                     int nv_axis_index, const FieldSpec& contrast,
                     bool contrast_scales_with_detuning) {
  antenna.validate();
  if (nv_axis_index < 0 || nv_axis_index > 3) {
    throw ValidationError("scene: nv_axis_index must be in [0, 3]");
  }
  const NVOrientation& axis = nv_orientations()[nv_axis_index];
  const std::size_t n = static_cast<std::size_t>(geom.width) * geom.height;
  std::vector<double> omega_r(n);
  for (int y = 0; y < geom.height; ++y) {
    for (int x = 0; x < geom.width; ++x) {
      const MwFieldSample f = mw_field_at(antenna, geom.x_um(x), geom.y_um(y));
      // Only the drive component perpendicular to the NV axis drives the
      // transition.
      const double along = f.direction[0] * axis.axis[0] + f.direction[1] * axis.axis[1] +
                           f.direction[2] * axis.axis[2];
      const double perp = std::sqrt(std::max(0.0, 1.0 - along * along));
      omega_r[static_cast<std::size_t>(y) * geom.width + x] =
          antenna.drive_scale * f.magnitude * perp;
    }
  }
  return assemble_scene(spin, mw_freq_mhz, t2_map, brightness, geom, nv_axis_index, contrast,
                        contrast_scales_with_detuning, omega_r);
}

SceneMap build_scene_uniform_drive(double omega_r_rad_ns, const SpinParams& spin,
                                   double mw_freq_mhz, const FieldSpec& t2_map,
                                   const FieldSpec& brightness, const SceneGeometry& geom,
                                   int nv_axis_index, const FieldSpec& contrast,
                                   bool contrast_scales_with_detuning) {
  if (omega_r_rad_ns < 0.0) throw ValidationError("scene: uniform omega_r must be >= 0");
  const std::size_t n = static_cast<std::size_t>(geom.width) * geom.height;
  std::vector<double> omega_r(n, omega_r_rad_ns);
  return assemble_scene(spin, mw_freq_mhz, t2_map, brightness, geom, nv_axis_index, contrast,
                        contrast_scales_with_detuning, omega_r);
}

}  // namespace cohmap
