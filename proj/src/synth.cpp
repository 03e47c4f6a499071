#include "cohmap/synth.hpp"

#include <cmath>
#include <sstream>

#include "cohmap/errors.hpp"
#include "cohmap/rng.hpp"
#include "cohmap/units.hpp"

namespace cohmap {

namespace {

double pixel_pe_mean(const SceneMap& scene, const AcquisitionPlan& plan, FrameKind kind,
                     double tau_ns, std::size_t i) {
  if (kind == FrameKind::B) return 0.0;
  const double per_frame = scene.brightness_l0[i] * plan.sequences_per_frame;
  if (kind == FrameKind::L) return per_frame;
  const double omega_r = scene.omega_r_rad_ns[i];
  const double omega_prime = generalized_rabi(omega_r, scene.delta_rad_ns[i]);
  double c = scene.contrast[i];
  if (scene.contrast_scales_with_detuning && omega_prime > 0.0) {
    c *= (omega_r * omega_r) / (omega_prime * omega_prime);
  }
  return per_frame *
         normalized_pl_model(tau_ns, 1.0, c, omega_prime, scene.t2_intrinsic_ns[i]);
}

uint16_t sample_pixel(CounterRng& rng, double pe_mean, const CameraModel& camera) {
  const double pe = static_cast<double>(rng.next_poisson(pe_mean));
  const double counts =
      pe * camera.gain + rng.next_normal(camera.dark_mean, camera.read_noise_sigma);
  const double rounded = std::round(counts);
  if (rounded <= 0.0) return 0;
  if (rounded >= camera.full_well_counts) return static_cast<uint16_t>(camera.full_well_counts);
  return static_cast<uint16_t>(rounded);
}

}  // namespace

double photoelectron_mean(const SceneMap& scene, const AcquisitionPlan& plan,
                          FrameKind kind, double tau_ns, int x, int y) {
  return pixel_pe_mean(scene, plan, kind, tau_ns, scene.index(x, y));
}

double expected_counts(const SceneMap& scene, const AcquisitionPlan& plan,
                       const CameraModel& camera, FrameKind kind, double tau_ns,
                       int x, int y) {
  return camera.dark_mean +
         camera.gain * photoelectron_mean(scene, plan, kind, tau_ns, x, y);
}

FrameStack synthesize_stack(const SceneMap& scene, const AcquisitionPlan& plan,
                            const CameraModel& camera, FrameKind kind, double tau_ns,
                            uint64_t seed, Execution exec) {
  scene.validate();
  plan.validate();
  camera.validate();
  const int tau_index = plan.tau_index(tau_ns);
  const std::size_t n_pixels = scene.size();

  std::vector<double> pe_mean(n_pixels);
  for (std::size_t i = 0; i < n_pixels; ++i) {
    pe_mean[i] = pixel_pe_mean(scene, plan, kind, tau_ns, i);
    const double counts = camera.dark_mean + camera.gain * pe_mean[i];
    const double sigma = std::sqrt(camera.gain * camera.gain * pe_mean[i] +
                                   camera.read_noise_sigma * camera.read_noise_sigma);
    if (counts + 3.0 * sigma > camera.full_well_counts) {
      std::ostringstream msg;
      msg << "saturation: expected " << counts << " counts (sigma " << sigma
          << ") reaches full well " << camera.full_well_counts << " at pixel "
          << i % scene.width << "," << i / scene.width;
      throw ValidationError(msg.str());
    }
  }

  FrameStack stack;
  stack.kind = kind;
  stack.tau_ns = tau_ns;
  stack.tau_index = tau_index;
  stack.seed = seed;
  stack.scene_hash = scene.content_hash();
  stack.frames.assign(plan.frames_per_kind, FrameImage(scene.width, scene.height));

  const uint32_t stream = static_cast<uint32_t>(kind);
  const int n_frames = plan.frames_per_kind;

  if (exec == Execution::Serial) {
    for (int f = 0; f < n_frames; ++f) {
      FrameImage& frame = stack.frames[f];
      for (std::size_t i = 0; i < n_pixels; ++i) {
        CounterRng rng({seed, stream, static_cast<uint32_t>(tau_index),
                        static_cast<uint32_t>(f), static_cast<uint32_t>(i)});
        frame.pixels()[i] = sample_pixel(rng, pe_mean[i], camera);
      }
    }
    return stack;
  }

#pragma omp parallel for collapse(2) schedule(static)
  for (int f = 0; f < n_frames; ++f) {
    for (std::size_t i = 0; i < n_pixels; ++i) {
      CounterRng rng({seed, stream, static_cast<uint32_t>(tau_index),
                      static_cast<uint32_t>(f), static_cast<uint32_t>(i)});
      stack.frames[f].pixels()[i] = sample_pixel(rng, pe_mean[i], camera);
    }
  }
  return stack;
}

}  // namespace cohmap
