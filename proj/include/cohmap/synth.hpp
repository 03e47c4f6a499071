#pragma once

#include <cstdint>
#include <vector>

#include "cohmap/scene.hpp"

namespace cohmap {

// Kernels come in two flavors: a plain-loop serial reference and the OpenMP
// version used in production. They must produce bit-identical results; the
// tests assert it and the benchmark compares their throughput.
enum class Execution { Serial, Parallel };

// Expected photoelectrons accumulated in one camera frame at a pixel:
// zero for B, sequences * brightness for L, and the normalized-PL model
// scaling that for M.
double photoelectron_mean(const SceneMap& scene, const AcquisitionPlan& plan,
                          FrameKind kind, double tau_ns, int x, int y);

// Noiseless forward model in counts: dark + gain * photoelectron mean.
double expected_counts(const SceneMap& scene, const AcquisitionPlan& plan,
                       const CameraModel& camera, FrameKind kind, double tau_ns,
                       int x, int y);

// Draws frames_per_kind camera frames. Each pixel sample is
// clamp(round(Poisson(pe mean) * gain + Normal(dark, read noise)), 0, full well),
// with a counter RNG keyed on (seed, kind, tau index, frame, pixel) so the
// output is a pure function of its arguments. Throws ValidationError when
// the expected counts come within 3 sigma of full well (saturation guard).
FrameStack synthesize_stack(const SceneMap& scene, const AcquisitionPlan& plan,
                            const CameraModel& camera, FrameKind kind, double tau_ns,
                            uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace cohmap
