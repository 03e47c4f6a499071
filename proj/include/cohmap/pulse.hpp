#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace cohmap {

enum class Channel : int { Laser = 0, Mw = 1, Camera = 2 };

constexpr uint32_t channel_bit(Channel c) { return 1u << static_cast<int>(c); }
const char* to_string(Channel c);

// One TTL-high interval on a channel.
struct PulseSegment {
  Channel channel = Channel::Laser;
  double start_ns = 0.0;
  double duration_ns = 0.0;
};

struct PulseProgram {
  std::vector<PulseSegment> segments;
  int repeat_count = 1;
  // Carries uncompensated device facts, e.g. the AOM rise time.
  std::map<std::string, double> metadata;
};

struct DeviceDelays {
  double aom_delay_ns = 130.0;  // fixed optical lag, compensated by shifting commands
  double aom_rise_ns = 35.0;    // edge shape effect, surfaced as metadata only
};

struct Instruction {
  int64_t tick = 0;
  uint32_t mask = 0;  // channel state from this tick until the next instruction
};

struct InstructionList {
  double grid_ns = 3.3;
  std::vector<Instruction> instructions;
  int64_t total_ticks = 0;
};

// Laser init pulse, a gap, the MW pulse of length tau, another gap, then the
// laser readout pulse. tau == 0 yields the same timing skeleton without an
// MW segment. Throws ValidationError on negative gap or tau.
PulseProgram build_rabi_sequence(double tau_ns, double init_duration_us,
                                 double readout_duration_us, double gap_ns);

// Translates every segment by dt_ns.
PulseProgram shift_program(const PulseProgram& program, double dt_ns);

// Advances every laser segment by aom_delay_ns so the optical edges land at
// the programmed times. Durations are untouched; the rise time is recorded
// in metadata. Throws ValidationError if a command would move before t = 0.
PulseProgram compensate_aom(const PulseProgram& program, const DeviceDelays& delays);

// Rounds every edge to the nearest grid tick (ties toward the later tick)
// and merges simultaneous edges into single masked instructions. Throws
// ValidationError if rounding collapses a segment to zero duration.
InstructionList quantize_program(const PulseProgram& program, double grid_ns);

// Reconstructs the segment view of an instruction list (ticks * grid).
PulseProgram dequantize_program(const InstructionList& list);

// Empty result means the program is well-formed. Reported violations:
// same-channel overlap, MW/laser overlap, negative start times,
// nonpositive durations.
std::vector<std::string> validate_program(const PulseProgram& program);

// End of the last segment minus start of the first; 0 for an empty program.
double total_duration_ns(const PulseProgram& program);

// Line-oriented export: "grid_ns=<g>" header, then one "tick<TAB>mask-hex"
// line per instruction. Bit 0 = LASER, bit 1 = MW, bit 2 = CAMERA.
void write_instruction_list(std::ostream& os, const InstructionList& list);

// Largest |quantized - requested| edge error, in ns.
double max_quantization_error_ns(const PulseProgram& program, double grid_ns);

}  // namespace cohmap
