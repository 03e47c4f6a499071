#include "cohmap/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cohmap/errors.hpp"
#include "cohmap/units.hpp"

namespace cohmap {

namespace {

int64_t nearest_tick(double t_ns, double grid_ns) {
  // Round to nearest, ties toward the later tick.
  return static_cast<int64_t>(std::floor(t_ns / grid_ns + 0.5));
}

struct Edge {
  int64_t tick;
  uint32_t bit;
  bool rising;
};

}  // namespace

const char* to_string(Channel c) {
  switch (c) {
    case Channel::Laser: return "LASER";
    case Channel::Mw: return "MW";
    case Channel::Camera: return "CAMERA";
  }
  return "?";
}

PulseProgram build_rabi_sequence(double tau_ns, double init_duration_us,
                                 double readout_duration_us, double gap_ns) {
  if (tau_ns < 0.0) throw ValidationError("build_rabi_sequence: tau must be >= 0");
  if (gap_ns < 0.0) throw ValidationError("build_rabi_sequence: gap must be >= 0");
  if (!(init_duration_us > 0.0) || !(readout_duration_us > 0.0)) {
    throw ValidationError("build_rabi_sequence: init and readout durations must be > 0");
  }
  const double init_ns = us_to_ns(init_duration_us);
  const double readout_ns = us_to_ns(readout_duration_us);

  PulseProgram program;
  program.segments.push_back({Channel::Laser, 0.0, init_ns});
  if (tau_ns > 0.0) {
    program.segments.push_back({Channel::Mw, init_ns + gap_ns, tau_ns});
  }
  program.segments.push_back({Channel::Laser, init_ns + gap_ns + tau_ns + gap_ns, readout_ns});
  return program;
}

PulseProgram shift_program(const PulseProgram& program, double dt_ns) {
  PulseProgram out = program;
  for (PulseSegment& seg : out.segments) seg.start_ns += dt_ns;
  return out;
}

PulseProgram compensate_aom(const PulseProgram& program, const DeviceDelays& delays) {
  if (delays.aom_delay_ns < 0.0 || delays.aom_rise_ns < 0.0) {
    throw ValidationError("compensate_aom: delays must be nonnegative");
  }
  PulseProgram out = program;
  for (PulseSegment& seg : out.segments) {
    if (seg.channel != Channel::Laser) continue;
    seg.start_ns -= delays.aom_delay_ns;
    if (seg.start_ns < 0.0) {
      std::ostringstream msg;
      msg << "compensate_aom: laser command at " << seg.start_ns + delays.aom_delay_ns
          << " ns would move to " << seg.start_ns << " ns";
      throw ValidationError(msg.str());
    }
  }
  out.metadata["aom_rise_ns"] = delays.aom_rise_ns;
  out.metadata["aom_delay_compensated_ns"] = delays.aom_delay_ns;
  return out;
}

InstructionList quantize_program(const PulseProgram& program, double grid_ns) {
  if (!(grid_ns > 0.0)) throw ValidationError("quantize: grid must be > 0");

  std::vector<Edge> edges;
  edges.reserve(program.segments.size() * 2);
  for (const PulseSegment& seg : program.segments) {
    const int64_t on = nearest_tick(seg.start_ns, grid_ns);
    const int64_t off = nearest_tick(seg.start_ns + seg.duration_ns, grid_ns);
    if (on == off) {
      std::ostringstream msg;
      msg << "quantize: " << to_string(seg.channel) << " segment at " << seg.start_ns
          << " ns (" << seg.duration_ns << " ns) quantizes to zero duration";
      throw ValidationError(msg.str());
    }
    edges.push_back({on, channel_bit(seg.channel), true});
    edges.push_back({off, channel_bit(seg.channel), false});
  }

  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.tick < b.tick; });

  InstructionList list;
  list.grid_ns = grid_ns;
  uint32_t mask = 0;
  std::size_t i = 0;
  while (i < edges.size()) {
    const int64_t tick = edges[i].tick;
    uint32_t next = mask;
    for (; i < edges.size() && edges[i].tick == tick; ++i) {
      if (edges[i].rising) {
        next |= edges[i].bit;
      } else {
        next &= ~edges[i].bit;
      }
    }
    if (list.instructions.empty() || next != mask) {
      list.instructions.push_back({tick, next});
      mask = next;
    }
  }
  list.total_ticks = static_cast<int64_t>(
      std::ceil(total_duration_ns(program) / grid_ns - 1e-9));
  return list;
}

PulseProgram dequantize_program(const InstructionList& list) {
  PulseProgram program;
  constexpr int kChannels = 3;
  int64_t on_tick[kChannels];
  bool on[kChannels] = {false, false, false};
  for (const Instruction& ins : list.instructions) {
    for (int c = 0; c < kChannels; ++c) {
      const bool bit = (ins.mask >> c) & 1u;
      if (bit && !on[c]) {
        on[c] = true;
        on_tick[c] = ins.tick;
      } else if (!bit && on[c]) {
        on[c] = false;
        program.segments.push_back({static_cast<Channel>(c),
                                    static_cast<double>(on_tick[c]) * list.grid_ns,
                                    static_cast<double>(ins.tick - on_tick[c]) * list.grid_ns});
      }
    }
  }
  std::sort(program.segments.begin(), program.segments.end(),
            [](const PulseSegment& a, const PulseSegment& b) {
              return a.start_ns < b.start_ns ||
                     (a.start_ns == b.start_ns && a.channel < b.channel);
            });
  return program;
}

std::vector<std::string> validate_program(const PulseProgram& program) {
  std::vector<std::string> violations;
  auto overlap = [](const PulseSegment& a, const PulseSegment& b) {
    return a.start_ns < b.start_ns + b.duration_ns && b.start_ns < a.start_ns + a.duration_ns;
  };
  for (std::size_t i = 0; i < program.segments.size(); ++i) {
    const PulseSegment& seg = program.segments[i];
    std::ostringstream msg;
    if (seg.start_ns < 0.0) {
      msg << to_string(seg.channel) << " segment starts at negative time " << seg.start_ns;
      violations.push_back(msg.str());
      continue;
    }
    if (!(seg.duration_ns > 0.0)) {
      msg << to_string(seg.channel) << " segment at " << seg.start_ns
          << " ns has nonpositive duration";
      violations.push_back(msg.str());
      continue;
    }
    for (std::size_t j = i + 1; j < program.segments.size(); ++j) {
      const PulseSegment& other = program.segments[j];
      if (!overlap(seg, other)) continue;
      const bool same = seg.channel == other.channel;
      const bool mw_laser = (seg.channel == Channel::Mw && other.channel == Channel::Laser) ||
                            (seg.channel == Channel::Laser && other.channel == Channel::Mw);
      if (same || mw_laser) {
        std::ostringstream m;
        m << to_string(seg.channel) << " segment at " << seg.start_ns << " ns overlaps "
          << to_string(other.channel) << " segment at " << other.start_ns << " ns";
        violations.push_back(m.str());
      }
    }
  }
  return violations;
}

double total_duration_ns(const PulseProgram& program) {
  if (program.segments.empty()) return 0.0;
  double first = program.segments.front().start_ns;
  double last = 0.0;
  for (const PulseSegment& seg : program.segments) {
    first = std::min(first, seg.start_ns);
    last = std::max(last, seg.start_ns + seg.duration_ns);
  }
  return last - first;
}

void write_instruction_list(std::ostream& os, const InstructionList& list) {
  os << "grid_ns=" << list.grid_ns << "\n";
  for (const Instruction& ins : list.instructions) {
    os << ins.tick << '\t' << std::hex << ins.mask << std::dec << '\n';
  }
}

double max_quantization_error_ns(const PulseProgram& program, double grid_ns) {
  double worst = 0.0;
  for (const PulseSegment& seg : program.segments) {
    for (double t : {seg.start_ns, seg.start_ns + seg.duration_ns}) {
      const double q = static_cast<double>(nearest_tick(t, grid_ns)) * grid_ns;
      worst = std::max(worst, std::abs(q - t));
    }
  }
  return worst;
}

}  // namespace cohmap
