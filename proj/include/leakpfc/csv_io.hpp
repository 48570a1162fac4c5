#pragma once

// CSV emit/ingest for traces and sweeps. '.' decimal separator, SI base
// units, lowercase snake-case headers. Numbers are written with the shortest
// representation that round-trips, so outputs are byte-stable. Metadata rides
// in '#'-prefixed comment lines ahead of the header.

#include "leakpfc/cycle.hpp"
#include "leakpfc/sim.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace leakpfc::csv {

/// Shortest round-trip decimal form of v.
std::string format_double(double v);

void write_waveform_csv(std::ostream& os, const sim::WaveformTrace& trace,
                        const std::vector<std::string>& meta_lines);

void write_micro_csv(std::ostream& os, const cycle::MicroTrace& trace,
                     const std::vector<std::string>& meta_lines);

void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows,
                     const std::vector<std::string>& meta_lines);

struct ParsedWaveform {
    sim::WaveformTrace trace;
    std::vector<std::string> meta_lines; // without the leading "# "
};

/// Reads a waveform CSV produced by write_waveform_csv.
ParsedWaveform read_waveform_csv(std::istream& is);

} // namespace leakpfc::csv
