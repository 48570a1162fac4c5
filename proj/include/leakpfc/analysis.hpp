#pragma once

// Post-processing of waveform traces: RMS, active power, power factor,
// fundamental-referenced harmonic spectrum / THD, and peak-to-peak ripple.
// The spectrum projects directly onto sin/cos at each harmonic (traces have
// awkward lengths and only a few dozen bins are needed); the projection runs
// one OpenMP thread per harmonic, with a serial reference kept for testing.

#include <span>
#include <vector>

namespace leakpfc::analysis {

struct PowerReport {
    double v_rms;
    double i_rms;
    double p_active_w;
    double s_apparent_va;
    double power_factor; // p_active / s_apparent, sign of p_active
};

struct HarmonicReport {
    double fundamental_rms;
    std::vector<double> harmonics_rms; // orders 2..N, index 0 = 2nd harmonic
    double thd;                        // sqrt(sum harmonics^2)/fundamental
    double f_fund_hz;
};

/// RMS / active power / power factor of a sampled (v, i) pair. When
/// f_fund_hz > 0 the window must cover an integer number of fundamental
/// periods (throws windowing_error otherwise).
PowerReport power_metrics(std::span<const double> v, std::span<const double> i,
                          double dt_s = 0.0, double f_fund_hz = 0.0);

/// Discrete Fourier projection onto harmonics 1..max_order of f_fund.
/// Requires an integer number of fundamental periods and
/// max_order*f_fund below the Nyquist rate.
HarmonicReport harmonic_spectrum(std::span<const double> x, double dt_s,
                                 double f_fund_hz, int max_order = 40);

/// Serial reference for the parallel projection; bit-identical results.
HarmonicReport harmonic_spectrum_serial(std::span<const double> x, double dt_s,
                                        double f_fund_hz, int max_order = 40);

/// max - min over the window; the window must cover at least one ripple
/// period (throws windowing_error otherwise).
double ripple_pp(std::span<const double> v_o, double dt_s, double f_ripple_hz);

} // namespace leakpfc::analysis
