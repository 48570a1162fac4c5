#pragma once

// Closed-form sizing of the converter: turns ratio, leakage inductance bound,
// power capability, peak current and maximum control gain. All quantities are
// SI (volts, amperes, henries, hertz, seconds, watts). Voltages and currents
// on the power-stage side are referred to the transformer secondary; the only
// place the primary/secondary and half-bridge scaling appears is
// timing::rectified_scaled_input.

#include <cmath>

namespace leakpfc::design {

struct DesignTargets {
    double p_w = 300.0;        // rated output power
    double v_o_v = 50.0;       // DC output
    double v_ac_vrms = 240.0;  // line input, rms
    double f_ac_hz = 50.0;
    double f_s_hz = 50e3;      // switching frequency

    double period_s() const { return 1.0 / f_s_hz; }
    /// Throws infeasible_design_error on non-positive fields or f_s < 100*f_ac.
    void validate() const;
};

struct ConverterParams {
    DesignTargets targets;
    double n = 6.0 / 22.0;        // turns ratio N_S/N_P
    double l_l_h = 4.0e-6;        // total leakage, secondary-referred
    double c_b_f = 6000e-6;       // bulk capacitor
    double l_m_secondary_h = 0.0; // magnetizing, secondary-referred; 0 = ideal

    /// Peak of the secondary-referred rectified input, sqrt(2)*V_AC*n/2.
    double v_i_max_v() const;
    void validate() const;
};

/// Largest turns ratio that keeps the peak secondary voltage at or below V_O.
double max_turns_ratio(double v_o_v, double v_ac_vrms);

/// Leakage bound so the converter can deliver targets.p_w.
double max_leakage_inductance(const DesignTargets& targets, double n);

/// Power capability of a given stage; inverse of max_leakage_inductance.
double max_power(double v_ac_vrms, double n, double v_o_v, double f_s_hz, double l_l_h);

/// Worst-case leakage-inductor peak current, V_O*T/(8*L_L).
double peak_leakage_current(double v_o_v, double period_s, double l_l_h);

/// Largest control gain K with a real CCM timing solution at v_i_max.
double max_control_gain(double v_o_v, double v_i_max_v);

} // namespace leakpfc::design
