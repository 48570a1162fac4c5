#pragma once

// Per-instant timing law of the digital controller: conduction-mode selection
// and shorting-period T1 from (K, V_I, V_O), plus the slow PID loop that
// adjusts K to regulate V_O.
//
// K is the dimensionless control gain, K = G_M * L_L / T, where G_M is the
// commanded input conductance (I_L* = G_M * V_I). Working in K removes the
// leakage inductance from the timing math.

#include "leakpfc/design.hpp"

#include <utility>

namespace leakpfc::timing {

enum class Mode { dcm, ccm };

struct ControlGain {
    double k = 0.0;
    double k_max = 0.125; // Eq.-18 boundary degenerates above 1/8

    /// Throws infeasible_design_error unless 0 <= k <= k_max <= 1/8.
    void validate() const;
};

struct TimingCommand {
    Mode mode;
    double t1_s;
    double t_s;
};

/// Secondary-referred rectified input: |v_m| * n / 2 (turns ratio and the
/// half-bridge divider applied here, and only here).
double rectified_scaled_input(double v_m_v, double n);

/// DCM iff V_O*(1 - 4K) >= V_I (ties resolve to DCM; the timing formulas
/// coincide there). Throws boost_violation_error when V_I >= V_O.
Mode select_mode(double v_i_v, double v_o_v, double k);

/// DCM shorting period, T*sqrt(K*(V_O - V_I)/V_O). Not capped at T/4: its
/// natural bound is T*sqrt(K) at the zero crossing.
double t1_dcm(double k, double v_i_v, double v_o_v, double t_s);

/// CCM shorting period, (T/4)*(1 - sqrt(1 - 16*K*V_I/V_O)). Throws
/// gain_saturation_error when the radicand is negative (no real solution);
/// composite callers clamp that case to T/4 instead.
double t1_ccm(double k, double v_i_v, double v_o_v, double t_s);

/// Mode + T1 for one instant of the line cycle. Radicand saturation clamps
/// the CCM branch to T1 = T/4 (maximum power transfer).
TimingCommand timing_for_instant(double v_m_v, double v_o_v, double k,
                                 const design::ConverterParams& params);

struct PidState {
    // gains act on volts of error; output is the dimensionless K
    double k_p = 4.0e-3;
    double k_i = 5.0e-2; // per second
    double k_d = 2.0e-4; // seconds
    double v_ref_v = 50.0;
    double update_period_s = 0.01; // one rectified half line cycle at 50 Hz
    double integral = 0.0;
    double prev_error_v = 0.0;

    /// Seed so the first output equals k_initial at zero error.
    void seed(double k_initial, double v_o_initial_v);
};

/// One PID update. Positive error (overvoltage) decreases K. Output clamped
/// to [0, k_max]; the integral is back-calculated onto the clamp so the
/// accumulator can never wind beyond it.
std::pair<PidState, double> pid_step(PidState state, double v_o_meas_v, double k_max);

} // namespace leakpfc::timing
