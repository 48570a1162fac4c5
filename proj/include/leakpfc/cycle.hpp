#pragma once

// Per-half-switching-period physics of the secondary-referred model: the
// shorting switch ramps the leakage-inductance current, the output bridge
// carries it into the bulk capacitor when the switch opens. Closed forms for
// both conduction modes plus an event-driven piecewise-linear simulator of
// one full period used as the brute-force oracle.

#include "leakpfc/timing.hpp"

#include <vector>

namespace leakpfc::cycle {

using timing::Mode;

struct HalfPeriodInput {
    double v_i_v;          // square-wave amplitude, secondary-referred
    double v_o_v;          // bulk voltage, assumed constant over T/2
    double t1_s;           // shorting-switch on time
    double t_s;            // full switching period
    double l_l_h;          // total leakage inductance
    double i_start_a = 0;  // |I_L| at period start (0 in DCM, I_E in CCM)

    void validate() const;
};

struct HalfPeriodResult {
    double i_p_a;      // peak leakage current
    double i_e_a;      // end current (CCM); 0 in DCM
    double t2_s;       // current fall time after the switch opens
    double i_l_avg_a;  // polarity-corrected average input current I_L*
    double q_out_c;    // charge delivered through the rectifier per T/2
    Mode mode;
};

/// DCM closed form (current returns to zero within the half period).
/// Throws mode_violation_error when T1 + T2 would exceed T/2.
HalfPeriodResult dcm_half_period(const HalfPeriodInput& in);

/// Steady-state CCM closed form. Throws mode_violation_error when the
/// implied end current is negative (the operating point is actually DCM).
HalfPeriodResult ccm_half_period(const HalfPeriodInput& in);

struct MicroTrace {
    std::vector<double> t_s;
    std::vector<double> i_l_a;    // leakage current, bipolar
    std::vector<double> i_x_a;    // transformer input current (I_L + magnetizing)
    std::vector<double> i_y_a;    // rectified output current, >= 0
    std::vector<double> i_mag_a;  // magnetizing current (zeros when not modeled)
};

struct MicroResult {
    MicroTrace trace;
    HalfPeriodResult aggregates;  // per-T/2 aggregates averaged over the period
    double i_end_a;               // signed I_L at t = T
};

/// Integrates one full period T with both polarities. Segment boundaries
/// (switch opening, current zero crossings, T/2) are located analytically, so
/// the aggregates are exact up to floating point; dt only sets the sampling
/// density of the returned trace. Requires dt <= T/2000.
MicroResult micro_simulate(const HalfPeriodInput& in, double dt_s,
                           double l_m_secondary_h = 0.0);

struct ConvergedMicro {
    MicroResult result;
    int periods;  // periods simulated until the aggregates stabilized
};

/// Repeats micro_simulate period to period (carrying the end current) until
/// I_L* and Q_out change by less than rel_tol, starting from in.i_start.
ConvergedMicro micro_converge(const HalfPeriodInput& in, double dt_s,
                              double l_m_secondary_h = 0.0,
                              int max_periods = 50, double rel_tol = 1e-9);

} // namespace leakpfc::cycle
