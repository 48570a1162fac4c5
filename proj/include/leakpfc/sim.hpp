#pragma once

// Closed-loop simulation over many AC line cycles. The plant advances once
// per half switching period using the closed-form half-period results; the
// PID updates once per rectified half line cycle on the averaged output
// voltage, and the timing generator works from that same averaged
// measurement (ripple-blind mode selection). The true bulk-capacitor state
// only takes the delivered charge.
//
// Startup runs in three phases: gated rectifier precharge (shorting switch
// held off, inverter driven only when the predicted inrush peak stays inside
// the configured fraction of the V_O*T/(8*L_L) bound), a linear gain ramp,
// then normal regulation.

#include "leakpfc/config.hpp"
#include "leakpfc/cycle.hpp"
#include "leakpfc/design.hpp"
#include "leakpfc/timing.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace leakpfc::sim {

enum class TraceMode : std::uint8_t { idle = 0, dcm = 1, ccm = 2, rect = 3 };

const char* trace_mode_name(TraceMode m);
TraceMode trace_mode_from_name(std::string_view name);

struct LoadConfig {
    enum class Kind { none, resistance, power };
    Kind kind = Kind::resistance;
    double r_ohm = 50.0 * 50.0 / 300.0;
    double p_w = 300.0;

    double current_a(double v_o_v) const;
};

struct ControllerConfig {
    timing::PidState pid; // gains, reference and update period
    double k_max = 0.125;
    double k_initial = 0.0;
    double ramp_time_s = 0.2;
    double precharge_exit_frac = 0.95;
    double precharge_timeout_s = 0.5;
    double inrush_margin = 0.9;
    double dropout_grace_s = 0.5;
    double startup_eps = 0.02;
    int t1_decimation = 1;
};

struct PlantConfig {
    design::ConverterParams params;
    LoadConfig load;
    ControllerConfig controller;
    double v_o_initial_v = 50.0;
    double duration_s = 2.0;
    int record_decimation = 1;
};

/// Builds a PlantConfig from a parsed run configuration.
PlantConfig plant_from_config(const config::RunConfig& cfg);

struct WaveformTrace {
    std::vector<double> t_s;
    std::vector<double> v_m_v;      // mains voltage
    std::vector<double> v_r_v;      // rectified mains
    std::vector<double> v_i_v;      // secondary-referred input
    std::vector<double> i_m_a;      // reconstructed line current
    std::vector<double> v_o_v;      // bulk capacitor voltage (true state)
    std::vector<double> k;          // control gain in effect
    std::vector<TraceMode> mode;
    std::vector<double> t1_s;
    std::vector<double> i_l_avg_a;  // polarity-corrected average leakage current

    std::size_t size() const { return t_s.size(); }
};

struct SimStats {
    double peak_abs_i_l_a = 0.0;
    double q_out_total_c = 0.0;
    double load_charge_c = 0.0;
    double v_o_final_v = 0.0;
    double precharge_end_s = -1.0; // -1 = phase did not occur
    double ramp_end_s = -1.0;
    bool faulted = false;
    std::string fault_reason;
    double fault_time_s = -1.0;
};

struct SimResult {
    WaveformTrace trace;
    SimStats stats;
};

/// Steady operation from a warm initial state. Starting below the boost
/// threshold V_Imax*(1+eps) without the startup sequence is a fault, as is a
/// boost dropout persisting longer than controller.dropout_grace_s.
SimResult run_closed_loop(const PlantConfig& cfg);

/// Soft start from an arbitrary (possibly zero) initial bulk voltage.
SimResult run_startup(const PlantConfig& cfg);

struct SweepRow {
    double angle_deg;
    double fraction;
    double t1_over_t;
    timing::Mode mode;
};

/// T1/T over one quarter line cycle for each load fraction f (K = f*K_max).
std::vector<SweepRow> sweep_t1_curves(const design::ConverterParams& params, double v_o_v,
                                      double k_max, std::span<const double> fractions,
                                      int points_per_quarter = 361);

} // namespace leakpfc::sim
