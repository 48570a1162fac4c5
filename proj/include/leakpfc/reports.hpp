#pragma once

// Command-level entry points shared by the CLI and the acceptance suite:
// each builds the numbers for one subcommand and renders the key-value text
// the tool prints. Exit codes: 0 ok, 1 internal, 2 infeasible design,
// 3 simulation fault, 64 usage.

#include "leakpfc/analysis.hpp"
#include "leakpfc/config.hpp"
#include "leakpfc/magnetics.hpp"
#include "leakpfc/sim.hpp"

#include <optional>
#include <string>

namespace leakpfc::reports {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_infeasible = 2;
inline constexpr int exit_sim_fault = 3;
inline constexpr int exit_usage = 64;

struct DesignReport {
    double n_max;
    double n_chosen;
    bool n_feasible;
    double l_l_bound_h;          // exact Eq.-style bound
    double l_l_bound_margined_h; // bound * (1 - design.margin)
    double l_l_configured_h;
    bool l_l_feasible;
    double p_max_w;              // capability at the configured leakage
    double i_p_max_a;            // peak current at the effective leakage
    double v_i_max_v;
    double k_max;
    double g_m_max_s;
};

DesignReport design_report(const config::RunConfig& cfg);
std::string render_design_report(const DesignReport& r);

struct MagneticsReport {
    magnetics::FluxReport flux;
    double i_mag_peak_a; // currents actually used (config or derived)
    double i_sec_peak_a;
    bool geometry_path;  // reluctances given directly vs fitted
};

MagneticsReport magnetics_report(const config::RunConfig& cfg);
std::string render_magnetics_report(const MagneticsReport& r);

struct CycleReport {
    cycle::HalfPeriodResult closed;
    std::optional<cycle::HalfPeriodResult> micro;
    double rel_diff_i_l_avg = 0.0;
    double rel_diff_q_out = 0.0;
};

/// mode_name: "dcm", "ccm" or "auto" (selects by validity).
CycleReport cycle_report(const config::RunConfig& cfg, double v_i_v, double t1_s,
                         const std::string& mode_name, bool with_micro,
                         cycle::MicroTrace* micro_trace_out = nullptr);
std::string render_cycle_report(const CycleReport& r);

struct TraceMetrics {
    double mean_v_o_v;
    double ripple_pp_v;
    double power_factor;
    double thd;
    double p_active_in_w;
    double dcm_fraction_min;  // min/max over the quarter cycles in the window
    double dcm_fraction_max;
    double dcm_fraction_mean;
    int cycles_analyzed;
};

/// Steady-state metrics over the last `last_cycles` full line cycles.
TraceMetrics trace_metrics(const sim::WaveformTrace& trace, double f_ac_hz, int last_cycles);
std::string render_trace_metrics(const TraceMetrics& m);

struct SimulateReport {
    sim::SimResult result;
    std::optional<TraceMetrics> metrics; // absent when the run faulted early
};

SimulateReport simulate_report(const config::RunConfig& cfg, bool startup, int analyze_cycles = 10);
std::string render_simulate_report(const SimulateReport& r);

/// Meta lines (resolved config echo) for CSV headers; empty when no_meta.
std::vector<std::string> csv_meta(const config::RunConfig& cfg, bool no_meta);

} // namespace leakpfc::reports
