#pragma once

// Flat "dotted.key = value" run configuration with '#' comments. A bare
// [section] header prefixes the keys that follow it, so both spellings work:
//
//   [targets]            # or equivalently
//   p_w = 300            #   targets.p_w = 300
//
// Unknown keys are rejected. Defaults are the prototype component values.

#include "leakpfc/design.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace leakpfc::config {

struct ConverterSection {
    double n = 6.0 / 22.0;
    double l_l_h = 4.0e-6;
    double c_b_f = 6000e-6;
    double l_m_secondary_h = 150e-6;
    int n_p = 22;
    int n_s = 6;
};

struct ControllerSection {
    double k_p = 4.0e-3;
    double k_i = 5.0e-2;
    double k_d = 2.0e-4;
    double v_ref_v = 50.0;
    double update_period_s = 0.0; // 0 = one rectified half line cycle
    double k_max = 0.0;           // 0 = v_ref/(16*V_Imax), capped at 1/8
    double k_initial = 0.0;
    double ramp_time_s = 0.2;
    double precharge_exit_frac = 0.95;
    double precharge_timeout_s = 0.5;
    double inrush_margin = 0.9;
    double dropout_grace_s = 0.5;
    double startup_eps = 0.02;
    int t1_decimation = 1;
};

struct CoreSection {
    double r_c = 0.0; // reluctance triple; all three > 0 selects the
    double r_o = 0.0; // geometry path, otherwise l_p_h/l_l_h are inverted
    double r_g = 0.0;
    double a_e_m2 = 182e-6;
    double b_sat_t = 0.32;
    double l_p_h = 2.0e-3;
    double l_l_h = 4.0e-6;
    double i_mag_peak_a = 0.0; // 0 = derived from drive voltage and L_P
    double i_sec_peak_a = 0.0; // 0 = worst-case peak current bound
};

struct LoadSection {
    std::string type = "resistance"; // resistance | power | none
    double r_ohm = 50.0 * 50.0 / 300.0;
    double p_w = 300.0;
};

struct SimSection {
    double duration_s = 2.0;
    double v_o_initial_v = 50.0;
    int record_decimation = 1;
};

struct DesignSection {
    double margin = 0.0; // fractional headroom applied to the L_L bound
};

struct RunConfig {
    design::DesignTargets targets;
    ConverterSection converter;
    ControllerSection controller;
    CoreSection core;
    LoadSection load;
    SimSection sim;
    DesignSection design;

    design::ConverterParams converter_params() const;
    /// Resolved controller constants (auto fields filled in).
    double effective_k_max() const;
    double effective_update_period_s() const;
};

/// Parses config text; throws config_error on unknown keys or bad values.
RunConfig parse_config(std::string_view text);
RunConfig load_config_file(const std::string& path);

/// Applies "key=value" command-line overrides on top of cfg.
void apply_override(RunConfig& cfg, std::string_view assignment);

/// Canonical echo: every key on its own line, sorted, resolved values.
std::string echo_config(const RunConfig& cfg);

/// (key, documentation) pairs for --help output.
std::vector<std::pair<std::string, std::string>> config_key_docs();

} // namespace leakpfc::config
