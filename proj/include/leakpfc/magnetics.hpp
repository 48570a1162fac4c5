#pragma once

// Two-E-core transformer reluctance network: magnetizing and leakage paths,
// the resulting inductances, and the peak-flux saturation check. Reluctances
// are in ampere-turns per weber.
//
// Naming note: the converter literature reuses I_M for both the line input
// current and the peak magnetizing current; here the magnetizing peak is
// always i_mag_peak_a.

#include <cstdint>

namespace leakpfc::magnetics {

struct CoreSet {
    double r_c;        // central-core reluctance
    double r_o;        // each top/side half reluctance
    double r_g;        // air-gap leakage-path reluctance
    double a_e_m2;     // core effective area
    double b_sat_t;    // saturation flux density
    int n_p;           // primary turns
    int n_s;           // secondary turns

    void validate() const;
};

struct FluxReport {
    double r_m;             // magnetizing-path reluctance
    double r_k;             // leakage-path reluctance
    double l_p_h;           // magnetizing inductance, primary-referred
    double l_l_h;           // total leakage inductance, secondary-referred
    double b_magnetizing_t;
    double b_leakage_t;
    double b_max_t;         // b_magnetizing + b_leakage
    bool saturated;         // b_max >= b_sat
};

struct NetworkReluctances {
    double r_m;
    double r_k;
};

struct Inductances {
    double l_p_h;
    double l_l_h;
};

/// Magnetizing and leakage path reluctances of the two-core network.
/// R_M = 2R_C + R_O + 2(R_C + R_O/2)^2/R_g,  R_K = R_C + R_O/2 + R_g.
NetworkReluctances reluctance_network(const CoreSet& core);

/// L_P = N_P^2/R_M (primary side), L_L = 2*N_S^2/R_K (secondary side, total).
Inductances inductances(const CoreSet& core);

/// Inverse fit so measured inductances can drive the flux check.
NetworkReluctances reluctances_from_inductances(double l_p_h, double l_l_h, int n_p, int n_s);

/// Triangular magnetizing current peak under 50% duty square-wave drive.
double magnetizing_current_peak(double v_p_peak_v, double period_s, double l_p_h);

/// Peak core flux density from the magnetizing and leakage contributions.
FluxReport peak_flux_density(const CoreSet& core, double i_mag_peak_a, double i_sec_peak_a);

/// Same check driven by explicit reluctances instead of core geometry.
FluxReport peak_flux_density(const NetworkReluctances& net, double a_e_m2, double b_sat_t,
                             int n_p, int n_s, double i_mag_peak_a, double i_sec_peak_a);

} // namespace leakpfc::magnetics
