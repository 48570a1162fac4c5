#include "leakpfc/magnetics.hpp"

#include "leakpfc/errors.hpp"

namespace leakpfc::magnetics {

void CoreSet::validate() const {
    if (!(r_c > 0.0) || !(r_o > 0.0) || !(r_g >= 0.0)) {
        throw infeasible_design_error("core reluctances must be positive");
    }
    if (!(a_e_m2 > 0.0)) {
        throw infeasible_design_error("a_e_m2 must be > 0");
    }
    if (!(b_sat_t > 0.0)) {
        throw infeasible_design_error("b_sat_t must be > 0");
    }
    if (n_p <= 0 || n_s <= 0) {
        throw infeasible_design_error("turn counts must be positive integers");
    }
}

NetworkReluctances reluctance_network(const CoreSet& core) {
    core.validate();
    if (core.r_g == 0.0) {
        throw singular_network_error("r_g = 0 makes the leakage branch a short; network is singular");
    }
    const double series = core.r_c + core.r_o / 2.0;
    NetworkReluctances net;
    net.r_m = 2.0 * core.r_c + core.r_o + 2.0 * series * series / core.r_g;
    net.r_k = series + core.r_g;
    return net;
}

Inductances inductances(const CoreSet& core) {
    const NetworkReluctances net = reluctance_network(core);
    Inductances ind;
    ind.l_p_h = static_cast<double>(core.n_p) * core.n_p / net.r_m;
    ind.l_l_h = 2.0 * static_cast<double>(core.n_s) * core.n_s / net.r_k;
    return ind;
}

NetworkReluctances reluctances_from_inductances(double l_p_h, double l_l_h, int n_p, int n_s) {
    if (!(l_p_h > 0.0) || !(l_l_h > 0.0)) {
        throw infeasible_design_error("inductances must be > 0");
    }
    if (n_p <= 0 || n_s <= 0) {
        throw infeasible_design_error("turn counts must be positive integers");
    }
    NetworkReluctances net;
    net.r_m = static_cast<double>(n_p) * n_p / l_p_h;
    net.r_k = 2.0 * static_cast<double>(n_s) * n_s / l_l_h;
    return net;
}

double magnetizing_current_peak(double v_p_peak_v, double period_s, double l_p_h) {
    if (!(v_p_peak_v > 0.0) || !(period_s > 0.0) || !(l_p_h > 0.0)) {
        throw infeasible_design_error("magnetizing_current_peak needs positive inputs");
    }
    return v_p_peak_v * (period_s / 4.0) / l_p_h;
}

FluxReport peak_flux_density(const NetworkReluctances& net, double a_e_m2, double b_sat_t,
                             int n_p, int n_s, double i_mag_peak_a, double i_sec_peak_a) {
    if (i_mag_peak_a < 0.0 || i_sec_peak_a < 0.0) {
        throw infeasible_design_error("peak currents must be >= 0");
    }
    FluxReport rpt;
    rpt.r_m = net.r_m;
    rpt.r_k = net.r_k;
    rpt.l_p_h = static_cast<double>(n_p) * n_p / net.r_m;
    rpt.l_l_h = 2.0 * static_cast<double>(n_s) * n_s / net.r_k;
    rpt.b_magnetizing_t = n_p * i_mag_peak_a / (net.r_m * a_e_m2);
    rpt.b_leakage_t = i_sec_peak_a * n_s / (net.r_k * a_e_m2);
    rpt.b_max_t = rpt.b_magnetizing_t + rpt.b_leakage_t;
    rpt.saturated = rpt.b_max_t >= b_sat_t;
    return rpt;
}

FluxReport peak_flux_density(const CoreSet& core, double i_mag_peak_a, double i_sec_peak_a) {
    const NetworkReluctances net = reluctance_network(core);
    return peak_flux_density(net, core.a_e_m2, core.b_sat_t, core.n_p, core.n_s,
                             i_mag_peak_a, i_sec_peak_a);
}

} // namespace leakpfc::magnetics
