#include "leakpfc/design.hpp"

#include "leakpfc/errors.hpp"

#include <numbers>

namespace leakpfc::design {

namespace {
void require_positive(double v, const char* name) {
    if (!(v > 0.0)) {
        throw infeasible_design_error(std::string(name) + " must be > 0");
    }
}
} // namespace

void DesignTargets::validate() const {
    require_positive(p_w, "p_w");
    require_positive(v_o_v, "v_o_v");
    require_positive(v_ac_vrms, "v_ac_vrms");
    require_positive(f_ac_hz, "f_ac_hz");
    require_positive(f_s_hz, "f_s_hz");
    if (f_s_hz < 100.0 * f_ac_hz) {
        throw infeasible_design_error("f_s must be at least 100x f_ac for the averaged model");
    }
}

double ConverterParams::v_i_max_v() const {
    return std::numbers::sqrt2 * targets.v_ac_vrms * n / 2.0;
}

void ConverterParams::validate() const {
    targets.validate();
    require_positive(n, "n");
    require_positive(l_l_h, "l_l_h");
    require_positive(c_b_f, "c_b_f");
    if (l_m_secondary_h < 0.0) {
        throw infeasible_design_error("l_m_secondary_h must be >= 0");
    }
    if (n > max_turns_ratio(targets.v_o_v, targets.v_ac_vrms)) {
        throw infeasible_design_error("turns ratio exceeds the boost-mode bound 2*V_O/(sqrt(2)*V_AC)");
    }
}

double max_turns_ratio(double v_o_v, double v_ac_vrms) {
    require_positive(v_o_v, "v_o_v");
    require_positive(v_ac_vrms, "v_ac_vrms");
    return 2.0 * v_o_v / (std::numbers::sqrt2 * v_ac_vrms);
}

double max_leakage_inductance(const DesignTargets& targets, double n) {
    targets.validate();
    require_positive(n, "n");
    return targets.v_ac_vrms * n * targets.v_o_v /
           (32.0 * std::numbers::sqrt2 * targets.f_s_hz * targets.p_w);
}

double max_power(double v_ac_vrms, double n, double v_o_v, double f_s_hz, double l_l_h) {
    require_positive(v_ac_vrms, "v_ac_vrms");
    require_positive(n, "n");
    require_positive(v_o_v, "v_o_v");
    require_positive(f_s_hz, "f_s_hz");
    require_positive(l_l_h, "l_l_h");
    return v_ac_vrms * n * v_o_v / (32.0 * std::numbers::sqrt2 * f_s_hz * l_l_h);
}

double peak_leakage_current(double v_o_v, double period_s, double l_l_h) {
    require_positive(v_o_v, "v_o_v");
    require_positive(period_s, "period_s");
    require_positive(l_l_h, "l_l_h");
    return v_o_v * period_s / (8.0 * l_l_h);
}

double max_control_gain(double v_o_v, double v_i_max_v) {
    require_positive(v_o_v, "v_o_v");
    require_positive(v_i_max_v, "v_i_max_v");
    if (v_i_max_v >= v_o_v) {
        throw infeasible_design_error("boost condition violated: V_I_max must be below V_O");
    }
    return v_o_v / (16.0 * v_i_max_v);
}

} // namespace leakpfc::design
