#include "leakpfc/timing.hpp"

#include "leakpfc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace leakpfc::timing {

void ControlGain::validate() const {
    if (!(k_max <= 0.125) || !(k_max >= 0.0)) {
        throw infeasible_design_error("k_max must lie in [0, 1/8]");
    }
    if (!(k >= 0.0) || !(k <= k_max)) {
        throw infeasible_design_error("k must lie in [0, k_max]");
    }
}

double rectified_scaled_input(double v_m_v, double n) {
    if (!(n > 0.0)) {
        throw infeasible_design_error("turns ratio must be > 0");
    }
    return std::abs(v_m_v) * n / 2.0;
}

Mode select_mode(double v_i_v, double v_o_v, double k) {
    if (!(v_o_v > 0.0)) {
        throw infeasible_design_error("v_o must be > 0");
    }
    if (!(k >= 0.0) || !(k <= 0.125)) {
        throw infeasible_design_error("k must lie in [0, 1/8]");
    }
    if (v_i_v >= v_o_v) {
        throw boost_violation_error("V_I >= V_O: boost operation impossible at this instant");
    }
    return v_o_v * (1.0 - 4.0 * k) >= v_i_v ? Mode::dcm : Mode::ccm;
}

double t1_dcm(double k, double v_i_v, double v_o_v, double t_s) {
    const double radicand = k * (v_o_v - v_i_v) / v_o_v;
    if (radicand < 0.0) {
        throw boost_violation_error("t1_dcm requires V_I <= V_O and K >= 0");
    }
    return t_s * std::sqrt(radicand);
}

double t1_ccm(double k, double v_i_v, double v_o_v, double t_s) {
    double radicand = 1.0 - 16.0 * k * v_i_v / v_o_v;
    if (radicand < -1e-12) {
        throw gain_saturation_error("CCM timing has no real solution: 16*K*V_I/V_O > 1");
    }
    radicand = std::max(radicand, 0.0);
    return (t_s / 4.0) * (1.0 - std::sqrt(radicand));
}

TimingCommand timing_for_instant(double v_m_v, double v_o_v, double k,
                                 const design::ConverterParams& params) {
    const double t_s = params.targets.period_s();
    const double v_i = rectified_scaled_input(v_m_v, params.n);
    const Mode mode = select_mode(v_i, v_o_v, k);

    TimingCommand cmd;
    cmd.mode = mode;
    cmd.t_s = t_s;
    if (mode == Mode::dcm) {
        cmd.t1_s = t1_dcm(k, v_i, v_o_v, t_s);
    } else {
        // gain saturation -> maximum power transfer at T/4
        const double radicand = 1.0 - 16.0 * k * v_i / v_o_v;
        cmd.t1_s = radicand <= 0.0 ? t_s / 4.0
                                   : std::min(t1_ccm(k, v_i, v_o_v, t_s), t_s / 4.0);
    }
    return cmd;
}

void PidState::seed(double k_initial, double v_o_initial_v) {
    integral = -k_initial;
    prev_error_v = v_o_initial_v - v_ref_v;
}

std::pair<PidState, double> pid_step(PidState state, double v_o_meas_v, double k_max) {
    const double dt = state.update_period_s;
    const double error = v_o_meas_v - state.v_ref_v;
    const double derivative = (error - state.prev_error_v) / dt;

    state.integral += state.k_i * error * dt;
    const double pd = state.k_p * error + state.k_d * derivative;
    double k = -(pd + state.integral);

    if (k > k_max) {
        k = k_max;
        state.integral = -k_max - pd;
    } else if (k < 0.0) {
        k = 0.0;
        state.integral = -pd;
    }
    state.prev_error_v = error;
    return {state, k};
}

} // namespace leakpfc::timing
