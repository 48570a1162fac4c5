#include "leakpfc/sim.hpp"

#include "leakpfc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leakpfc::sim {

const char* trace_mode_name(TraceMode m) {
    switch (m) {
    case TraceMode::idle: return "idle";
    case TraceMode::dcm: return "dcm";
    case TraceMode::ccm: return "ccm";
    case TraceMode::rect: return "rect";
    }
    return "?";
}

TraceMode trace_mode_from_name(std::string_view name) {
    if (name == "idle") return TraceMode::idle;
    if (name == "dcm") return TraceMode::dcm;
    if (name == "ccm") return TraceMode::ccm;
    if (name == "rect") return TraceMode::rect;
    throw config_error("unknown trace mode: " + std::string(name));
}

double LoadConfig::current_a(double v_o_v) const {
    switch (kind) {
    case Kind::none:
        return 0.0;
    case Kind::resistance:
        return v_o_v > 0.0 ? v_o_v / r_ohm : 0.0;
    case Kind::power:
        // electronic loads drop out below a minimum operating voltage
        return v_o_v > 1.0 ? p_w / v_o_v : 0.0;
    }
    return 0.0;
}

PlantConfig plant_from_config(const config::RunConfig& cfg) {
    PlantConfig pc;
    pc.params = cfg.converter_params();
    pc.params.validate();

    if (cfg.load.type == "none") {
        pc.load.kind = LoadConfig::Kind::none;
    } else if (cfg.load.type == "resistance") {
        pc.load.kind = LoadConfig::Kind::resistance;
    } else if (cfg.load.type == "power") {
        pc.load.kind = LoadConfig::Kind::power;
    } else {
        throw config_error("load.type must be resistance | power | none");
    }
    pc.load.r_ohm = cfg.load.r_ohm;
    pc.load.p_w = cfg.load.p_w;
    if (pc.load.kind == LoadConfig::Kind::resistance && !(pc.load.r_ohm > 0.0)) {
        throw config_error("load.r_ohm must be > 0");
    }

    auto& ctl = pc.controller;
    ctl.pid.k_p = cfg.controller.k_p;
    ctl.pid.k_i = cfg.controller.k_i;
    ctl.pid.k_d = cfg.controller.k_d;
    ctl.pid.v_ref_v = cfg.controller.v_ref_v;
    ctl.pid.update_period_s = cfg.effective_update_period_s();
    ctl.k_max = cfg.effective_k_max();
    ctl.k_initial = std::clamp(cfg.controller.k_initial, 0.0, ctl.k_max);
    ctl.ramp_time_s = cfg.controller.ramp_time_s;
    ctl.precharge_exit_frac = cfg.controller.precharge_exit_frac;
    ctl.precharge_timeout_s = cfg.controller.precharge_timeout_s;
    ctl.inrush_margin = cfg.controller.inrush_margin;
    ctl.dropout_grace_s = cfg.controller.dropout_grace_s;
    ctl.startup_eps = cfg.controller.startup_eps;
    ctl.t1_decimation = cfg.controller.t1_decimation;
    if (ctl.t1_decimation < 1) {
        throw config_error("controller.t1_decimation must be >= 1");
    }

    pc.v_o_initial_v = cfg.sim.v_o_initial_v;
    pc.duration_s = cfg.sim.duration_s;
    pc.record_decimation = cfg.sim.record_decimation;
    if (pc.record_decimation < 1) {
        throw config_error("sim.record_decimation must be >= 1");
    }
    return pc;
}

namespace {

enum class Phase { precharge, ramp, regulate };

struct StepOutcome {
    double q_out_c = 0.0;
    double i_l_avg_a = 0.0; // polarity-corrected
    double peak_a = 0.0;
    double end_current_a = 0.0; // |I_L| handed to the next half period
    double t1_s = 0.0;
    TraceMode mode = TraceMode::idle;
};

// Uncontrolled conduction through the output bridge with the shorting switch
// off. Residual current first collapses against the reversed source, then,
// if the inverter is driven and V_I exceeds V_O, a fresh ramp builds.
StepOutcome rectifier_half_period(double v_i, double v_o_true, double i_carry, double half_s,
                                  double l_l_h, bool driven) {
    StepOutcome out;
    double t_used = 0.0;
    if (i_carry > 0.0) {
        const double rate = (v_i + v_o_true) / l_l_h;
        if (rate <= 0.0) { // dead line into an empty capacitor: current holds
            out.q_out_c = 0.0;
            out.end_current_a = i_carry;
            out.peak_a = i_carry;
            out.mode = TraceMode::rect;
            return out;
        }
        const double t_zero = i_carry / rate;
        if (t_zero >= half_s) {
            const double i_left = i_carry - rate * half_s;
            out.q_out_c = 0.5 * (i_carry + i_left) * half_s;
            out.i_l_avg_a = -out.q_out_c / half_s;
            out.end_current_a = i_left;
            out.peak_a = i_carry;
            out.mode = TraceMode::rect;
            return out;
        }
        t_used = t_zero;
        out.q_out_c += 0.5 * i_carry * t_zero;
        out.i_l_avg_a -= 0.5 * i_carry * t_zero / half_s;
        out.peak_a = i_carry;
        out.mode = TraceMode::rect;
    }
    if (driven && v_i > v_o_true) {
        const double tau = half_s - t_used;
        const double i_new = (v_i - v_o_true) / l_l_h * tau;
        out.q_out_c += 0.5 * i_new * tau;
        out.i_l_avg_a += 0.5 * i_new * tau / half_s;
        out.end_current_a = i_new;
        out.peak_a = std::max(out.peak_a, i_new);
        out.mode = TraceMode::rect;
    }
    return out;
}

// Commanded boost operation evaluated at the controller's measured V_O.
StepOutcome boost_half_period(double v_i, double v_o_cmd, const timing::TimingCommand& cmd,
                              double l_l_h) {
    StepOutcome out;
    out.t1_s = cmd.t1_s;
    cycle::HalfPeriodInput in{v_i, v_o_cmd, cmd.t1_s, cmd.t_s, l_l_h, 0.0};
    cycle::HalfPeriodResult r{};
    if (cmd.mode == timing::Mode::dcm) {
        r = cycle::dcm_half_period(in);
        out.mode = TraceMode::dcm;
    } else {
        r = cycle::ccm_half_period(in);
        out.mode = TraceMode::ccm;
        out.end_current_a = r.i_e_a;
    }
    out.q_out_c = r.q_out_c;
    out.i_l_avg_a = r.i_l_avg_a;
    out.peak_a = r.i_p_a;
    return out;
}

SimResult run_engine(const PlantConfig& cfg, bool startup) {
    cfg.params.validate();
    const auto& tg = cfg.params.targets;
    const double t_period = tg.period_s();
    const double half = t_period / 2.0;
    const double v_i_max = cfg.params.v_i_max_v();
    const ControllerConfig& ctl = cfg.controller;

    if (!(cfg.duration_s >= 2.0 / tg.f_ac_hz)) {
        throw config_error("sim.duration_s must cover at least two line cycles");
    }
    const double upd = ctl.pid.update_period_s;
    const double steps_f = upd / half;
    const auto steps_per_update = static_cast<long long>(std::llround(steps_f));
    if (steps_per_update < 1 || std::abs(steps_f - static_cast<double>(steps_per_update)) > 1e-9) {
        throw config_error("controller update period must be a multiple of the half switching period");
    }

    const auto n_steps = static_cast<long long>(std::llround(cfg.duration_s / half));
    const double arm_level = v_i_max * (1.0 + ctl.startup_eps);
    // gate threshold so a fresh rectifier ramp stays inside the current bound
    const double bound_a = design::peak_leakage_current(ctl.pid.v_ref_v, t_period, cfg.params.l_l_h);
    const double gate_gap_v = ctl.inrush_margin * bound_a * 2.0 * cfg.params.l_l_h / t_period;

    SimResult res;
    SimStats& st = res.stats;
    WaveformTrace& tr = res.trace;
    const auto reserve = static_cast<std::size_t>(n_steps / cfg.record_decimation + 2);
    tr.t_s.reserve(reserve);
    tr.v_m_v.reserve(reserve);
    tr.v_r_v.reserve(reserve);
    tr.v_i_v.reserve(reserve);
    tr.i_m_a.reserve(reserve);
    tr.v_o_v.reserve(reserve);
    tr.k.reserve(reserve);
    tr.mode.reserve(reserve);
    tr.t1_s.reserve(reserve);
    tr.i_l_avg_a.reserve(reserve);

    double v_o = cfg.v_o_initial_v;
    double vo_meas = v_o;
    double k_cmd = ctl.k_initial;
    double i_carry = 0.0;
    double accum = 0.0;
    long long accum_n = 0;
    double dropout_since = -1.0;
    double ramp_start = 0.0;
    Phase phase = Phase::regulate;

    timing::PidState pid = ctl.pid;
    pid.seed(ctl.k_initial, v_o);

    if (startup) {
        phase = vo_meas >= ctl.precharge_exit_frac * v_i_max ? Phase::ramp : Phase::precharge;
        if (phase == Phase::ramp && ctl.ramp_time_s <= 0.0) {
            phase = Phase::regulate;
        }
        k_cmd = phase == Phase::precharge ? 0.0 : k_cmd;
    } else if (v_o <= arm_level) {
        st.faulted = true;
        st.fault_time_s = 0.0;
        st.fault_reason = "initial V_O at or below the boost threshold; run the startup sequence";
        st.v_o_final_v = v_o;
        return res;
    }

    timing::TimingCommand held_cmd{timing::Mode::dcm, 0.0, t_period};
    bool have_held = false;

    for (long long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * half;
        const double v_m = std::numbers::sqrt2 * tg.v_ac_vrms *
                           std::sin(2.0 * std::numbers::pi * tg.f_ac_hz * t);
        const double v_r = std::abs(v_m);
        const double v_i = timing::rectified_scaled_input(v_m, cfg.params.n);

        // controller tick at each half-line-cycle boundary
        if (k > 0 && k % steps_per_update == 0) {
            vo_meas = accum / static_cast<double>(accum_n);
            accum = 0.0;
            accum_n = 0;

            if (phase == Phase::precharge) {
                if (vo_meas >= ctl.precharge_exit_frac * v_i_max || t >= ctl.precharge_timeout_s) {
                    phase = ctl.ramp_time_s > 0.0 ? Phase::ramp : Phase::regulate;
                    ramp_start = t;
                    st.precharge_end_s = t;
                    pid.prev_error_v = vo_meas - pid.v_ref_v;
                }
            }
            if (phase != Phase::precharge) {
                double k_limit = ctl.k_max;
                if (phase == Phase::ramp) {
                    const double ceiling =
                        ctl.k_max * std::min(1.0, (t - ramp_start) / ctl.ramp_time_s);
                    k_limit = std::min(k_limit, ceiling);
                    if (ceiling >= ctl.k_max) {
                        phase = Phase::regulate;
                        st.ramp_end_s = t;
                    }
                }
                auto [pid_next, k_new] = timing::pid_step(pid, vo_meas, k_limit);
                pid = pid_next;
                k_cmd = k_new;
            }

            if (phase == Phase::regulate) {
                if (vo_meas > arm_level) {
                    dropout_since = -1.0;
                } else if (dropout_since < 0.0) {
                    dropout_since = t;
                } else if (t - dropout_since > ctl.dropout_grace_s) {
                    st.faulted = true;
                    st.fault_time_s = t;
                    st.fault_reason = "boost dropout: V_O stayed below the line peak beyond the grace window";
                    break;
                }
            }
        }

        StepOutcome step;
        if (phase != Phase::precharge && v_i < vo_meas) {
            if (ctl.t1_decimation > 1 && have_held && k % ctl.t1_decimation != 0) {
                // held PWM setting re-evaluated against the current input
                cycle::HalfPeriodInput in{v_i, vo_meas, held_cmd.t1_s, t_period,
                                          cfg.params.l_l_h, 0.0};
                try {
                    const auto r = cycle::dcm_half_period(in);
                    step.q_out_c = r.q_out_c;
                    step.i_l_avg_a = r.i_l_avg_a;
                    step.peak_a = r.i_p_a;
                    step.t1_s = held_cmd.t1_s;
                    step.mode = TraceMode::dcm;
                } catch (const mode_violation_error&) {
                    const auto r = cycle::ccm_half_period(in);
                    step.q_out_c = r.q_out_c;
                    step.i_l_avg_a = r.i_l_avg_a;
                    step.peak_a = r.i_p_a;
                    step.end_current_a = r.i_e_a;
                    step.t1_s = held_cmd.t1_s;
                    step.mode = TraceMode::ccm;
                }
            } else {
                held_cmd = timing::timing_for_instant(v_m, vo_meas, k_cmd, cfg.params);
                have_held = true;
                step = boost_half_period(v_i, vo_meas, held_cmd, cfg.params.l_l_h);
            }
            i_carry = step.end_current_a;
        } else {
            const bool driven = (v_i - v_o) <= gate_gap_v;
            step = rectifier_half_period(v_i, v_o, i_carry, half, cfg.params.l_l_h, driven);
            i_carry = step.end_current_a;
            have_held = false;
        }

        const double i_load = cfg.load.current_a(v_o);
        v_o = std::max(v_o + (step.q_out_c - i_load * half) / cfg.params.c_b_f, 0.0);

        st.q_out_total_c += step.q_out_c;
        st.load_charge_c += i_load * half;
        st.peak_abs_i_l_a = std::max({st.peak_abs_i_l_a, step.peak_a, i_carry});
        accum += v_o;
        ++accum_n;

        if (k % cfg.record_decimation == 0) {
            const double sgn = v_m > 0.0 ? 1.0 : (v_m < 0.0 ? -1.0 : 0.0);
            tr.t_s.push_back(t);
            tr.v_m_v.push_back(v_m);
            tr.v_r_v.push_back(v_r);
            tr.v_i_v.push_back(v_i);
            tr.i_m_a.push_back(0.5 * cfg.params.n * step.i_l_avg_a * sgn);
            tr.v_o_v.push_back(v_o);
            tr.k.push_back(k_cmd);
            tr.mode.push_back(step.mode);
            tr.t1_s.push_back(step.t1_s);
            tr.i_l_avg_a.push_back(step.i_l_avg_a);
        }
    }

    st.v_o_final_v = v_o;
    return res;
}

} // namespace

SimResult run_closed_loop(const PlantConfig& cfg) { return run_engine(cfg, false); }

SimResult run_startup(const PlantConfig& cfg) { return run_engine(cfg, true); }

std::vector<SweepRow> sweep_t1_curves(const design::ConverterParams& params, double v_o_v,
                                      double k_max, std::span<const double> fractions,
                                      int points_per_quarter) {
    params.validate();
    if (points_per_quarter < 2) {
        throw config_error("sweep needs at least 2 points per quarter cycle");
    }
    for (double f : fractions) {
        if (!(f > 0.0) || f > 1.0) {
            throw config_error("sweep fractions must lie in (0, 1]");
        }
    }

    const double v_peak = std::numbers::sqrt2 * params.targets.v_ac_vrms;
    const auto n_rows = fractions.size() * static_cast<std::size_t>(points_per_quarter);
    std::vector<SweepRow> rows(n_rows);

#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < static_cast<long long>(n_rows); ++idx) {
        const std::size_t fi = static_cast<std::size_t>(idx) / points_per_quarter;
        const int ai = static_cast<int>(static_cast<std::size_t>(idx) % points_per_quarter);
        const double angle_deg = 90.0 * ai / (points_per_quarter - 1);
        const double v_m = v_peak * std::sin(angle_deg * std::numbers::pi / 180.0);
        const timing::TimingCommand cmd =
            timing::timing_for_instant(v_m, v_o_v, fractions[fi] * k_max, params);
        rows[static_cast<std::size_t>(idx)] =
            SweepRow{angle_deg, fractions[fi], cmd.t1_s / cmd.t_s, cmd.mode};
    }
    return rows;
}

} // namespace leakpfc::sim
