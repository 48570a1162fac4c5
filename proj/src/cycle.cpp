#include "leakpfc/cycle.hpp"

#include "leakpfc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace leakpfc::cycle {

void HalfPeriodInput::validate() const {
    if (!(l_l_h > 0.0) || !(t_s > 0.0)) {
        throw infeasible_design_error("l_l_h and t_s must be > 0");
    }
    if (!(t1_s >= 0.0) || t1_s > t_s / 2.0 + 1e-15 * t_s) {
        throw infeasible_design_error("t1 must lie in [0, T/2]");
    }
    if (!(v_i_v >= 0.0) || !(v_o_v > v_i_v)) {
        throw boost_violation_error("closed forms require V_O > V_I >= 0");
    }
    if (i_start_a < 0.0) {
        throw infeasible_design_error("i_start is a magnitude and must be >= 0");
    }
}

HalfPeriodResult dcm_half_period(const HalfPeriodInput& in) {
    in.validate();
    HalfPeriodResult r{};
    r.mode = Mode::dcm;
    if (in.v_i_v == 0.0 || in.t1_s == 0.0) {
        return r; // switch never carries current
    }

    r.i_p_a = in.v_i_v * in.t1_s / in.l_l_h;
    r.t2_s = r.i_p_a * in.l_l_h / (in.v_o_v - in.v_i_v);
    if (in.t1_s + r.t2_s > in.t_s / 2.0 * (1.0 + 1e-12)) {
        throw mode_violation_error("T1 + T2 exceeds T/2: current cannot return to zero", "ccm");
    }
    r.i_l_avg_a = (in.t1_s * in.t1_s / (in.t_s * in.l_l_h)) *
                  (in.v_i_v * in.v_o_v / (in.v_o_v - in.v_i_v));
    r.q_out_c = 0.5 * r.i_p_a * r.t2_s;
    return r;
}

HalfPeriodResult ccm_half_period(const HalfPeriodInput& in) {
    in.validate();
    const double t2 = in.t_s / 2.0 - in.t1_s;
    const double i_e = (in.v_i_v * in.t1_s - (in.v_o_v - in.v_i_v) * t2) / (2.0 * in.l_l_h);
    const double scale = in.v_o_v * in.t_s / in.l_l_h; // current scale for tolerance
    if (i_e < -1e-12 * scale) {
        throw mode_violation_error("end current would be negative: operating point is DCM", "dcm");
    }

    HalfPeriodResult r{};
    r.mode = Mode::ccm;
    r.i_e_a = std::max(i_e, 0.0);
    r.t2_s = t2;
    r.i_p_a = in.v_i_v * in.t1_s / in.l_l_h - r.i_e_a;
    r.i_l_avg_a = (in.t1_s * in.t_s / 2.0 - in.t1_s * in.t1_s) * in.v_o_v / (in.t_s * in.l_l_h);
    r.q_out_c = 0.5 * (r.i_p_a + r.i_e_a) * t2;
    return r;
}

namespace {

// One linear piece of the leakage-current trajectory.
struct Segment {
    double t0, t1;
    double i0, i1;
    bool conducting; // bridge carries |I_L| to the output
};

double interp(const Segment& s, double t) {
    if (s.t1 == s.t0) return s.i0;
    const double a = (t - s.t0) / (s.t1 - s.t0);
    return s.i0 + a * (s.i1 - s.i0);
}

// Builds the exact piecewise-linear trajectory over [0, T].
std::vector<Segment> build_segments(const HalfPeriodInput& in, double i_signed_start) {
    std::vector<Segment> segs;
    segs.reserve(10);
    double i = i_signed_start;
    const double half = in.t_s / 2.0;

    for (int h = 0; h < 2; ++h) {
        const double s = h == 0 ? 1.0 : -1.0;
        const double t_begin = h * half;
        const double t_end = t_begin + half;
        double t = t_begin;

        if (in.t1_s > 0.0) { // shorting switch closed: source drives L_L directly
            const double t_open = t_begin + in.t1_s;
            const double slope = s * in.v_i_v / in.l_l_h;
            segs.push_back({t, t_open, i, i + slope * in.t1_s, false});
            i = segs.back().i1;
            t = t_open;
        }

        while (t < t_end) {
            if (i != 0.0) {
                const double sign_i = i > 0.0 ? 1.0 : -1.0;
                const double slope = (s * in.v_i_v - sign_i * in.v_o_v) / in.l_l_h;
                double t_next = t_end;
                bool clamps = false;
                if (slope * sign_i < 0.0) { // heading toward zero
                    const double t_zero = t - i / slope;
                    if (t_zero < t_end) {
                        t_next = t_zero;
                        clamps = true;
                    }
                }
                segs.push_back({t, t_next, i, clamps ? 0.0 : i + slope * (t_next - t), true});
                i = segs.back().i1;
                t = t_next;
            } else { // diodes blocked (V_O > V_I), current rests at zero
                segs.push_back({t, t_end, 0.0, 0.0, false});
                t = t_end;
            }
        }
    }
    return segs;
}

} // namespace

MicroResult micro_simulate(const HalfPeriodInput& in, double dt_s, double l_m_secondary_h) {
    in.validate();
    if (!(dt_s > 0.0) || dt_s > in.t_s / 2000.0) {
        throw resolution_error("micro_simulate requires dt <= T/2000");
    }

    const std::vector<Segment> segs = build_segments(in, -in.i_start_a);
    const double half = in.t_s / 2.0;

    MicroResult out{};
    out.i_end_a = segs.back().i1;

    // exact aggregates from the segment geometry
    double int_first = 0.0, int_second = 0.0, int_iy = 0.0;
    double peak = 0.0;
    double t_conduction_end_first = in.t1_s; // updated below
    bool rested_first_half = false;
    for (const Segment& sg : segs) {
        const double len = sg.t1 - sg.t0;
        const double area = 0.5 * (sg.i0 + sg.i1) * len;
        if (sg.t0 < half) {
            int_first += area;
        } else {
            int_second += area;
        }
        if (sg.conducting) {
            int_iy += std::abs(area);
            if (sg.t0 < half) t_conduction_end_first = sg.t1;
        } else if (sg.t0 >= in.t1_s && sg.t0 < half && len > 0.0 && sg.i0 == 0.0 && sg.i1 == 0.0) {
            rested_first_half = true;
        }
        peak = std::max({peak, std::abs(sg.i0), std::abs(sg.i1)});
    }

    HalfPeriodResult agg{};
    agg.i_p_a = peak;
    agg.i_e_a = std::abs(out.i_end_a);
    agg.i_l_avg_a = (int_first - int_second) / in.t_s;
    agg.q_out_c = int_iy / 2.0; // per half period, averaged over both halves
    agg.t2_s = std::max(t_conduction_end_first - in.t1_s, 0.0);
    agg.mode = rested_first_half ? Mode::dcm : Mode::ccm;
    out.aggregates = agg;

    // sampled trace at the requested density
    const std::size_t n = static_cast<std::size_t>(std::llround(in.t_s / dt_s));
    MicroTrace& tr = out.trace;
    tr.t_s.reserve(n + 1);
    tr.i_l_a.reserve(n + 1);
    tr.i_x_a.reserve(n + 1);
    tr.i_y_a.reserve(n + 1);
    tr.i_mag_a.reserve(n + 1);
    const double i_mag_peak =
        l_m_secondary_h > 0.0 ? in.v_i_v * (in.t_s / 4.0) / l_m_secondary_h : 0.0;
    std::size_t si = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = std::min(static_cast<double>(k) * dt_s, in.t_s);
        while (si + 1 < segs.size() && t > segs[si].t1) ++si;
        const Segment& sg = segs[si];
        const double i_l = interp(sg, t);
        double i_mag = 0.0;
        if (l_m_secondary_h > 0.0) {
            i_mag = t < half ? -i_mag_peak + (in.v_i_v / l_m_secondary_h) * t
                             : i_mag_peak - (in.v_i_v / l_m_secondary_h) * (t - half);
        }
        tr.t_s.push_back(t);
        tr.i_l_a.push_back(i_l);
        tr.i_x_a.push_back(i_l + i_mag);
        tr.i_y_a.push_back(sg.conducting ? std::abs(i_l) : 0.0);
        tr.i_mag_a.push_back(i_mag);
    }
    return out;
}

ConvergedMicro micro_converge(const HalfPeriodInput& in, double dt_s, double l_m_secondary_h,
                              int max_periods, double rel_tol) {
    HalfPeriodInput cur = in;
    MicroResult res;
    double prev_avg = 0.0, prev_q = 0.0;
    int period = 0;
    for (period = 1; period <= max_periods; ++period) {
        res = micro_simulate(cur, dt_s, l_m_secondary_h);
        const double avg = res.aggregates.i_l_avg_a;
        const double q = res.aggregates.q_out_c;
        if (period > 1) {
            const double d_avg = std::abs(avg - prev_avg);
            const double d_q = std::abs(q - prev_q);
            if (d_avg <= rel_tol * std::max(std::abs(avg), 1e-300) &&
                d_q <= rel_tol * std::max(std::abs(q), 1e-300)) {
                break;
            }
        }
        prev_avg = avg;
        prev_q = q;
        cur.i_start_a = std::abs(res.i_end_a);
    }
    return {res, std::min(period, max_periods)};
}

} // namespace leakpfc::cycle
