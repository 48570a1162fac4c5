#include "leakpfc/analysis.hpp"

#include "leakpfc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace leakpfc::analysis {

namespace {

void check_integer_periods(std::size_t n, double dt_s, double f_fund_hz) {
    if (n < 2 || !(dt_s > 0.0) || !(f_fund_hz > 0.0)) {
        throw windowing_error("need a sampled window with dt > 0 and f_fund > 0");
    }
    const double periods = static_cast<double>(n) * dt_s * f_fund_hz;
    if (std::abs(periods - std::round(periods)) > 1e-6 * std::max(periods, 1.0) ||
        periods < 0.5) {
        throw windowing_error("window must cover an integer number of fundamental periods");
    }
}

struct Projection {
    double cos_part;
    double sin_part;
};

Projection project(std::span<const double> x, double dt_s, double f_fund_hz, int order) {
    const double w = 2.0 * std::numbers::pi * f_fund_hz * order;
    double c = 0.0, s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double ph = w * (static_cast<double>(k) * dt_s);
        c += x[k] * std::cos(ph);
        s += x[k] * std::sin(ph);
    }
    const double scale = 2.0 / static_cast<double>(x.size());
    return {c * scale, s * scale};
}

HarmonicReport spectrum_impl(std::span<const double> x, double dt_s, double f_fund_hz,
                             int max_order, bool parallel) {
    check_integer_periods(x.size(), dt_s, f_fund_hz);
    if (max_order < 1) {
        throw resolution_error("max_order must be >= 1");
    }
    if (max_order * f_fund_hz >= 0.5 / dt_s) {
        throw resolution_error("harmonic order exceeds the Nyquist rate of the trace");
    }

    std::vector<double> rms(static_cast<std::size_t>(max_order));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int h = 1; h <= max_order; ++h) {
            const Projection p = project(x, dt_s, f_fund_hz, h);
            rms[static_cast<std::size_t>(h - 1)] =
                std::sqrt(p.cos_part * p.cos_part + p.sin_part * p.sin_part) / std::numbers::sqrt2;
        }
    } else {
        for (int h = 1; h <= max_order; ++h) {
            const Projection p = project(x, dt_s, f_fund_hz, h);
            rms[static_cast<std::size_t>(h - 1)] =
                std::sqrt(p.cos_part * p.cos_part + p.sin_part * p.sin_part) / std::numbers::sqrt2;
        }
    }

    HarmonicReport rpt;
    rpt.f_fund_hz = f_fund_hz;
    rpt.fundamental_rms = rms[0];
    rpt.harmonics_rms.assign(rms.begin() + 1, rms.end());
    double sum_sq = 0.0;
    for (double h : rpt.harmonics_rms) sum_sq += h * h;
    rpt.thd = rpt.fundamental_rms > 0.0 ? std::sqrt(sum_sq) / rpt.fundamental_rms : 0.0;
    return rpt;
}

} // namespace

PowerReport power_metrics(std::span<const double> v, std::span<const double> i,
                          double dt_s, double f_fund_hz) {
    if (v.size() != i.size() || v.empty()) {
        throw windowing_error("v and i must be equal-length, non-empty series");
    }
    if (f_fund_hz > 0.0) {
        check_integer_periods(v.size(), dt_s, f_fund_hz);
    }
    double sum_vv = 0.0, sum_ii = 0.0, sum_vi = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        sum_vv += v[k] * v[k];
        sum_ii += i[k] * i[k];
        sum_vi += v[k] * i[k];
    }
    const double n = static_cast<double>(v.size());
    PowerReport r;
    r.v_rms = std::sqrt(sum_vv / n);
    r.i_rms = std::sqrt(sum_ii / n);
    r.p_active_w = sum_vi / n;
    r.s_apparent_va = r.v_rms * r.i_rms;
    r.power_factor = r.s_apparent_va > 0.0 ? r.p_active_w / r.s_apparent_va : 0.0;
    return r;
}

HarmonicReport harmonic_spectrum(std::span<const double> x, double dt_s,
                                 double f_fund_hz, int max_order) {
    return spectrum_impl(x, dt_s, f_fund_hz, max_order, true);
}

HarmonicReport harmonic_spectrum_serial(std::span<const double> x, double dt_s,
                                        double f_fund_hz, int max_order) {
    return spectrum_impl(x, dt_s, f_fund_hz, max_order, false);
}

double ripple_pp(std::span<const double> v_o, double dt_s, double f_ripple_hz) {
    if (v_o.empty() || !(dt_s > 0.0) || !(f_ripple_hz > 0.0)) {
        throw windowing_error("ripple_pp needs a non-empty window and positive dt, f_ripple");
    }
    if (static_cast<double>(v_o.size()) * dt_s < 1.0 / f_ripple_hz) {
        throw windowing_error("window shorter than one ripple period");
    }
    const auto [lo, hi] = std::minmax_element(v_o.begin(), v_o.end());
    return *hi - *lo;
}

} // namespace leakpfc::analysis
