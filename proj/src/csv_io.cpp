#include "leakpfc/csv_io.hpp"

#include "leakpfc/errors.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace leakpfc::csv {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

void write_meta(std::ostream& os, const std::vector<std::string>& meta_lines) {
    for (const std::string& line : meta_lines) {
        os << "# " << line << '\n';
    }
}

double parse_field(std::string_view s, std::size_t line_no) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw config_error("bad CSV number at line " + std::to_string(line_no));
    }
    return out;
}

} // namespace

void write_waveform_csv(std::ostream& os, const sim::WaveformTrace& trace,
                        const std::vector<std::string>& meta_lines) {
    write_meta(os, meta_lines);
    os << "t_s,v_m_v,v_r_v,v_i_v,i_m_a,v_o_v,k,mode,t1_s,i_l_avg_a\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << format_double(trace.t_s[i]) << ',' << format_double(trace.v_m_v[i]) << ','
           << format_double(trace.v_r_v[i]) << ',' << format_double(trace.v_i_v[i]) << ','
           << format_double(trace.i_m_a[i]) << ',' << format_double(trace.v_o_v[i]) << ','
           << format_double(trace.k[i]) << ',' << sim::trace_mode_name(trace.mode[i]) << ','
           << format_double(trace.t1_s[i]) << ',' << format_double(trace.i_l_avg_a[i]) << '\n';
    }
}

void write_micro_csv(std::ostream& os, const cycle::MicroTrace& trace,
                     const std::vector<std::string>& meta_lines) {
    write_meta(os, meta_lines);
    os << "t_s,i_l_a,i_x_a,i_y_a,i_mag_a\n";
    for (std::size_t i = 0; i < trace.t_s.size(); ++i) {
        os << format_double(trace.t_s[i]) << ',' << format_double(trace.i_l_a[i]) << ','
           << format_double(trace.i_x_a[i]) << ',' << format_double(trace.i_y_a[i]) << ','
           << format_double(trace.i_mag_a[i]) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const std::vector<sim::SweepRow>& rows,
                     const std::vector<std::string>& meta_lines) {
    write_meta(os, meta_lines);
    os << "angle_deg,fraction,t1_over_t,mode\n";
    for (const sim::SweepRow& r : rows) {
        os << format_double(r.angle_deg) << ',' << format_double(r.fraction) << ','
           << format_double(r.t1_over_t) << ','
           << (r.mode == timing::Mode::dcm ? "dcm" : "ccm") << '\n';
    }
}

ParsedWaveform read_waveform_csv(std::istream& is) {
    ParsedWaveform out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::string_view rest(line);
            rest.remove_prefix(1);
            if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
            out.meta_lines.emplace_back(rest);
            continue;
        }
        if (!header_seen) {
            if (line != "t_s,v_m_v,v_r_v,v_i_v,i_m_a,v_o_v,k,mode,t1_s,i_l_avg_a") {
                throw config_error("unexpected waveform CSV header");
            }
            header_seen = true;
            continue;
        }
        std::string_view sv(line);
        std::array<std::string_view, 10> fields;
        for (std::size_t f = 0; f < 10; ++f) {
            const std::size_t comma = sv.find(',');
            if (f < 9 && comma == std::string_view::npos) {
                throw config_error("short CSV row at line " + std::to_string(line_no));
            }
            fields[f] = f < 9 ? sv.substr(0, comma) : sv;
            if (f < 9) sv.remove_prefix(comma + 1);
        }
        sim::WaveformTrace& tr = out.trace;
        tr.t_s.push_back(parse_field(fields[0], line_no));
        tr.v_m_v.push_back(parse_field(fields[1], line_no));
        tr.v_r_v.push_back(parse_field(fields[2], line_no));
        tr.v_i_v.push_back(parse_field(fields[3], line_no));
        tr.i_m_a.push_back(parse_field(fields[4], line_no));
        tr.v_o_v.push_back(parse_field(fields[5], line_no));
        tr.k.push_back(parse_field(fields[6], line_no));
        tr.mode.push_back(sim::trace_mode_from_name(fields[7]));
        tr.t1_s.push_back(parse_field(fields[8], line_no));
        tr.i_l_avg_a.push_back(parse_field(fields[9], line_no));
    }
    if (!header_seen) {
        throw config_error("waveform CSV has no header row");
    }
    return out;
}

} // namespace leakpfc::csv
