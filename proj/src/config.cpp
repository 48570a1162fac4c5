#include "leakpfc/config.hpp"

#include "leakpfc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace leakpfc::config {

design::ConverterParams RunConfig::converter_params() const {
    design::ConverterParams p;
    p.targets = targets;
    p.n = converter.n;
    p.l_l_h = converter.l_l_h;
    p.c_b_f = converter.c_b_f;
    p.l_m_secondary_h = converter.l_m_secondary_h;
    return p;
}

double RunConfig::effective_k_max() const {
    if (controller.k_max > 0.0) {
        return controller.k_max;
    }
    const double v_i_max = converter_params().v_i_max_v();
    return std::min(controller.v_ref_v / (16.0 * v_i_max), 0.125);
}

double RunConfig::effective_update_period_s() const {
    return controller.update_period_s > 0.0 ? controller.update_period_s
                                            : 1.0 / (2.0 * targets.f_ac_hz);
}

namespace {

struct KeyBinding {
    enum class Type { real, integer, text } type;
    std::string doc;
    std::function<double*(RunConfig&)> real_ptr;
    std::function<int*(RunConfig&)> int_ptr;
    std::function<std::string*(RunConfig&)> text_ptr;
};

using KeyTable = std::map<std::string, KeyBinding, std::less<>>;

KeyBinding real_key(std::function<double*(RunConfig&)> get, std::string doc) {
    KeyBinding b;
    b.type = KeyBinding::Type::real;
    b.real_ptr = std::move(get);
    b.doc = std::move(doc);
    return b;
}

KeyBinding int_key(std::function<int*(RunConfig&)> get, std::string doc) {
    KeyBinding b;
    b.type = KeyBinding::Type::integer;
    b.int_ptr = std::move(get);
    b.doc = std::move(doc);
    return b;
}

KeyBinding text_key(std::function<std::string*(RunConfig&)> get, std::string doc) {
    KeyBinding b;
    b.type = KeyBinding::Type::text;
    b.text_ptr = std::move(get);
    b.doc = std::move(doc);
    return b;
}

const KeyTable& key_table() {
    static const KeyTable table = [] {
        KeyTable t;
        t["targets.p_w"] = real_key([](RunConfig& c) { return &c.targets.p_w; },
                                    "rated output power, watts");
        t["targets.v_o_v"] = real_key([](RunConfig& c) { return &c.targets.v_o_v; },
                                      "DC output voltage target, volts");
        t["targets.v_ac_vrms"] = real_key([](RunConfig& c) { return &c.targets.v_ac_vrms; },
                                          "line input voltage, volts rms");
        t["targets.f_ac_hz"] = real_key([](RunConfig& c) { return &c.targets.f_ac_hz; },
                                        "line frequency, hertz");
        t["targets.f_s_hz"] = real_key([](RunConfig& c) { return &c.targets.f_s_hz; },
                                       "switching frequency, hertz");

        t["converter.n"] = real_key([](RunConfig& c) { return &c.converter.n; },
                                    "turns ratio N_S/N_P, dimensionless");
        t["converter.l_l_h"] = real_key([](RunConfig& c) { return &c.converter.l_l_h; },
                                        "total leakage inductance (secondary-referred), henries");
        t["converter.c_b_f"] = real_key([](RunConfig& c) { return &c.converter.c_b_f; },
                                        "bulk capacitor, farads");
        t["converter.l_m_secondary_h"] =
            real_key([](RunConfig& c) { return &c.converter.l_m_secondary_h; },
                     "magnetizing inductance (secondary-referred), henries; 0 = ideal");
        t["converter.n_p"] = int_key([](RunConfig& c) { return &c.converter.n_p; },
                                     "primary turns");
        t["converter.n_s"] = int_key([](RunConfig& c) { return &c.converter.n_s; },
                                     "secondary turns");

        t["controller.k_p"] = real_key([](RunConfig& c) { return &c.controller.k_p; },
                                       "PID proportional gain, per volt");
        t["controller.k_i"] = real_key([](RunConfig& c) { return &c.controller.k_i; },
                                       "PID integral gain, per volt-second");
        t["controller.k_d"] = real_key([](RunConfig& c) { return &c.controller.k_d; },
                                       "PID derivative gain, seconds per volt");
        t["controller.v_ref_v"] = real_key([](RunConfig& c) { return &c.controller.v_ref_v; },
                                           "regulation reference, volts");
        t["controller.update_period_s"] =
            real_key([](RunConfig& c) { return &c.controller.update_period_s; },
                     "PID update period, seconds; 0 = one rectified half line cycle");
        t["controller.k_max"] = real_key([](RunConfig& c) { return &c.controller.k_max; },
                                         "control gain clamp; 0 = v_ref/(16*V_Imax)");
        t["controller.k_initial"] = real_key([](RunConfig& c) { return &c.controller.k_initial; },
                                             "control gain at t = 0");
        t["controller.ramp_time_s"] = real_key([](RunConfig& c) { return &c.controller.ramp_time_s; },
                                               "soft-start gain ramp duration, seconds");
        t["controller.precharge_exit_frac"] =
            real_key([](RunConfig& c) { return &c.controller.precharge_exit_frac; },
                     "precharge ends at this fraction of V_Imax");
        t["controller.precharge_timeout_s"] =
            real_key([](RunConfig& c) { return &c.controller.precharge_timeout_s; },
                     "precharge ends after this time regardless, seconds");
        t["controller.inrush_margin"] =
            real_key([](RunConfig& c) { return &c.controller.inrush_margin; },
                     "fraction of the peak-current bound the precharge gate allows");
        t["controller.dropout_grace_s"] =
            real_key([](RunConfig& c) { return &c.controller.dropout_grace_s; },
                     "persistent boost dropout longer than this faults the run, seconds");
        t["controller.startup_eps"] = real_key([](RunConfig& c) { return &c.controller.startup_eps; },
                                               "headroom fraction for boost-dropout arming");
        t["controller.t1_decimation"] =
            int_key([](RunConfig& c) { return &c.controller.t1_decimation; },
                    "recompute T1 every this many half switching periods");

        t["core.r_c"] = real_key([](RunConfig& c) { return &c.core.r_c; },
                                 "central-core reluctance, A-turns/Wb; 0 = use inductances");
        t["core.r_o"] = real_key([](RunConfig& c) { return &c.core.r_o; },
                                 "top/side half reluctance, A-turns/Wb");
        t["core.r_g"] = real_key([](RunConfig& c) { return &c.core.r_g; },
                                 "air-gap leakage-path reluctance, A-turns/Wb");
        t["core.a_e_m2"] = real_key([](RunConfig& c) { return &c.core.a_e_m2; },
                                    "core effective area, square meters");
        t["core.b_sat_t"] = real_key([](RunConfig& c) { return &c.core.b_sat_t; },
                                     "saturation flux density, tesla");
        t["core.l_p_h"] = real_key([](RunConfig& c) { return &c.core.l_p_h; },
                                   "magnetizing inductance (primary-referred), henries");
        t["core.l_l_h"] = real_key([](RunConfig& c) { return &c.core.l_l_h; },
                                   "total leakage inductance (secondary-referred), henries");
        t["core.i_mag_peak_a"] = real_key([](RunConfig& c) { return &c.core.i_mag_peak_a; },
                                          "peak magnetizing current, amperes; 0 = derived");
        t["core.i_sec_peak_a"] = real_key([](RunConfig& c) { return &c.core.i_sec_peak_a; },
                                          "peak secondary current, amperes; 0 = derived");

        t["load.type"] = text_key([](RunConfig& c) { return &c.load.type; },
                                  "resistance | power | none");
        t["load.r_ohm"] = real_key([](RunConfig& c) { return &c.load.r_ohm; },
                                   "load resistance, ohms");
        t["load.p_w"] = real_key([](RunConfig& c) { return &c.load.p_w; },
                                 "constant-power load, watts");

        t["sim.duration_s"] = real_key([](RunConfig& c) { return &c.sim.duration_s; },
                                       "simulated time, seconds");
        t["sim.v_o_initial_v"] = real_key([](RunConfig& c) { return &c.sim.v_o_initial_v; },
                                          "bulk capacitor voltage at t = 0, volts");
        t["sim.record_decimation"] = int_key([](RunConfig& c) { return &c.sim.record_decimation; },
                                             "record every this many half switching periods");

        t["design.margin"] = real_key([](RunConfig& c) { return &c.design.margin; },
                                      "fractional headroom applied to the L_L bound");
        return t;
    }();
    return table;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_real(std::string_view v, std::string_view key) {
    // std::from_chars(double) in libstdc++ accepts the strtod grammar minus
    // leading whitespace; v is already trimmed.
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        throw config_error("bad numeric value for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
}

int parse_int(std::string_view v, std::string_view key) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw config_error("bad integer value for " + std::string(key) + ": '" + std::string(v) + "'");
    }
    return out;
}

void assign(RunConfig& cfg, std::string_view key, std::string_view value) {
    const auto& table = key_table();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw config_error("unknown config key: " + std::string(key));
    }
    const KeyBinding& b = it->second;
    switch (b.type) {
    case KeyBinding::Type::real:
        *b.real_ptr(cfg) = parse_real(value, key);
        break;
    case KeyBinding::Type::integer:
        *b.int_ptr(cfg) = parse_int(value, key);
        break;
    case KeyBinding::Type::text:
        *b.text_ptr(cfg) = std::string(trim(value));
        break;
    }
}

std::string format_real(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw config_error("malformed section header at line " + std::to_string(line_no));
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw config_error("expected 'key = value' at line " + std::to_string(line_no));
        }
        std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        std::string full_key;
        if (key.find('.') == std::string_view::npos && !section.empty()) {
            full_key = section + "." + std::string(key);
            key = full_key;
        }
        assign(cfg, key, value);
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("cannot open config file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw config_error("override must be key=value: " + std::string(assignment));
    }
    assign(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string echo_config(const RunConfig& cfg) {
    RunConfig resolved = cfg;
    resolved.controller.k_max = cfg.effective_k_max();
    resolved.controller.update_period_s = cfg.effective_update_period_s();

    std::string out;
    for (const auto& [key, binding] : key_table()) {
        out += key;
        out += " = ";
        RunConfig& mut = resolved; // accessors need a mutable ref; values are read only
        switch (binding.type) {
        case KeyBinding::Type::real:
            out += format_real(*binding.real_ptr(mut));
            break;
        case KeyBinding::Type::integer:
            out += std::to_string(*binding.int_ptr(mut));
            break;
        case KeyBinding::Type::text:
            out += *binding.text_ptr(mut);
            break;
        }
        out += '\n';
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> config_key_docs() {
    std::vector<std::pair<std::string, std::string>> docs;
    for (const auto& [key, binding] : key_table()) {
        docs.emplace_back(key, binding.doc);
    }
    return docs;
}

} // namespace leakpfc::config
