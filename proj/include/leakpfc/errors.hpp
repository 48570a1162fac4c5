#pragma once

#include <stdexcept>
#include <string>

namespace leakpfc {

/// A requested design point cannot be realized (e.g. boost condition violated).
class infeasible_design_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Instantaneous input exceeds the output voltage; the boost equations do not apply.
class boost_violation_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A closed-form half-period was evaluated in the wrong conduction mode.
class mode_violation_error : public std::domain_error {
public:
    mode_violation_error(const std::string& msg, const std::string& suggested)
        : std::domain_error(msg), suggested_mode(suggested) {}
    std::string suggested_mode;
};

/// Eq.-style CCM timing requested beyond the real-root limit.
class gain_saturation_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Magnetic network cannot be solved (zero air-gap reluctance).
class singular_network_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Sample spacing too coarse for the requested computation.
class resolution_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Analysis window does not cover an integer number of periods (or is too short).
class windowing_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bad configuration file or command usage.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace leakpfc
