#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

// Two failure families, matching the CLI exit-code contract:
//   usage_error   -> exit 2 (bad arguments, domain violations, excluded modes)
//   numeric_error -> exit 3 (resource caps, convergence failures, tolerance breaches, overflow)
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct excluded_mode_error : usage_error {
    explicit excluded_mode_error(const std::string& msg) : usage_error(msg) {}
};

struct resource_cap_error : numeric_error {
    explicit resource_cap_error(const std::string& msg) : numeric_error(msg) {}
};

struct convergence_error : numeric_error {
    explicit convergence_error(const std::string& msg) : numeric_error(msg) {}
};

struct overflow_error : numeric_error {
    explicit overflow_error(const std::string& msg) : numeric_error(msg) {}
};

} // namespace grushin
