#pragma once
#include <stdexcept>
#include <string>

namespace tpwkb {

// Argument lies outside the validity window of an expansion (wrong side of the
// turning point, or inside the |t| <~ eps^{2/3} region where the caller should
// switch to the blowup-chart formulas instead).
class turning_region_error : public std::domain_error {
public:
    explicit turning_region_error(const std::string& msg) : std::domain_error(msg) {}
};

// Integration failed (step underflow, Riccati blow-up, missed eigenvalue...).
class integration_error : public std::runtime_error {
public:
    explicit integration_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace tpwkb
