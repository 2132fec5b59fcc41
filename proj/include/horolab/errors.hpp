#pragma once

#include <stdexcept>
#include <string>

namespace horolab {

// Thrown when a request exceeds a declared resource guard (sieve size,
// enumeration bounds, evaluation budgets). CLI maps this to exit code 3.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an input is structurally degenerate (reduction failed to
// terminate, singular shear decomposition requested, pole hit).
class degenerate_error : public std::domain_error {
public:
    explicit degenerate_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace horolab
