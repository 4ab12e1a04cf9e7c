#pragma once

#include <stdexcept>
#include <string>

namespace anneal {

// Numeric argument outside the domain of a representation, power, or log.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Representation mean left the invertible range of rho.
struct range_error : std::runtime_error {
    explicit range_error(const std::string& what) : std::runtime_error(what) {}
};

// Saturated exp_q values or non-finite masses reached a consumer.
struct overflow_error : std::runtime_error {
    explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration (CLI / JSON).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anneal
