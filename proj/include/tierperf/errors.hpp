#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tierperf {

/// A document or parameter violates the configuration schema or an invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds the capacity of a mode, tier, or memory state.
class CapacityError : public std::runtime_error {
public:
    CapacityError(const std::string& what, std::uint64_t limit_bytes,
                  std::uint64_t requested_bytes)
        : std::runtime_error(what),
          limit_bytes(limit_bytes),
          requested_bytes(requested_bytes) {}

    std::uint64_t limit_bytes = 0;
    std::uint64_t requested_bytes = 0;

    std::uint64_t shortfall_bytes() const {
        return requested_bytes > limit_bytes ? requested_bytes - limit_bytes : 0;
    }
};

}  // namespace tierperf
