#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace listsort {

// Raised before any node is touched when a sorter configuration cannot be
// applied to the key layout it was given.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A floating-point key that has no place in a total order (NaN, +-inf).
class NonFiniteKeyError : public std::domain_error {
public:
    NonFiniteKeyError(std::size_t position, std::uint64_t payload)
        : std::domain_error("non-finite key at position " + std::to_string(position) +
                            " (payload " + std::to_string(payload) + ")"),
          position_(position), payload_(payload) {}

    std::size_t position() const noexcept { return position_; }
    std::uint64_t payload() const noexcept { return payload_; }

private:
    std::size_t position_;
    std::uint64_t payload_;
};

} // namespace listsort
