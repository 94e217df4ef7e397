#include "listsort/pbit.hpp"

#include <string>

namespace listsort {

void KeyDescriptor::validate() const {
    if (bit_width != 8 && bit_width != 16 && bit_width != 32 && bit_width != 64) {
        throw ConfigError("key width must be 8, 16, 32 or 64 bits, got " + std::to_string(bit_width));
    }
}

void PbitConfig::validate(unsigned key_bits) const {
    const unsigned k = pattern_width;
    if (k != 1 && k != 2 && k != 4 && k != 8 && k != 16) {
        throw ConfigError("pattern width must be 1, 2, 4, 8 or 16 bits, got " + std::to_string(k));
    }
    if (key_bits == 0 || key_bits % k != 0) {
        throw ConfigError("pattern width " + std::to_string(k) + " does not divide key width " +
                          std::to_string(key_bits));
    }
    if (stable && (key_bits / k) % 2 != 0) {
        throw ConfigError("stable sort needs an even level count, " + std::to_string(key_bits) + "/" +
                          std::to_string(k) + " is odd");
    }
}

void PbitConfig::validate(const KeyDescriptor& kd) const {
    kd.validate();
    validate(kd.bit_width);
}

void validate_float_config(const PbitConfig& config) {
    PbitConfig stable = config;
    stable.stable = true;
    try {
        stable.validate(24u);
        stable.validate(8u);
    } catch (const ConfigError& error) {
        throw ConfigError(std::string("float sort: ") + error.what());
    }
}

FloatFields decompose_float(float value) {
    if (!std::isfinite(value)) throw std::domain_error("decompose_float: non-finite value");
    const auto bits = std::bit_cast<std::uint32_t>(value);
    return {bits >> 31, (bits >> 23) & 0xFFu, bits & 0x7FFFFFu};
}

float compose_float(const FloatFields& fields) noexcept {
    const std::uint32_t bits =
        ((fields.sign & 1u) << 31) | ((fields.exponent & 0xFFu) << 23) | (fields.mantissa & 0x7FFFFFu);
    return std::bit_cast<float>(bits);
}

} // namespace listsort
