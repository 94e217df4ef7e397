#include "listsort/metrics.hpp"

#include <string>

#include "listsort/error.hpp"

namespace listsort {

namespace {

unsigned levels(unsigned key_bits, unsigned pattern_width) {
    if (pattern_width == 0 || pattern_width > 63 || key_bits % pattern_width != 0) {
        throw ConfigError("pattern width " + std::to_string(pattern_width) +
                          " does not divide key width " + std::to_string(key_bits));
    }
    return key_bits / pattern_width;
}

} // namespace

std::uint64_t coefficient(unsigned key_bits, unsigned pattern_width) {
    return std::uint64_t{levels(key_bits, pattern_width)} + 1;
}

std::uint64_t aux_memory_bound(const MemoryModel& model) {
    if (model.slot_size == 0) throw ConfigError("slot size must be positive");
    const std::uint64_t level_count = levels(model.key_bits, model.pattern_width);
    const std::uint64_t buckets = std::uint64_t{1} << model.pattern_width;
    const std::uint64_t slot = model.slot_size;
    return (buckets * slot + 3 * slot) * level_count + 2 * slot;
}

std::uint64_t predicted_ops(std::uint64_t n, unsigned key_bits, unsigned pattern_width) {
    return n * levels(key_bits, pattern_width) + n;
}

} // namespace listsort
