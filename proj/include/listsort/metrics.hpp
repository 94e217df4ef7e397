#pragma once

#include <algorithm>
#include <cstdint>

namespace listsort {

// Per-invocation operation tallies. Every field starts at zero and only grows.
struct Counters {
    std::uint64_t relink_count = 0;       // nodes moved into a bucket or partition chain
    std::uint64_t merge_visit_count = 0;  // nodes walked by end-splice merges
    std::uint64_t comparison_count = 0;   // key-vs-key comparisons
    std::uint32_t recursion_depth_max = 0;
    std::uint32_t live_bucket_arrays_max = 0;
    std::uint64_t bucket_scans = 0;       // bucket slots inspected while collecting

    friend bool operator==(const Counters&, const Counters&) = default;
};

// Probes are the instrumentation hooks every sorter is templated on.
// NullProbe compiles to nothing; CountingProbe fills a Counters record.
struct NullProbe {
    static constexpr bool enabled = false;

    void relink() noexcept {}
    void merge_visit() noexcept {}
    void compare() noexcept {}
    void scan_buckets(std::uint64_t) noexcept {}
    void enter_level() noexcept {}
    void leave_level() noexcept {}
    void note_depth(std::uint32_t) noexcept {}
    void acquire_bucket_array() noexcept {}
    void release_bucket_array() noexcept {}
};

class CountingProbe {
public:
    static constexpr bool enabled = true;

    void relink() noexcept { ++counters_.relink_count; }
    void merge_visit() noexcept { ++counters_.merge_visit_count; }
    void compare() noexcept { ++counters_.comparison_count; }
    void scan_buckets(std::uint64_t slots) noexcept { counters_.bucket_scans += slots; }

    void enter_level() noexcept { note_depth(++depth_); }
    void leave_level() noexcept { --depth_; }
    void note_depth(std::uint32_t depth) noexcept {
        counters_.recursion_depth_max = std::max(counters_.recursion_depth_max, depth);
    }

    void acquire_bucket_array() noexcept {
        ++live_arrays_;
        counters_.live_bucket_arrays_max =
            std::max(counters_.live_bucket_arrays_max, live_arrays_);
    }
    void release_bucket_array() noexcept { --live_arrays_; }

    const Counters& counters() const noexcept { return counters_; }
    void reset() noexcept { *this = CountingProbe{}; }

private:
    Counters counters_;
    std::uint32_t depth_ = 0;
    std::uint32_t live_arrays_ = 0;
};

// Link-slot cost model for the auxiliary memory bound. slot_size defaults to
// a 4-byte pointer.
struct MemoryModel {
    unsigned key_bits = 32;
    unsigned pattern_width = 4;
    unsigned slot_size = 4;
};

// Passes over the input per node: key_bits / pattern_width split passes plus
// one merge pass. Throws ConfigError unless pattern_width divides key_bits.
std::uint64_t coefficient(unsigned key_bits, unsigned pattern_width);

// Worst-case auxiliary bytes of one sort, independent of list length:
// (buckets*slot + 3*slot) * levels + 2*slot.
std::uint64_t aux_memory_bound(const MemoryModel& model);

// n * (key_bits / pattern_width) + n.
std::uint64_t predicted_ops(std::uint64_t n, unsigned key_bits, unsigned pattern_width);

} // namespace listsort
