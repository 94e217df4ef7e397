#pragma once

// Most-significant-bits-first bucket sort for singly-linked lists.
//
// Each level moves every node of its chain into one of 2^K buckets chosen by
// the next K bits of the key (head insertion), then either recurses into each
// nonempty bucket or, once all bits are consumed, splices the buckets
// together. Sorted fragments are chained through an end marker: a call
// returns sorted(list) followed by the marker it was given, so the fragments
// produced last end up first and no separate concatenation pass is needed
// except for the final-level end splice.

#include <bit>
#include <cassert>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "listsort/error.hpp"
#include "listsort/list_core.hpp"
#include "listsort/metrics.hpp"

namespace listsort {

enum class Order { ascending, descending };

// How the collect loop finds nonempty buckets. `full` visits every slot of
// the bucket array; `occupied` walks an occupancy bitmap filled during the
// split. Output and relink/merge counts are identical, only bucket_scans and
// running time differ.
enum class BucketScan { occupied, full };

struct KeyDescriptor {
    unsigned bit_width = 32;
    bool is_signed = false;

    template <class Key>
    static constexpr KeyDescriptor of() noexcept {
        return {static_cast<unsigned>(sizeof(Key) * 8), std::is_signed_v<Key>};
    }

    // Throws ConfigError unless bit_width is one of 8, 16, 32, 64.
    void validate() const;

    constexpr std::uint64_t mask() const noexcept {
        return bit_width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bit_width) - 1;
    }

    // True when `key` is representable in bit_width bits under this signedness.
    template <class Key>
    constexpr bool fits(Key key) const noexcept {
        static_assert(std::is_integral_v<Key>);
        if (bit_width >= 64) return true;
        if (is_signed) {
            const std::int64_t value = static_cast<std::int64_t>(key);
            const std::int64_t limit = std::int64_t{1} << (bit_width - 1);
            return value >= -limit && value < limit;
        }
        if constexpr (std::is_signed_v<Key>) {
            if (key < 0) return false;
        }
        return static_cast<std::uint64_t>(key) <= mask();
    }

    friend bool operator==(const KeyDescriptor&, const KeyDescriptor&) = default;
};

struct PbitConfig {
    unsigned pattern_width = 4;
    Order order = Order::ascending;
    // Requires an even number of levels: each level reverses equal keys once.
    bool stable = true;
    BucketScan scan = BucketScan::occupied;

    constexpr std::uint32_t bucket_count() const noexcept { return std::uint32_t{1} << pattern_width; }

    // Throws ConfigError if the pattern width cannot split a `key_bits`-wide key.
    void validate(unsigned key_bits) const;
    void validate(const KeyDescriptor& kd) const;
};

// (pattern >> shift) mod 2^width, as a shift followed by a mask.
constexpr std::uint32_t extract_bits(std::uint64_t pattern, unsigned shift, unsigned width) noexcept {
    return static_cast<std::uint32_t>((pattern >> shift) & ((std::uint64_t{1} << width) - 1));
}

struct FloatFields {
    std::uint32_t sign = 0;      // 1 bit
    std::uint32_t exponent = 0;  // 8-bit biased characteristic
    std::uint32_t mantissa = 0;  // 23 stored fraction bits
};

// Raw single-precision encoding fields. Throws std::domain_error for NaN/inf.
FloatFields decompose_float(float value);
float compose_float(const FloatFields& fields) noexcept;

namespace detail {

// Unsigned bit pattern of an integer key, truncated to the key width.
// Signed keys are reinterpreted as two's complement.
template <class Key>
struct IntegerPattern {
    std::uint64_t mask = ~std::uint64_t{0};

    std::uint64_t operator()(Key key) const noexcept {
        using U = std::make_unsigned_t<Key>;
        return static_cast<std::uint64_t>(static_cast<U>(key)) & mask;
    }
};

struct MantissaPattern {
    std::uint64_t operator()(float key) const noexcept {
        return std::bit_cast<std::uint32_t>(key) & 0x7FFFFFu;
    }
};

struct ExponentPattern {
    std::uint64_t operator()(float key) const noexcept {
        return (std::bit_cast<std::uint32_t>(key) >> 23) & 0xFFu;
    }
};

// Bucket arrays for every level of one sort, reused across sorts. All slots
// and occupancy words are zero between runs; the collect loop restores that
// as it consumes buckets.
template <class N>
class Workspace {
public:
    Workspace() = default;
    Workspace(unsigned levels, unsigned pattern_width)
        : levels_(levels),
          buckets_(std::uint32_t{1} << pattern_width),
          words_((buckets_ + 63) / 64),
          slots_(std::size_t{levels} * buckets_, nullptr),
          occupancy_(std::size_t{levels} * words_, 0) {}

    unsigned levels() const noexcept { return levels_; }
    std::span<N*> slots(unsigned depth) noexcept {
        return {slots_.data() + std::size_t{depth} * buckets_, buckets_};
    }
    std::span<std::uint64_t> occupancy(unsigned depth) noexcept {
        return {occupancy_.data() + std::size_t{depth} * words_, words_};
    }

private:
    unsigned levels_ = 0;
    std::uint32_t buckets_ = 0;
    std::uint32_t words_ = 0;
    std::vector<N*> slots_;
    std::vector<std::uint64_t> occupancy_;
};

// Head-inserts every node of `list` into the bucket selected by the K bits
// at `shift`. Within a bucket, nodes end up in reverse input order.
template <class N, class Pattern, class Probe>
void split(N* list, unsigned shift, unsigned width, const Pattern& pattern,
           std::span<N*> buckets, std::span<std::uint64_t> occupancy, Probe& probe) noexcept {
    while (list != nullptr) {
        N* node = list;
        list = list->next;
        const std::uint32_t index = extract_bits(pattern(node->key), shift, width);
        node->next = buckets[index];
        buckets[index] = node;
        occupancy[index >> 6] |= std::uint64_t{1} << (index & 63);
        probe.relink();
    }
}

template <class N, class Pattern, class Probe>
class BucketPass {
public:
    BucketPass(Workspace<N>& workspace, unsigned width, Order order, BucketScan scan,
               Pattern pattern, Probe& probe) noexcept
        : workspace_(workspace), width_(width), order_(order), scan_(scan),
          pattern_(pattern), probe_(probe) {}

    // sorted(list) ++ marker, where `remaining_bits` low bits of the pattern
    // are still to be examined.
    N* run(N* list, unsigned remaining_bits, N* marker) noexcept {
        assert(remaining_bits % width_ == 0);
        assert(remaining_bits / width_ <= workspace_.levels());
        return level(list, remaining_bits, marker, 0);
    }

private:
    N* level(N* list, unsigned bits, N* marker, unsigned depth) noexcept {
        if (list == nullptr) return marker;
        bits -= width_;

        probe_.enter_level();
        probe_.acquire_bucket_array();
        std::span<N*> buckets = workspace_.slots(depth);
        std::span<std::uint64_t> occupancy = workspace_.occupancy(depth);
        split(list, bits, width_, pattern_, buckets, occupancy, probe_);

        auto collect = [&](std::uint32_t index) {
            N* bucket = buckets[index];
            buckets[index] = nullptr;
            marker = bits != 0 ? level(bucket, bits, marker, depth + 1)
                               : merge(bucket, marker, probe_);
        };

        if (scan_ == BucketScan::full) {
            const std::uint32_t count = static_cast<std::uint32_t>(buckets.size());
            probe_.scan_buckets(count);
            if (order_ == Order::ascending) {
                for (std::uint32_t i = count; i-- > 0;) collect(i);
            } else {
                for (std::uint32_t i = 0; i < count; ++i) collect(i);
            }
            for (auto& word : occupancy) word = 0;
        } else if (order_ == Order::ascending) {
            for (std::size_t w = occupancy.size(); w-- > 0;) {
                std::uint64_t word = std::exchange(occupancy[w], 0);
                while (word != 0) {
                    const unsigned bit = 63u - static_cast<unsigned>(std::countl_zero(word));
                    word &= ~(std::uint64_t{1} << bit);
                    probe_.scan_buckets(1);
                    collect(static_cast<std::uint32_t>(w * 64 + bit));
                }
            }
        } else {
            for (std::size_t w = 0; w < occupancy.size(); ++w) {
                std::uint64_t word = std::exchange(occupancy[w], 0);
                while (word != 0) {
                    const unsigned bit = static_cast<unsigned>(std::countr_zero(word));
                    word &= word - 1;
                    probe_.scan_buckets(1);
                    collect(static_cast<std::uint32_t>(w * 64 + bit));
                }
            }
        }

        probe_.release_bucket_array();
        probe_.leave_level();
        return marker;
    }

    Workspace<N>& workspace_;
    unsigned width_;
    Order order_;
    BucketScan scan_;
    Pattern pattern_;
    Probe& probe_;
};

// Stable two-way partition by sign. Appends at the tails so that equal keys
// keep their input order (head insertion here would flip the level parity).
template <class N, class Probe>
std::pair<N*, N*> partition_by_sign(N* list, Probe& probe) noexcept {
    N* negative = nullptr;
    N* non_negative = nullptr;
    N** negative_tail = &negative;
    N** non_negative_tail = &non_negative;
    while (list != nullptr) {
        N* node = list;
        list = list->next;
        if (node->key < 0) {
            *negative_tail = node;
            negative_tail = &node->next;
        } else {
            *non_negative_tail = node;
            non_negative_tail = &node->next;
        }
        probe.relink();
    }
    *negative_tail = nullptr;
    *non_negative_tail = nullptr;
    return {negative, non_negative};
}

template <class N>
void debug_check(const N* head, std::size_t expected_nodes) {
#ifndef NDEBUG
    if (validate(head, expected_nodes) != ChainStatus::ok || length(head) != expected_nodes) {
        throw std::logic_error("sorted chain failed validation");
    }
#else
    (void)head;
    (void)expected_nodes;
#endif
}

template <class N>
std::size_t debug_length(const N* head) noexcept {
#ifndef NDEBUG
    return length(head);
#else
    (void)head;
    return 0;
#endif
}

} // namespace detail

// Bucket indices of every node, as a standalone step. Buckets are indexed by
// the K bits at `shift` of the key's unsigned pattern; the input is consumed.
template <ListNode N, class Probe = NullProbe>
std::vector<N*> split_into_buckets(N* list, unsigned shift, const PbitConfig& config, Probe& probe) {
    using Key = typename N::key_type;
    std::vector<N*> buckets(config.bucket_count(), nullptr);
    std::vector<std::uint64_t> occupancy((config.bucket_count() + 63) / 64, 0);
    detail::split(list, shift, config.pattern_width, detail::IntegerPattern<Key>{}, std::span<N*>(buckets),
                  std::span<std::uint64_t>(occupancy), probe);
    return buckets;
}

template <ListNode N>
std::vector<N*> split_into_buckets(N* list, unsigned shift, const PbitConfig& config) {
    NullProbe probe;
    return split_into_buckets(list, shift, config, probe);
}

// Reusable sorter for one key layout; keeps its bucket arrays between sorts.
template <ListNode N>
class PbitSorter {
public:
    using key_type = typename N::key_type;

    explicit PbitSorter(PbitConfig config = {}) : PbitSorter(KeyDescriptor::of<key_type>(), config) {}

    PbitSorter(KeyDescriptor kd, PbitConfig config) : kd_(kd), config_(config) {
        static_assert(std::is_integral_v<key_type>, "integer keys only; see sort_floats");
        config_.validate(kd_);
        if (kd_.bit_width > sizeof(key_type) * 8) {
            throw ConfigError("key width exceeds the node's key type");
        }
        if (kd_.is_signed != std::is_signed_v<key_type>) {
            throw ConfigError("descriptor signedness does not match the node's key type");
        }
        workspace_ = detail::Workspace<N>(kd_.bit_width / config_.pattern_width, config_.pattern_width);
    }

    const KeyDescriptor& descriptor() const noexcept { return kd_; }
    const PbitConfig& config() const noexcept { return config_; }

    // sorted(list) ++ marker over the low `remaining_bits` of every key.
    template <class Probe>
    N* run(N* list, unsigned remaining_bits, N* marker, Probe& probe) {
        if (remaining_bits == 0 || remaining_bits % config_.pattern_width != 0 ||
            remaining_bits > kd_.bit_width) {
            throw ConfigError("remaining bits must be a positive multiple of the pattern width within the key");
        }
        return pass(probe).run(list, remaining_bits, marker);
    }

    template <class Probe>
    N* sort(N* list, Probe& probe) {
        const std::size_t n = detail::debug_length(list);
        N* sorted = nullptr;
        if (!kd_.is_signed) {
            sorted = pass(probe).run(list, kd_.bit_width, nullptr);
        } else {
            auto [negative, non_negative] = detail::partition_by_sign(list, probe);
            auto bucket_pass = pass(probe);
            // In two's complement, negatives sort above non-negatives as raw
            // patterns, so each sign class is sorted separately and chained.
            if (config_.order == Order::ascending) {
                sorted = bucket_pass.run(negative, kd_.bit_width,
                                         bucket_pass.run(non_negative, kd_.bit_width, nullptr));
            } else {
                sorted = bucket_pass.run(non_negative, kd_.bit_width,
                                         bucket_pass.run(negative, kd_.bit_width, nullptr));
            }
        }
        detail::debug_check(sorted, n);
        return sorted;
    }

    N* sort(N* list) {
        NullProbe probe;
        return sort(list, probe);
    }

private:
    template <class Probe>
    auto pass(Probe& probe) {
        return detail::BucketPass<N, detail::IntegerPattern<key_type>, Probe>(
            workspace_, config_.pattern_width, config_.order, config_.scan,
            detail::IntegerPattern<key_type>{kd_.mask()}, probe);
    }

    KeyDescriptor kd_;
    PbitConfig config_;
    detail::Workspace<N> workspace_;
};

template <ListNode N, class Probe>
N* pbit_recursive(N* list, unsigned remaining_bits, N* marker, const PbitConfig& config, Probe& probe) {
    using Key = typename N::key_type;
    const KeyDescriptor kd{static_cast<unsigned>(sizeof(Key) * 8), std::is_signed_v<Key>};
    PbitConfig unchecked = config;
    unchecked.stable = false;
    PbitSorter<N> sorter(kd, unchecked);
    return sorter.run(list, remaining_bits, marker, probe);
}

template <ListNode N>
N* pbit_recursive(N* list, unsigned remaining_bits, N* marker, const PbitConfig& config) {
    NullProbe probe;
    return pbit_recursive(list, remaining_bits, marker, config, probe);
}

template <ListNode N, class Probe>
N* sort(N* list, const KeyDescriptor& kd, const PbitConfig& config, Probe& probe) {
    PbitSorter<N> sorter(kd, config);
    return sorter.sort(list, probe);
}

template <ListNode N>
N* sort(N* list, const KeyDescriptor& kd, const PbitConfig& config) {
    NullProbe probe;
    return sort(list, kd, config, probe);
}

template <ListNode N, class Probe>
N* sort(N* list, const PbitConfig& config, Probe& probe) {
    return sort(list, KeyDescriptor::of<typename N::key_type>(), config, probe);
}

template <ListNode N>
N* sort(N* list, const PbitConfig& config = {}) {
    return sort(list, KeyDescriptor::of<typename N::key_type>(), config);
}

// Only K in {1, 2, 4} splits both the 24-bit padded mantissa and the 8-bit
// exponent into an even number of levels.
void validate_float_config(const PbitConfig& config);

// Sorts single-precision keys in numeric order by two stable passes, first
// over the mantissa field and then over the exponent field. Sign classes are
// handled separately, negatives by descending magnitude; -0.0 and +0.0 are
// equal keys. Rejects NaN/inf before touching any link.
template <ListNode N, class Probe>
    requires std::same_as<typename N::key_type, float>
N* sort_floats(N* list, const PbitConfig& config, Probe& probe) {
    validate_float_config(config);
    std::size_t position = 0;
    for (const N* node = list; node != nullptr; node = node->next, ++position) {
        if (!std::isfinite(node->key)) throw NonFiniteKeyError(position, node->payload);
    }
    const std::size_t n = position;

    constexpr unsigned kMantissaBits = 24;
    constexpr unsigned kExponentBits = 8;
    detail::Workspace<N> workspace(kMantissaBits / config.pattern_width, config.pattern_width);

    auto by_field = [&](N* chain, auto pattern, unsigned bits, Order order, N* marker) {
        detail::BucketPass<N, decltype(pattern), Probe> bucket_pass(
            workspace, config.pattern_width, order, config.scan, pattern, probe);
        return bucket_pass.run(chain, bits, marker);
    };
    auto two_pass = [&](N* chain, Order order, N* marker) {
        chain = by_field(chain, detail::MantissaPattern{}, kMantissaBits, order, nullptr);
        return by_field(chain, detail::ExponentPattern{}, kExponentBits, order, marker);
    };

    // -0.0 compares equal to 0 and stays with the non-negatives.
    N* negative = nullptr;
    N* non_negative = nullptr;
    {
        N** negative_tail = &negative;
        N** non_negative_tail = &non_negative;
        while (list != nullptr) {
            N* node = list;
            list = list->next;
            N**& tail = node->key < 0.0f ? negative_tail : non_negative_tail;
            *tail = node;
            tail = &node->next;
            probe.relink();
        }
        *negative_tail = nullptr;
        *non_negative_tail = nullptr;
    }

    constexpr Order up = Order::ascending;
    constexpr Order down = Order::descending;
    N* sorted = config.order == up
                    ? two_pass(negative, down, two_pass(non_negative, up, nullptr))
                    : two_pass(non_negative, down, two_pass(negative, up, nullptr));
    detail::debug_check(sorted, n);
    return sorted;
}

template <ListNode N>
    requires std::same_as<typename N::key_type, float>
N* sort_floats(N* list, const PbitConfig& config = {}) {
    NullProbe probe;
    return sort_floats(list, config, probe);
}

} // namespace listsort
