#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "listsort/error.hpp"
#include "listsort/list_core.hpp"
#include "listsort/metrics.hpp"
#include "listsort/pbit.hpp"

namespace listsort::bench {

enum class Algorithm { pbit, quickersort, mergesort, psort, psort2, array_baseline };

std::string_view name(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;
const std::vector<Algorithm>& all_algorithms();

struct KeyRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// Range of a classic C library rand() with RAND_MAX = 0x7FFF.
inline constexpr KeyRange kRandMaxRange{0, 0x7FFF};

struct BenchSpec {
    std::vector<Algorithm> algorithms;
    std::vector<std::uint64_t> sizes;
    std::vector<unsigned> pattern_widths{4};  // one pbit variant per width
    Order order = Order::ascending;
    bool is_signed = false;
    std::uint64_t seed = 1;
    std::uint32_t repeats = 10;
    std::optional<KeyRange> key_range;  // defaults to the full 32-bit range
    bool verify = true;

    // Throws std::invalid_argument.
    void validate() const;
    KeyRange effective_range() const;
};

struct BenchRow {
    std::string algorithm;
    std::uint64_t n = 0;
    unsigned k = 0;                        // pattern width, 0 for non-pbit rows
    std::uint64_t seed = 0;                // input seed; base seed on mean rows
    std::optional<std::uint32_t> repeat;   // empty on mean rows
    double elapsed_ms = 0.0;
    Counters counters;
    bool verified = false;

    bool is_mean() const noexcept { return !repeat.has_value(); }
    std::string label() const;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

// A sorter output that disagreed with the oracle. Carries enough to rerun
// exactly that input.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(BenchRow row);
    const BenchRow& row() const noexcept { return row_; }
    std::string reproduction() const;

private:
    BenchRow row_;
};

// Seed of the input list used for (n, repeat) under a base seed. Every
// algorithm sees the same input for the same (n, repeat).
std::uint64_t input_seed(std::uint64_t base_seed, std::uint64_t n, std::uint32_t repeat) noexcept;

// Uniform draw from [lo, hi] on a 64-bit Mersenne Twister, by rejection of
// the biased low zone, so sequences do not depend on the standard library's
// distribution implementation.
inline std::int64_t draw_uniform(std::mt19937_64& engine, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == std::numeric_limits<std::uint64_t>::max()) return static_cast<std::int64_t>(engine());
    const std::uint64_t range = span + 1;
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
        const std::uint64_t r = engine();
        if (r >= threshold) return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + r % range);
    }
}

// n nodes with keys drawn uniformly from `range`, payload = input position.
template <class Key>
List<Key> generate(std::uint64_t n, std::uint64_t seed, KeyRange range,
                   KeyDescriptor kd = KeyDescriptor::of<Key>()) {
    if (range.lo > range.hi) throw std::invalid_argument("empty key range");
    if (!kd.fits(static_cast<Key>(range.lo)) || !kd.fits(static_cast<Key>(range.hi)) ||
        static_cast<std::int64_t>(static_cast<Key>(range.lo)) != range.lo ||
        static_cast<std::int64_t>(static_cast<Key>(range.hi)) != range.hi) {
        throw std::invalid_argument("key range does not fit the key descriptor");
    }
    std::mt19937_64 engine(seed);
    std::vector<Key> keys(n);
    for (auto& key : keys) key = static_cast<Key>(draw_uniform(engine, range.lo, range.hi));
    return from_sequence(keys);
}

// Runs every (algorithm, n, repeat) sequentially on fresh inputs; appends a
// mean row after the repeats of each (algorithm, n). Throws
// VerificationError on the first output that disagrees with the oracle.
BenchReport run(const BenchSpec& spec);

enum class Format { csv, markdown, plotdata };

std::optional<Format> parse_format(std::string_view text) noexcept;

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,k,seed,repeat,elapsed_ms,relinks,merge_visits,comparisons,depth,verified";

// Throws std::invalid_argument on an empty report.
void emit(const BenchReport& report, Format format, std::ostream& out);
// "-" writes to standard output. Throws std::runtime_error if the file
// cannot be written.
void emit(const BenchReport& report, Format format, const std::string& destination);

// Inverse of the csv format, for the non-timing columns exactly.
std::vector<BenchRow> parse_csv(std::istream& in);

} // namespace listsort::bench
