#include "listsort/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "listsort/baseline_sorters.hpp"

namespace listsort::bench {

namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 6> kNames{{
    {Algorithm::pbit, "pbit"},
    {Algorithm::quickersort, "quickersort"},
    {Algorithm::mergesort, "mergesort"},
    {Algorithm::psort, "psort"},
    {Algorithm::psort2, "psort2"},
    {Algorithm::array_baseline, "array_baseline"},
}};

// One bench column: an algorithm, plus the pattern width for pbit.
struct Variant {
    Algorithm algorithm;
    unsigned k = 0;
};

std::vector<Variant> variants(const BenchSpec& spec) {
    std::vector<Variant> out;
    for (Algorithm algorithm : spec.algorithms) {
        if (algorithm == Algorithm::pbit) {
            for (unsigned k : spec.pattern_widths) out.push_back({algorithm, k});
        } else {
            out.push_back({algorithm, 0});
        }
    }
    return out;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

template <class Key>
class VariantRunner {
public:
    using N = Node<Key>;

    VariantRunner(const Variant& variant, Order order) : variant_(variant), order_(order) {
        if (variant.algorithm == Algorithm::pbit) {
            PbitConfig config;
            config.pattern_width = variant.k;
            config.order = order;
            pbit_.emplace(KeyDescriptor::of<Key>(), config);
        }
    }

    // Comparison sorters are ascending-only; pbit and the array sort follow
    // the requested order.
    Order output_order() const noexcept {
        switch (variant_.algorithm) {
        case Algorithm::pbit:
        case Algorithm::array_baseline: return order_;
        default: return Order::ascending;
        }
    }

    bool stable() const noexcept {
        return variant_.algorithm == Algorithm::pbit || variant_.algorithm == Algorithm::mergesort;
    }

    template <class Probe>
    N* sort(N* head, Probe& probe) {
        switch (variant_.algorithm) {
        case Algorithm::pbit: return pbit_->sort(head, probe);
        case Algorithm::quickersort: return quickersort(head, probe);
        case Algorithm::mergesort: return mergesort(head, probe);
        case Algorithm::psort: return psort(head, static_cast<N*>(nullptr), probe);
        case Algorithm::psort2: return psort2(head, static_cast<N*>(nullptr), probe);
        case Algorithm::array_baseline: return sort_as_array(head);
        }
        return head;
    }

private:
    // Copies the keys out, sorts them contiguously and writes them back in
    // list order. Not a list sort: links are untouched and payloads no longer
    // travel with their keys.
    N* sort_as_array(N* head) {
        keys_.clear();
        for (N* node = head; node != nullptr; node = node->next) keys_.push_back(node->key);
        if (order_ == Order::ascending) {
            std::sort(keys_.begin(), keys_.end());
        } else {
            std::sort(keys_.begin(), keys_.end(), std::greater<>{});
        }
        std::size_t i = 0;
        for (N* node = head; node != nullptr; node = node->next) node->key = keys_[i++];
        return head;
    }

    Variant variant_;
    Order order_;
    std::optional<PbitSorter<N>> pbit_;
    std::vector<Key> keys_;
};

template <class Key>
bool matches(const Node<Key>* output, const Node<Key>* expected, std::uint64_t n, bool compare_payloads,
             bool check_payload_set) {
    std::vector<std::uint64_t> payloads;
    std::uint64_t count = 0;
    for (; output != nullptr && expected != nullptr; output = output->next, expected = expected->next) {
        if (++count > n) return false;
        if (output->key != expected->key) return false;
        if (compare_payloads && output->payload != expected->payload) return false;
        payloads.push_back(output->payload);
    }
    if (output != nullptr || expected != nullptr || count != n) return false;
    if (check_payload_set) {
        std::sort(payloads.begin(), payloads.end());
        for (std::uint64_t i = 0; i < n; ++i) {
            if (payloads[i] != i) return false;
        }
    }
    return true;
}

BenchRow mean_row(const std::vector<BenchRow>& rows, const BenchSpec& spec) {
    BenchRow mean = rows.front();
    mean.repeat.reset();
    mean.seed = spec.seed;
    const double count = static_cast<double>(rows.size());
    auto average = [&](auto field) {
        long double sum = 0;
        for (const auto& row : rows) sum += static_cast<long double>(field(row));
        return std::llround(static_cast<double>(sum / count));
    };
    double elapsed = 0;
    for (const auto& row : rows) elapsed += row.elapsed_ms;
    mean.elapsed_ms = elapsed / count;
    mean.counters = Counters{};
    mean.counters.relink_count = static_cast<std::uint64_t>(average([](const BenchRow& r) { return r.counters.relink_count; }));
    mean.counters.merge_visit_count =
        static_cast<std::uint64_t>(average([](const BenchRow& r) { return r.counters.merge_visit_count; }));
    mean.counters.comparison_count =
        static_cast<std::uint64_t>(average([](const BenchRow& r) { return r.counters.comparison_count; }));
    for (const auto& row : rows) {
        mean.counters.recursion_depth_max = std::max(mean.counters.recursion_depth_max, row.counters.recursion_depth_max);
    }
    mean.verified = std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.verified; });
    return mean;
}

template <class Key>
void run_typed(const BenchSpec& spec, BenchReport& report) {
    using N = Node<Key>;
    using Clock = std::chrono::steady_clock;
    const KeyRange range = spec.effective_range();

    for (const Variant& variant : variants(spec)) {
        VariantRunner<Key> runner(variant, spec.order);
        for (std::uint64_t n : spec.sizes) {
            std::vector<BenchRow> rows;
            for (std::uint32_t repeat = 0; repeat < spec.repeats; ++repeat) {
                BenchRow row;
                row.algorithm = std::string(name(variant.algorithm));
                row.n = n;
                row.k = variant.k;
                row.seed = input_seed(spec.seed, n, repeat);
                row.repeat = repeat;

                List<Key> input = generate<Key>(n, row.seed, range);
                std::optional<LinkedList<N>> expected;
                if (spec.verify) expected.emplace(oracle_sort(input.head(), runner.output_order()));

                NullProbe timing;
                const auto start = Clock::now();
                N* sorted = runner.sort(input.head(), timing);
                const auto stop = Clock::now();
                input.set_head(sorted);
                row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();

                if (spec.verify) {
                    const bool is_list_sort = variant.algorithm != Algorithm::array_baseline;
                    row.verified = matches(input.head(), expected->head(), n, runner.stable(), is_list_sort);
                    if (!row.verified) throw VerificationError(row);
                }

                List<Key> recount = generate<Key>(n, row.seed, range);
                CountingProbe probe;
                recount.set_head(runner.sort(recount.head(), probe));
                row.counters = probe.counters();
                rows.push_back(row);
            }
            report.rows.insert(report.rows.end(), rows.begin(), rows.end());
            report.rows.push_back(mean_row(rows, spec));
        }
    }
}

std::string format_ms(double ms, int digits) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, ms);
    return buffer;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <class T>
T parse_number(const std::string& text) {
    std::size_t used = 0;
    T value{};
    if constexpr (std::is_floating_point_v<T>) {
        value = static_cast<T>(std::stod(text, &used));
    } else {
        value = static_cast<T>(std::stoull(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument("malformed number: " + text);
    return value;
}

// Mean rows in first-seen order of (label), keyed by n.
std::vector<std::pair<std::string, std::map<std::uint64_t, double>>> mean_table(const BenchReport& report) {
    std::vector<std::pair<std::string, std::map<std::uint64_t, double>>> table;
    for (const BenchRow& row : report.rows) {
        if (!row.is_mean()) continue;
        const std::string label = row.label();
        auto it = std::find_if(table.begin(), table.end(), [&](const auto& entry) { return entry.first == label; });
        if (it == table.end()) {
            table.emplace_back(label, std::map<std::uint64_t, double>{});
            it = std::prev(table.end());
        }
        it->second[row.n] = row.elapsed_ms;
    }
    return table;
}

} // namespace

std::string_view name(Algorithm algorithm) noexcept {
    for (const auto& [value, text] : kNames) {
        if (value == algorithm) return text;
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
    for (const auto& [value, label] : kNames) {
        if (label == text) return value;
    }
    return std::nullopt;
}

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> algorithms = [] {
        std::vector<Algorithm> out;
        for (const auto& entry : kNames) out.push_back(entry.first);
        return out;
    }();
    return algorithms;
}

void BenchSpec::validate() const {
    if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
    if (sizes.empty()) throw std::invalid_argument("no sizes given");
    if (repeats < 1) throw std::invalid_argument("repeats must be at least 1");
    const KeyRange range = effective_range();
    if (range.lo > range.hi) throw std::invalid_argument("empty key range");
    if (std::find(algorithms.begin(), algorithms.end(), Algorithm::pbit) != algorithms.end()) {
        if (pattern_widths.empty()) throw std::invalid_argument("no pattern width given for pbit");
        for (unsigned k : pattern_widths) {
            PbitConfig config;
            config.pattern_width = k;
            try {
                config.validate(KeyDescriptor{32, is_signed});
            } catch (const ConfigError& error) {
                throw std::invalid_argument(error.what());
            }
        }
    }
}

KeyRange BenchSpec::effective_range() const {
    if (key_range) return *key_range;
    if (is_signed) {
        return {std::numeric_limits<std::int32_t>::min(), std::numeric_limits<std::int32_t>::max()};
    }
    return {0, std::numeric_limits<std::uint32_t>::max()};
}

std::string BenchRow::label() const {
    if (algorithm == "pbit") return "pbit (K=" + std::to_string(k) + ")";
    return algorithm;
}

VerificationError::VerificationError(BenchRow row)
    : std::runtime_error("sorted output disagrees with the oracle"), row_(std::move(row)) {}

std::string VerificationError::reproduction() const {
    return "verification failed: algorithm=" + row_.algorithm + " k=" + std::to_string(row_.k) +
           " n=" + std::to_string(row_.n) + " input_seed=" + std::to_string(row_.seed) +
           " repeat=" + std::to_string(row_.repeat.value_or(0));
}

std::uint64_t input_seed(std::uint64_t base_seed, std::uint64_t n, std::uint32_t repeat) noexcept {
    return splitmix64(splitmix64(base_seed ^ splitmix64(n)) + repeat);
}

BenchReport run(const BenchSpec& spec) {
    spec.validate();
    BenchReport report;
    if (spec.is_signed) {
        run_typed<std::int32_t>(spec, report);
    } else {
        run_typed<std::uint32_t>(spec, report);
    }
    return report;
}

std::optional<Format> parse_format(std::string_view text) noexcept {
    if (text == "csv") return Format::csv;
    if (text == "markdown") return Format::markdown;
    if (text == "plotdata") return Format::plotdata;
    return std::nullopt;
}

void emit(const BenchReport& report, Format format, std::ostream& out) {
    if (report.rows.empty()) throw std::invalid_argument("nothing to emit: empty report");

    if (format == Format::csv) {
        out << kCsvHeader << '\n';
        for (const BenchRow& row : report.rows) {
            out << row.algorithm << ',' << row.n << ',' << row.k << ',' << row.seed << ','
                << (row.repeat ? std::to_string(*row.repeat) : std::string("mean")) << ','
                << format_ms(row.elapsed_ms, 6) << ',' << row.counters.relink_count << ','
                << row.counters.merge_visit_count << ',' << row.counters.comparison_count << ','
                << row.counters.recursion_depth_max << ',' << (row.verified ? "true" : "false") << '\n';
        }
        return;
    }

    const auto table = mean_table(report);
    if (format == Format::markdown) {
        std::vector<std::uint64_t> sizes;
        for (const auto& [label, cells] : table) {
            for (const auto& [n, ms] : cells) {
                if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) sizes.push_back(n);
            }
        }
        std::sort(sizes.begin(), sizes.end());
        out << "| # | algorithm |";
        for (auto n : sizes) out << " n=" << n << " |";
        out << "\n|---|---|";
        for (std::size_t i = 0; i < sizes.size(); ++i) out << "---:|";
        out << '\n';
        std::size_t index = 0;
        for (const auto& [label, cells] : table) {
            out << "| " << ++index << " | " << label << " |";
            for (auto n : sizes) {
                auto it = cells.find(n);
                out << ' ' << (it == cells.end() ? std::string("-") : format_ms(it->second, 3)) << " |";
            }
            out << '\n';
        }
        out << "\nmean elapsed milliseconds per sort\n";
        return;
    }

    bool first = true;
    for (const auto& [label, cells] : table) {
        if (!first) out << '\n';
        first = false;
        out << "# " << label << '\n';
        for (const auto& [n, ms] : cells) out << n << ' ' << format_ms(ms, 6) << '\n';
    }
}

void emit(const BenchReport& report, Format format, const std::string& destination) {
    if (destination == "-") {
        emit(report, format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(destination, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + destination + " for writing");
    emit(report, format, file);
    file.flush();
    if (!file) throw std::runtime_error("failed writing " + destination);
}

std::vector<BenchRow> parse_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing or unexpected csv header");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 11) throw std::invalid_argument("expected 11 csv fields: " + line);
        BenchRow row;
        row.algorithm = fields[0];
        row.n = parse_number<std::uint64_t>(fields[1]);
        row.k = parse_number<unsigned>(fields[2]);
        row.seed = parse_number<std::uint64_t>(fields[3]);
        if (fields[4] != "mean") row.repeat = parse_number<std::uint32_t>(fields[4]);
        row.elapsed_ms = parse_number<double>(fields[5]);
        row.counters.relink_count = parse_number<std::uint64_t>(fields[6]);
        row.counters.merge_visit_count = parse_number<std::uint64_t>(fields[7]);
        row.counters.comparison_count = parse_number<std::uint64_t>(fields[8]);
        row.counters.recursion_depth_max = parse_number<std::uint32_t>(fields[9]);
        if (fields[10] != "true" && fields[10] != "false") throw std::invalid_argument("bad verified flag: " + line);
        row.verified = fields[10] == "true";
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace listsort::bench
