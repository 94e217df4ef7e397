#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "listsort/baseline_sorters.hpp"
#include "listsort/pbit.hpp"
#include "test_support.hpp"

using namespace listsort;
using testing::keys_of;
using testing::pairs_of;
using testing::random_keys;
using testing::stable_reference;

namespace {

const std::vector<std::uint32_t> kWorkedExample{21, 3, 209, 14, 156, 47, 3, 214};

PbitConfig make_config(unsigned k, Order order = Order::ascending) {
    PbitConfig config;
    config.pattern_width = k;
    config.order = order;
    return config;
}

template <class Key>
void check_against_reference(const std::vector<Key>& keys, const PbitConfig& config) {
    auto list = from_sequence(keys);
    CountingProbe probe;
    auto* sorted = sort(list.head(), KeyDescriptor::of<Key>(), config, probe);
    const auto expected = stable_reference(keys, config.order == Order::descending);
    REQUIRE(pairs_of(sorted) == expected);
}

} // namespace

TEST_CASE("extract_bits") {
    CHECK(extract_bits(123, 3, 4) == 15);
    CHECK(extract_bits(209, 4, 4) == 13);
    CHECK(extract_bits(214, 4, 4) == 13);
    for (unsigned k : {1u, 2u, 4u, 8u, 16u}) {
        for (unsigned shift = 0; shift + k <= 64; shift += k) CHECK(extract_bits(0, shift, k) == 0);
    }
    CHECK(extract_bits(0xFFFFFFFFFFFFFFFFull, 60, 4) == 0xF);
    CHECK(extract_bits(0xABCD, 8, 8) == 0xAB);
}

TEST_CASE("split_into_buckets groups by the selected bits") {
    auto list = from_sequence(kWorkedExample);
    CountingProbe probe;
    auto buckets = split_into_buckets(list.head(), 4, make_config(4), probe);
    REQUIRE(buckets.size() == 16);
    CHECK(to_sequence(buckets[0]) == std::vector<std::uint32_t>{3, 14, 3});
    CHECK(to_sequence(buckets[1]) == std::vector<std::uint32_t>{21});
    CHECK(to_sequence(buckets[2]) == std::vector<std::uint32_t>{47});
    CHECK(to_sequence(buckets[9]) == std::vector<std::uint32_t>{156});
    CHECK(to_sequence(buckets[13]) == std::vector<std::uint32_t>{214, 209});
    for (unsigned i : {3u, 4u, 5u, 6u, 7u, 8u, 10u, 11u, 12u, 14u, 15u}) CHECK(buckets[i] == nullptr);
    // head insertion: input positions 1, 3, 6 come out as 6, 3, 1
    CHECK(payload_sequence(buckets[0]) == std::vector<std::uint64_t>{6, 3, 1});
    CHECK(probe.counters().relink_count == kWorkedExample.size());

    Node<std::uint32_t>* empty = nullptr;
    for (auto* bucket : split_into_buckets(empty, 0, make_config(4))) CHECK(bucket == nullptr);

    auto sevens = from_sequence(std::vector<std::uint32_t>{7, 7, 7});
    auto seven_buckets = split_into_buckets(sevens.head(), 0, make_config(4));
    CHECK(to_sequence(seven_buckets[7]) == std::vector<std::uint32_t>{7, 7, 7});
    CHECK(payload_sequence(seven_buckets[7]) == std::vector<std::uint64_t>{2, 1, 0});
}

TEST_CASE("pbit_recursive") {
    auto marker_list = from_sequence(std::vector<std::uint32_t>{900, 901});
    Node<std::uint32_t>* empty = nullptr;
    CHECK(pbit_recursive(empty, 32, marker_list.head(), make_config(4)) == marker_list.head());

    auto list = from_sequence(kWorkedExample);
    auto* sorted = pbit_recursive(list.head(), 8, static_cast<Node<std::uint32_t>*>(nullptr), make_config(4));
    CHECK(to_sequence(sorted) == std::vector<std::uint32_t>{3, 3, 14, 21, 47, 156, 209, 214});

    auto again = from_sequence(kWorkedExample);
    auto tail = from_sequence(std::vector<std::uint32_t>{1000, 2000});
    auto* chained = pbit_recursive(again.head(), 8, tail.head(), make_config(4));
    CHECK(to_sequence(chained) == std::vector<std::uint32_t>{3, 3, 14, 21, 47, 156, 209, 214, 1000, 2000});

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto key = static_cast<std::uint32_t>(rng());
        List<std::uint32_t> single;
        single.push(key);
        auto* out = pbit_recursive(single.head(), 32, static_cast<Node<std::uint32_t>*>(nullptr), make_config(8));
        CHECK(to_sequence(out) == std::vector<std::uint32_t>{key});
    }

    auto bad = from_sequence(kWorkedExample);
    CHECK_THROWS_AS(pbit_recursive(bad.head(), 6, static_cast<Node<std::uint32_t>*>(nullptr), make_config(4)),
                    ConfigError);
    CHECK_THROWS_AS(pbit_recursive(bad.head(), 0, static_cast<Node<std::uint32_t>*>(nullptr), make_config(4)),
                    ConfigError);
}

TEST_CASE("sort examples") {
    List<std::uint32_t> empty;
    CHECK(sort(empty.head(), make_config(4)) == nullptr);

    auto mixed = from_sequence(std::vector<std::int32_t>{-3, 5, -1, 0});
    CHECK(to_sequence(sort(mixed.head(), make_config(4))) == std::vector<std::int32_t>{-3, -1, 0, 5});

    std::vector<std::uint8_t> bytes(kWorkedExample.begin(), kWorkedExample.end());
    auto descending = from_sequence(bytes);
    CHECK(to_sequence(sort(descending.head(), make_config(4, Order::descending))) ==
          std::vector<std::uint8_t>{214, 209, 156, 47, 21, 14, 3, 3});

    // an 8-bit descriptor over wider storage examines only the low byte
    auto narrow = from_sequence(kWorkedExample);
    CountingProbe probe;
    auto* sorted = sort(narrow.head(), KeyDescriptor{8, false}, make_config(4), probe);
    CHECK(to_sequence(sorted) == std::vector<std::uint32_t>{3, 3, 14, 21, 47, 156, 209, 214});
    CHECK(probe.counters().relink_count == 16);
    CHECK(probe.counters().merge_visit_count == 8);
    CHECK(probe.counters().recursion_depth_max == 2);

    auto narrow_signed = from_sequence(std::vector<std::int32_t>{-128, 127, -1, 0, 5, -5});
    CHECK(to_sequence(sort(narrow_signed.head(), KeyDescriptor{8, true}, make_config(4))) ==
          std::vector<std::int32_t>{-128, -5, -1, 0, 5, 127});
}

TEST_CASE("configuration is rejected before any mutation") {
    auto list = from_sequence(kWorkedExample);
    Node<std::uint32_t>* head = list.head();

    CHECK_THROWS_AS(sort(head, KeyDescriptor{32, false}, make_config(3)), ConfigError);
    CHECK_THROWS_AS(sort(head, KeyDescriptor{8, false}, make_config(16)), ConfigError);
    CHECK_THROWS_AS(sort(head, KeyDescriptor{8, false}, make_config(8)), ConfigError);  // one level: odd
    CHECK_THROWS_AS(sort(head, KeyDescriptor{12, false}, make_config(4)), ConfigError);
    CHECK_THROWS_AS(sort(head, KeyDescriptor{64, false}, make_config(4)), ConfigError);  // wider than storage
    CHECK_THROWS_AS(sort(head, KeyDescriptor{32, true}, make_config(4)), ConfigError);   // signedness mismatch
    CHECK_THROWS_AS(sort(head, KeyDescriptor{32, false}, make_config(0)), ConfigError);
    CHECK(list.head() == head);
    CHECK(to_sequence(head) == kWorkedExample);

    PbitConfig unstable = make_config(8);
    unstable.stable = false;
    CHECK(to_sequence(sort(head, KeyDescriptor{8, false}, unstable)) ==
          std::vector<std::uint32_t>{3, 3, 14, 21, 47, 156, 209, 214});

    CHECK(make_config(4).bucket_count() == 16);
    CHECK(make_config(8).bucket_count() == 256);
    CHECK(make_config(16).bucket_count() == 65536);
}

TEST_CASE("oracle equivalence over random inputs") {
    std::mt19937_64 rng(2024);
    for (unsigned k : {2u, 4u, 8u, 16u}) {
        for (Order order : {Order::ascending, Order::descending}) {
            for (int trial = 0; trial < 40; ++trial) {
                const std::size_t n = rng() % 300;
                check_against_reference(random_keys<std::uint32_t>(rng, n, 0, 0xFFFFFFFFll), make_config(k, order));
                check_against_reference(random_keys<std::int32_t>(rng, n, INT32_MIN, INT32_MAX), make_config(k, order));
                check_against_reference(random_keys<std::int32_t>(rng, n, -20, 20), make_config(k, order));
            }
        }
    }
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = rng() % 200;
        check_against_reference(random_keys<std::uint16_t>(rng, n, 0, 0xFFFF), make_config(8));
        check_against_reference(random_keys<std::int16_t>(rng, n, INT16_MIN, INT16_MAX), make_config(4));
        check_against_reference(random_keys<std::uint8_t>(rng, n, 0, 255), make_config(4, Order::descending));
        check_against_reference(random_keys<std::int8_t>(rng, n, -128, 127), make_config(2));
        check_against_reference(random_keys<std::uint64_t>(rng, n, INT64_MIN, INT64_MAX), make_config(16));
        check_against_reference(random_keys<std::int64_t>(rng, n, INT64_MIN, INT64_MAX), make_config(8));
    }
}

TEST_CASE("counter identities") {
    std::mt19937_64 rng(77);
    for (unsigned k : {1u, 2u, 4u, 8u, 16u}) {
        const unsigned levels = 32 / k;
        if (levels % 2 != 0) continue;
        for (std::size_t n : {0u, 1u, 2u, 17u, 500u, 4096u}) {
            auto list = from_sequence(random_keys<std::uint32_t>(rng, n, 0, 0xFFFFFFFFll));
            CountingProbe probe;
            sort(list.head(), make_config(k), probe);
            const Counters& c = probe.counters();
            CHECK(c.relink_count == n * levels);
            CHECK(c.merge_visit_count == n);
            CHECK(c.relink_count + c.merge_visit_count == predicted_ops(n, 32, k));
            CHECK(c.comparison_count == 0);
            CHECK(c.recursion_depth_max == (n == 0 ? 0 : levels));
            CHECK(c.live_bucket_arrays_max == (n == 0 ? 0 : levels));
            CHECK(c.live_bucket_arrays_max * (std::uint64_t{1} << k) * 4 <= aux_memory_bound({32, k, 4}));
        }
    }

    // the sign partition moves every node once more
    auto signed_list = from_sequence(random_keys<std::int32_t>(rng, 1000, -50000, 50000));
    CountingProbe probe;
    sort(signed_list.head(), make_config(4), probe);
    CHECK(probe.counters().relink_count == 1000 * 8 + 1000);
    CHECK(probe.counters().merge_visit_count == 1000);
}

TEST_CASE("bucket scan modes agree") {
    std::mt19937_64 rng(8);
    for (unsigned k : {4u, 8u, 16u}) {
        for (Order order : {Order::ascending, Order::descending}) {
            auto keys = random_keys<std::uint32_t>(rng, 700, 0, 0xFFFFFFFFll);
            auto occupied = from_sequence(keys);
            auto full = from_sequence(keys);
            PbitConfig config = make_config(k, order);
            CountingProbe occupied_probe;
            auto* a = sort(occupied.head(), config, occupied_probe);
            config.scan = BucketScan::full;
            CountingProbe full_probe;
            auto* b = sort(full.head(), KeyDescriptor::of<std::uint32_t>(), config, full_probe);
            CHECK(pairs_of(a) == pairs_of(b));
            CHECK(occupied_probe.counters().relink_count == full_probe.counters().relink_count);
            CHECK(occupied_probe.counters().merge_visit_count == full_probe.counters().merge_visit_count);
            CHECK(occupied_probe.counters().bucket_scans < full_probe.counters().bucket_scans);
            CHECK(full_probe.counters().bucket_scans % (1u << k) == 0);
        }
    }
}

TEST_CASE("probe choice does not change the output") {
    std::mt19937_64 rng(9);
    auto keys = random_keys<std::int32_t>(rng, 3000, -1000, 1000);
    auto counted = from_sequence(keys);
    auto silent = from_sequence(keys);
    CountingProbe probe;
    PbitSorter<Node<std::int32_t>> sorter(make_config(8));
    auto* a = sorter.sort(counted.head(), probe);
    auto* b = sorter.sort(silent.head());
    CHECK(pairs_of(a) == pairs_of(b));
}

TEST_CASE("direction duality on distinct keys") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::uint32_t> keys(rng() % 500);
        std::iota(keys.begin(), keys.end(), 0u);
        for (auto& key : keys) key = key * 2654435761u;
        std::shuffle(keys.begin(), keys.end(), rng);
        auto up = from_sequence(keys);
        auto down = from_sequence(keys);
        auto ascending = to_sequence(sort(up.head(), make_config(4)));
        auto descending = to_sequence(sort(down.head(), make_config(4, Order::descending)));
        std::reverse(descending.begin(), descending.end());
        CHECK(ascending == descending);
    }
}

TEST_CASE("stability and degenerate input") {
    std::mt19937_64 rng(12);
    auto keys = random_keys<std::int32_t>(rng, 4096, -8, 7);
    for (unsigned k : {4u, 8u, 16u}) {
        for (Order order : {Order::ascending, Order::descending}) {
            auto list = from_sequence(keys);
            auto sorted = pairs_of(sort(list.head(), make_config(k, order)));
            for (std::size_t i = 1; i < sorted.size(); ++i) {
                if (sorted[i].first == sorted[i - 1].first) CHECK(sorted[i].second > sorted[i - 1].second);
            }
        }
    }

    std::vector<std::uint32_t> same(1000, 0xDEADBEEFu);
    auto list = from_sequence(same);
    CountingProbe probe;
    auto* sorted = sort(list.head(), make_config(4), probe);
    std::vector<std::uint64_t> order(same.size());
    std::iota(order.begin(), order.end(), 0u);
    CHECK(payload_sequence(sorted) == order);
    CHECK(probe.counters().relink_count == 1000 * 8);
}

TEST_CASE("back-linked lists sort with the same code and then get repaired") {
    std::mt19937_64 rng(13);
    auto keys = random_keys<std::uint32_t>(rng, 257, 0, 1000);
    auto list = from_sequence<BackLinkedNode<std::uint32_t>>(std::span<const std::uint32_t>(keys));
    auto* sorted = repair_back_links(sort(list.head(), make_config(4)));
    CHECK(keys_of(pairs_of(sorted)) == keys_of(stable_reference(keys)));
    CHECK(sorted->back == nullptr);
    for (auto* node = sorted; node->next != nullptr; node = node->next) CHECK(node->next->back == node);
}

TEST_CASE("descriptor fits") {
    CHECK(KeyDescriptor{8, false}.fits(255u));
    CHECK_FALSE(KeyDescriptor{8, false}.fits(256u));
    CHECK_FALSE(KeyDescriptor{8, false}.fits(-1));
    CHECK(KeyDescriptor{8, true}.fits(-128));
    CHECK_FALSE(KeyDescriptor{8, true}.fits(128));
    CHECK(KeyDescriptor{64, true}.fits(INT64_MIN));
    CHECK(KeyDescriptor::of<std::int16_t>() == KeyDescriptor{16, true});
    CHECK(KeyDescriptor{16, false}.mask() == 0xFFFF);
}
