#include <doctest.h>

#include <numeric>
#include <random>
#include <vector>

#include "listsort/list_core.hpp"
#include "test_support.hpp"

using namespace listsort;

TEST_CASE("push prepends") {
    List<int> list;
    list.push(5);
    CHECK(to_sequence(list.head()) == std::vector<int>{5});

    List<int> two;
    two.push(3);
    two.push(7);
    CHECK(to_sequence(two.head()) == std::vector<int>{7, 3});

    List<int> three;
    for (int key : {1, 2, 3}) three.push(key);
    CHECK(to_sequence(three.head()) == std::vector<int>{3, 2, 1});
    CHECK(length(three.head()) == 3);
    CHECK(three.allocated() == 3);
}

TEST_CASE("merge splices b behind a") {
    CountingProbe probe;

    auto b = from_sequence(std::vector<int>{3, 1});
    Node<int>* empty = nullptr;
    CHECK(merge(empty, b.head(), probe) == b.head());
    CHECK(probe.counters().merge_visit_count == 0);

    auto a = from_sequence(std::vector<int>{2});
    Node<int>* none = nullptr;
    CHECK(to_sequence(merge(a.head(), none, probe)) == std::vector<int>{2});
    CHECK(probe.counters().merge_visit_count == 1);

    auto left = from_sequence(std::vector<int>{1, 2});
    auto right = from_sequence(std::vector<int>{3, 4});
    Node<int>* right_head = right.head();
    Node<int>* joined = merge(left.head(), right_head, probe);
    CHECK(to_sequence(joined) == std::vector<int>{1, 2, 3, 4});
    CHECK(joined->next->next == right_head);
    // one visit per node of the left list
    CHECK(probe.counters().merge_visit_count == 3);
}

TEST_CASE("merge is associative and preserves payloads") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> keys[3];
        for (auto& k : keys) k = testing::random_keys<int>(rng, rng() % 6, -5, 5);

        auto left_a = from_sequence(keys[0]), left_b = from_sequence(keys[1]), left_c = from_sequence(keys[2]);
        auto right_a = from_sequence(keys[0]), right_b = from_sequence(keys[1]), right_c = from_sequence(keys[2]);
        auto* left = merge(merge(left_a.head(), left_b.head()), left_c.head());
        auto* right = merge(right_a.head(), merge(right_b.head(), right_c.head()));
        CHECK(to_sequence(left) == to_sequence(right));

        std::vector<int> concatenated = keys[0];
        concatenated.insert(concatenated.end(), keys[1].begin(), keys[1].end());
        concatenated.insert(concatenated.end(), keys[2].begin(), keys[2].end());
        CHECK(to_sequence(left) == concatenated);
        CHECK(length(left) == left_a.allocated() + left_b.allocated() + left_c.allocated());
    }
}

TEST_CASE("from_sequence and to_sequence round trip") {
    CHECK(from_sequence(std::vector<int>{}).empty());
    CHECK(to_sequence(from_sequence(std::vector<int>{}).head()).empty());

    auto list = from_sequence(std::vector<int>{21, 3, 209});
    CHECK(list.head()->key == 21);
    CHECK(to_sequence(list.head()) == std::vector<int>{21, 3, 209});
    CHECK(payload_sequence(list.head()) == std::vector<std::uint64_t>{0, 1, 2});

    List<int> single;
    single.push(9);
    CHECK(to_sequence(single.head()) == std::vector<int>{9});

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        auto keys = testing::random_keys<int>(rng, rng() % 40, -100, 100);
        CHECK(to_sequence(from_sequence(keys).head()) == keys);
    }
}

TEST_CASE("validate") {
    Node<int>* empty = nullptr;
    CHECK(validate(empty, 10) == ChainStatus::ok);

    auto list = from_sequence(std::vector<int>{1, 2, 3});
    CHECK(validate(list.head(), 3) == ChainStatus::ok);
    CHECK(validate(list.head(), 2) == ChainStatus::overlong);

    auto cycle = from_sequence(std::vector<int>{1, 2});
    cycle.head()->next->next = cycle.head();
    CHECK(validate(cycle.head(), 10) == ChainStatus::cycle_detected);
    // a cycle is reported even when the bound would trip first
    CHECK(validate(cycle.head(), 1) == ChainStatus::cycle_detected);

    auto lasso = from_sequence(std::vector<int>{1, 2, 3, 4, 5});
    lasso.head()->next->next->next->next->next = lasso.head()->next->next;
    CHECK(validate(lasso.head(), 100) == ChainStatus::cycle_detected);

    auto self = from_sequence(std::vector<int>{1});
    self.head()->next = self.head();
    CHECK(validate(self.head(), 10) == ChainStatus::cycle_detected);

    CHECK(to_string(ChainStatus::overlong) == "overlong");
}

TEST_CASE("repair_back_links") {
    BackLinkedNode<int>* empty = nullptr;
    CHECK(repair_back_links(empty) == nullptr);

    std::vector<int> one{4};
    auto single = from_sequence<BackLinkedNode<int>>(std::span<const int>(one));
    single.head()->back = single.head();
    repair_back_links(single.head());
    CHECK(single.head()->back == nullptr);

    std::vector<int> keys{1, 2, 3};
    auto list = from_sequence<BackLinkedNode<int>>(std::span<const int>(keys));
    auto* a = list.head();
    auto* b = a->next;
    auto* c = b->next;
    repair_back_links(a);
    CHECK(c->back == b);
    CHECK(b->back == a);
    CHECK(a->back == nullptr);
    CHECK(to_sequence(a) == keys);
}
