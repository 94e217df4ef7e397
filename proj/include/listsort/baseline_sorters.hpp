#pragma once

// Comparison-based list sorters used as baselines, plus a trusted oracle.
//
// quickersort: one pivot (the head), three-way split into less / equal /
//     greater; tails are threaded back through an out-parameter so no
//     concatenation walk is needed.
// mergesort: recursive halving with an iterative merge.
// psort: two pivots (the first two nodes), three-way split into below the
//     low pivot, between the pivots, above the high pivot; fragments are
//     chained through an end marker.
// psort2: psort that also siphons keys equal to either pivot into chains
//     that never recurse.
//
// All four produce ascending order. Depth counts nested calls that reach a
// partition step (two or more nodes). quickersort, psort and psort2 switch to
// an explicit work stack for lists longer than kMaxRecursiveLength; both
// routes yield the same chain and the same counters.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <tuple>
#include <vector>

#include "listsort/list_core.hpp"
#include "listsort/metrics.hpp"
#include "listsort/pbit.hpp"

namespace listsort {

// Longer lists run on an explicit task stack. Sorted input drives the
// recursive forms about n frames deep, and 20000 frames fit an 8 MB stack
// even in unoptimized builds.
inline constexpr std::size_t kMaxRecursiveLength = 20000;

enum class Recursion { automatic, recursive, explicit_stack };

namespace detail {

template <class N>
struct SortTask {
    N* head = nullptr;
    N* tail = nullptr;        // set for sorted chains that are only prepended
    std::uint32_t depth = 0;
};

// Drives an end-marker sorter without recursion. `partition(list, depth,
// push)` splits a list of two or more nodes and pushes its pieces in output
// order through push_unsorted(list, depth) / push_chain(head, tail). The
// stack pops the last piece first and prepends it to the running result.
template <class N, class Partition>
N* run_task_stack(N* list, N* marker, Partition&& partition) {
    std::vector<SortTask<N>> stack;
    stack.push_back({list, nullptr, 1});
    N* result = marker;
    while (!stack.empty()) {
        const SortTask<N> task = stack.back();
        stack.pop_back();
        if (task.tail != nullptr) {
            task.tail->next = result;
            result = task.head;
            continue;
        }
        if (task.head == nullptr) continue;
        if (task.head->next == nullptr) {
            task.head->next = result;
            result = task.head;
            continue;
        }
        partition(task.head, task.depth,
                  [&](N* head, std::uint32_t depth) { stack.push_back({head, nullptr, depth}); },
                  [&](N* head, N* tail) { stack.push_back({head, tail, 0}); });
    }
    return result;
}

template <class N>
bool use_recursion(const N* list, Recursion mode) noexcept {
    if (mode != Recursion::automatic) return mode == Recursion::recursive;
    std::size_t count = 0;
    for (; list != nullptr; list = list->next) {
        if (++count > kMaxRecursiveLength) return false;
    }
    return true;
}

// ---- quickersort ---------------------------------------------------------

template <class N, class Probe>
std::tuple<N*, N*, N*, N*> quickersort_partition(N* list, Probe& probe) noexcept {
    N* equal = list;
    N* pivot = list;  // stays the tail of the equal chain
    N* less = nullptr;
    N* greater = nullptr;
    list = list->next;
    equal->next = nullptr;
    while (list != nullptr) {
        N* node = list;
        list = list->next;
        probe.compare();
        if (pivot->key < node->key) {
            node->next = greater;
            greater = node;
            continue;
        }
        probe.compare();
        if (pivot->key == node->key) {
            node->next = equal;
            equal = node;
        } else {
            node->next = less;
            less = node;
        }
    }
    return {less, equal, pivot, greater};
}

template <class N, class Probe>
N* quickersort_recursive(N* list, N** tail, Probe& probe) {
    if (list == nullptr) return nullptr;
    if (list->next == nullptr) {
        if (tail != nullptr) *tail = list;
        return list;
    }
    probe.enter_level();
    auto [less, equal, pivot, greater] = quickersort_partition(list, probe);

    N* less_tail = nullptr;
    N* head = equal;
    if (less != nullptr) {
        head = quickersort_recursive(less, &less_tail, probe);
        less_tail->next = equal;
    }
    if (greater != nullptr) {
        N* greater_tail = nullptr;
        pivot->next = quickersort_recursive(greater, &greater_tail, probe);
        if (tail != nullptr) *tail = greater_tail;
    } else if (tail != nullptr) {
        *tail = pivot;
    }
    probe.leave_level();
    return head;
}

// ---- psort / psort2 ------------------------------------------------------

// Orders the first two nodes and returns (low, high, rest).
template <class N, class Probe>
std::tuple<N*, N*, N*> take_pivots(N* list, Probe& probe) noexcept {
    N* first = list;
    N* second = list->next;
    N* rest = second->next;
    probe.compare();
    if (first->key > second->key) std::swap(first, second);
    first->next = nullptr;
    second->next = nullptr;
    return {first, second, rest};
}

template <class N, class Probe>
std::tuple<N*, N*, N*, N*, N*> psort_partition(N* list, Probe& probe) noexcept {
    auto [low, high, rest] = take_pivots(list, probe);
    N* less = nullptr;
    N* middle = nullptr;
    N* greater = nullptr;
    while (rest != nullptr) {
        N* node = rest;
        rest = rest->next;
        probe.compare();
        if (node->key < low->key) {
            node->next = less;
            less = node;
            continue;
        }
        probe.compare();
        if (node->key > high->key) {
            node->next = greater;
            greater = node;
        } else {
            node->next = middle;
            middle = node;
        }
    }
    return {less, low, middle, high, greater};
}

template <class N, class Probe>
N* psort_recursive(N* list, N* marker, Probe& probe) {
    if (list == nullptr) return marker;
    if (list->next == nullptr) {
        list->next = marker;
        return list;
    }
    probe.enter_level();
    auto [less, low, middle, high, greater] = psort_partition(list, probe);
    high->next = psort_recursive(greater, marker, probe);
    low->next = psort_recursive(middle, high, probe);
    N* head = psort_recursive(less, low, probe);
    probe.leave_level();
    return head;
}

// (less, low-equal chain head, low, middle, high-equal chain head, high, greater)
template <class N, class Probe>
std::tuple<N*, N*, N*, N*, N*, N*, N*> psort2_partition(N* list, Probe& probe) noexcept {
    auto [low, high, rest] = take_pivots(list, probe);
    N* less = nullptr;
    N* middle = nullptr;
    N* greater = nullptr;
    N* low_equal = low;
    N* high_equal = high;
    while (rest != nullptr) {
        N* node = rest;
        rest = rest->next;
        probe.compare();
        if (node->key < low->key) {
            node->next = less;
            less = node;
            continue;
        }
        probe.compare();
        if (node->key > high->key) {
            node->next = greater;
            greater = node;
            continue;
        }
        probe.compare();
        if (node->key == low->key) {
            node->next = low_equal;
            low_equal = node;
            continue;
        }
        probe.compare();
        if (node->key == high->key) {
            node->next = high_equal;
            high_equal = node;
        } else {
            node->next = middle;
            middle = node;
        }
    }
    return {less, low_equal, low, middle, high_equal, high, greater};
}

template <class N, class Probe>
N* psort2_recursive(N* list, N* marker, Probe& probe) {
    if (list == nullptr) return marker;
    if (list->next == nullptr) {
        list->next = marker;
        return list;
    }
    probe.enter_level();
    auto [less, low_equal, low, middle, high_equal, high, greater] = psort2_partition(list, probe);
    high->next = psort2_recursive(greater, marker, probe);
    low->next = psort2_recursive(middle, high_equal, probe);
    N* head = psort2_recursive(less, low_equal, probe);
    probe.leave_level();
    return head;
}

// ---- mergesort -----------------------------------------------------------

// Cuts the chain after its first ceil(n/2) nodes and returns the second half.
template <class N>
N* split_halves(N* list) noexcept {
    N* slow = list;
    N* fast = list->next;
    while (fast != nullptr && fast->next != nullptr) {
        slow = slow->next;
        fast = fast->next->next;
    }
    N* second = slow->next;
    slow->next = nullptr;
    return second;
}

// Iterative two-way merge; ties take from `first`, which keeps the sort stable.
template <class N, class Probe>
N* merge_sorted(N* first, N* second, Probe& probe) noexcept {
    if (first == nullptr) return second;
    if (second == nullptr) return first;
    N* head = nullptr;
    N** tail = &head;
    while (first != nullptr && second != nullptr) {
        probe.compare();
        N*& source = first->key <= second->key ? first : second;
        *tail = source;
        tail = &source->next;
        source = source->next;
    }
    *tail = first != nullptr ? first : second;
    return head;
}

template <class N, class Probe>
N* mergesort_recursive(N* list, Probe& probe) {
    if (list == nullptr || list->next == nullptr) return list;
    probe.enter_level();
    N* second = split_halves(list);
    N* first_sorted = mergesort_recursive(list, probe);
    N* second_sorted = mergesort_recursive(second, probe);
    N* merged = merge_sorted(first_sorted, second_sorted, probe);
    probe.leave_level();
    return merged;
}

} // namespace detail

template <ListNode N, class Probe>
N* quickersort(N* list, Probe& probe, Recursion mode = Recursion::automatic) {
    if (detail::use_recursion(list, mode)) return detail::quickersort_recursive(list, static_cast<N**>(nullptr), probe);
    return detail::run_task_stack(list, static_cast<N*>(nullptr),
                                  [&](N* chain, std::uint32_t depth, auto push_unsorted, auto push_chain) {
                                      probe.note_depth(depth);
                                      auto [less, equal, pivot, greater] =
                                          detail::quickersort_partition(chain, probe);
                                      push_unsorted(less, depth + 1);
                                      push_chain(equal, pivot);
                                      push_unsorted(greater, depth + 1);
                                  });
}

template <ListNode N>
N* quickersort(N* list) {
    NullProbe probe;
    return quickersort(list, probe);
}

template <ListNode N, class Probe>
N* mergesort(N* list, Probe& probe) {
    return detail::mergesort_recursive(list, probe);
}

template <ListNode N>
N* mergesort(N* list) {
    NullProbe probe;
    return mergesort(list, probe);
}

// sorted(list) ++ marker. The marker must hold keys no smaller than the list's.
template <ListNode N, class Probe>
N* psort(N* list, N* marker, Probe& probe, Recursion mode = Recursion::automatic) {
    if (detail::use_recursion(list, mode)) return detail::psort_recursive(list, marker, probe);
    return detail::run_task_stack(list, marker,
                                  [&](N* chain, std::uint32_t depth, auto push_unsorted, auto push_chain) {
                                      probe.note_depth(depth);
                                      auto [less, low, middle, high, greater] =
                                          detail::psort_partition(chain, probe);
                                      push_unsorted(less, depth + 1);
                                      push_chain(low, low);
                                      push_unsorted(middle, depth + 1);
                                      push_chain(high, high);
                                      push_unsorted(greater, depth + 1);
                                  });
}

template <ListNode N>
N* psort(N* list, N* marker = nullptr) {
    NullProbe probe;
    return psort(list, marker, probe);
}

template <ListNode N, class Probe>
N* psort2(N* list, N* marker, Probe& probe, Recursion mode = Recursion::automatic) {
    if (detail::use_recursion(list, mode)) return detail::psort2_recursive(list, marker, probe);
    return detail::run_task_stack(list, marker,
                                  [&](N* chain, std::uint32_t depth, auto push_unsorted, auto push_chain) {
                                      probe.note_depth(depth);
                                      auto [less, low_equal, low, middle, high_equal, high, greater] =
                                          detail::psort2_partition(chain, probe);
                                      push_unsorted(less, depth + 1);
                                      push_chain(low_equal, low);
                                      push_unsorted(middle, depth + 1);
                                      push_chain(high_equal, high);
                                      push_unsorted(greater, depth + 1);
                                  });
}

template <ListNode N>
N* psort2(N* list, N* marker = nullptr) {
    NullProbe probe;
    return psort2(list, marker, probe);
}

// Ground truth: copies (key, payload) pairs out, stable-sorts them with the
// standard library and builds a fresh list. The input chain is not modified.
template <ListNode N>
LinkedList<N> oracle_sort(const N* list, Order order = Order::ascending) {
    std::vector<std::pair<typename N::key_type, std::uint64_t>> items;
    for (; list != nullptr; list = list->next) items.emplace_back(list->key, list->payload);
    if (order == Order::ascending) {
        std::stable_sort(items.begin(), items.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
    } else {
        std::stable_sort(items.begin(), items.end(),
                         [](const auto& a, const auto& b) { return b.first < a.first; });
    }
    LinkedList<N> sorted;
    for (auto it = items.rbegin(); it != items.rend(); ++it) sorted.push(it->first, it->second);
    return sorted;
}

} // namespace listsort
