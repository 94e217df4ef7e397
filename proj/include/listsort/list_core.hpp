#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "listsort/metrics.hpp"

namespace listsort {

// Singly-linked cell. The payload is an opaque tag carried verbatim so that
// the relative order of equal keys can be observed after a sort.
template <class Key>
struct Node {
    using key_type = Key;

    Node* next = nullptr;
    Key key{};
    std::uint64_t payload = 0;
};

// Same cell with a predecessor link. Sorters only maintain `next`; call
// repair_back_links() afterwards.
template <class Key>
struct BackLinkedNode {
    using key_type = Key;

    BackLinkedNode* next = nullptr;
    Key key{};
    std::uint64_t payload = 0;
    BackLinkedNode* back = nullptr;
};

template <class N>
concept ListNode = requires(N node) {
    typename N::key_type;
    { node.next } -> std::convertible_to<N*>;
    { node.key } -> std::convertible_to<typename N::key_type>;
    { node.payload } -> std::convertible_to<std::uint64_t>;
};

// Owns the storage of its nodes and the entry link. Algorithms work on raw
// chains (N*) and hand back a new head, which is stored with set_head().
template <ListNode N>
class LinkedList {
public:
    using node_type = N;
    using key_type = typename N::key_type;

    LinkedList() = default;
    LinkedList(LinkedList&&) noexcept = default;
    LinkedList& operator=(LinkedList&&) noexcept = default;
    LinkedList(const LinkedList&) = delete;
    LinkedList& operator=(const LinkedList&) = delete;

    // New node becomes the head. Allocation failure propagates as std::bad_alloc.
    N* push(key_type key, std::uint64_t payload = 0) {
        N& node = pool_.emplace_back();
        node.key = key;
        node.payload = payload;
        node.next = head_;
        head_ = &node;
        return head_;
    }

    N* head() const noexcept { return head_; }
    void set_head(N* head) noexcept { head_ = head; }
    bool empty() const noexcept { return head_ == nullptr; }

    // Nodes allocated by this list, whether or not they are still linked.
    std::size_t allocated() const noexcept { return pool_.size(); }

private:
    std::deque<N> pool_;
    N* head_ = nullptr;
};

template <class Key>
using List = LinkedList<Node<Key>>;

// Keys become nodes in sequence order; payload = position in the sequence.
template <ListNode N>
LinkedList<N> from_sequence(std::span<const typename N::key_type> keys) {
    LinkedList<N> list;
    for (std::size_t i = keys.size(); i-- > 0;) list.push(keys[i], i);
    return list;
}

template <class Key>
List<Key> from_sequence(const std::vector<Key>& keys) {
    return from_sequence<Node<Key>>(std::span<const Key>(keys));
}

template <ListNode N>
std::vector<typename N::key_type> to_sequence(const N* head) {
    std::vector<typename N::key_type> keys;
    for (; head != nullptr; head = head->next) keys.push_back(head->key);
    return keys;
}

template <ListNode N>
std::vector<std::uint64_t> payload_sequence(const N* head) {
    std::vector<std::uint64_t> payloads;
    for (; head != nullptr; head = head->next) payloads.push_back(head->payload);
    return payloads;
}

template <ListNode N>
std::size_t length(const N* head) noexcept {
    std::size_t count = 0;
    for (; head != nullptr; head = head->next) ++count;
    return count;
}

// End-splice concatenation: walks `a` to its terminal node and links `b`
// behind it. Deliberately no shortcut for an empty `b`. Each node of `a` is
// reported once to the probe, so a full sort reports exactly n visits.
template <ListNode N, class Probe = NullProbe>
N* merge(N* a, N* b, Probe& probe) {
    if (a == nullptr) return b;
    probe.merge_visit();
    N* tail = a;
    while (tail->next != nullptr) {
        tail = tail->next;
        probe.merge_visit();
    }
    tail->next = b;
    return a;
}

template <ListNode N>
N* merge(N* a, N* b) {
    NullProbe probe;
    return merge(a, b, probe);
}

enum class ChainStatus { ok, cycle_detected, overlong };

std::string_view to_string(ChainStatus status) noexcept;

// Cycle check first (two-speed walk), then the length bound.
template <ListNode N>
ChainStatus validate(const N* head, std::size_t max_nodes) noexcept {
    const N* slow = head;
    const N* fast = head;
    while (fast != nullptr && fast->next != nullptr) {
        slow = slow->next;
        fast = fast->next->next;
        if (slow == fast) return ChainStatus::cycle_detected;
    }
    std::size_t count = 0;
    for (const N* node = head; node != nullptr; node = node->next) {
        if (++count > max_nodes) return ChainStatus::overlong;
    }
    return ChainStatus::ok;
}

template <class Key>
BackLinkedNode<Key>* repair_back_links(BackLinkedNode<Key>* head) noexcept {
    BackLinkedNode<Key>* previous = nullptr;
    for (BackLinkedNode<Key>* node = head; node != nullptr; node = node->next) {
        node->back = previous;
        previous = node;
    }
    return head;
}

} // namespace listsort
