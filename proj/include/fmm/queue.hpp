#pragma once

#include <concepts>
#include <cstdint>
#include <optional>

#include "fmm/grid.hpp"

namespace fmm {

struct QueueEntry {
    GridIndex point;
    double key;

    bool operator==(const QueueEntry&) const = default;
};

/// Counters maintained by every queue.
struct QueueStats {
    std::uint64_t insertions = 0;
    std::uint64_t reinsertions = 0;
    std::uint64_t pops = 0;
    std::uint64_t bucket_traversals = 0;
    std::uint64_t comparisons = 0;
};

/// What the marcher needs from a priority queue. Decrease-key is expressed
/// as a lazy reinsertion: the queue decides whether a lowered key needs a
/// fresh copy, and stale copies are skipped by the caller on pop.
template <typename Q>
concept MarchQueue = requires(Q q, const Q cq, GridIndex p, double key) {
    { q.insert(p, key) } -> std::same_as<void>;
    { q.pop_min() } -> std::same_as<std::optional<QueueEntry>>;
    { q.decrease_key(p, key, key) } -> std::same_as<bool>;
    { cq.empty() } -> std::same_as<bool>;
    { cq.stats() } -> std::convertible_to<QueueStats>;
};

}  // namespace fmm
