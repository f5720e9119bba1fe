#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fmm/queue.hpp"

namespace fmm {

/// Thrown when a key falls outside the window of n_B + 1 quantization
/// levels starting at the current bucket. Under the narrow-band width bound
/// this cannot happen; silently wrapping would hand back an out-of-order key.
class BucketWindowError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Untidy priority queue: a circular array of n_B + 1 FIFO buckets.
///
/// A key goes into bucket floor(key / delta) mod (n_B + 1) with
/// delta = h / (f_min * n_B). Keys sharing a bucket are not ordered among
/// themselves, so pop_min returns a key within delta of the true minimum.
/// Buckets are singly-linked lists threaded through one node pool.
class UntidyQueue {
public:
    UntidyQueue(double h, double f_min, int buckets);

    int buckets() const noexcept { return n_b_; }
    int bucket_count() const noexcept { return n_b_ + 1; }
    double delta() const noexcept { return delta_; }
    int current_bucket() const noexcept { return static_cast<int>(s_); }
    std::uint64_t current_level() const noexcept { return level_; }
    std::size_t size() const noexcept { return live_; }
    bool empty() const noexcept { return live_ == 0; }
    const QueueStats& stats() const noexcept { return stats_; }

    /// floor(key / delta) mod (n_B + 1).
    int bucket_index(double key) const;

    /// Appends at the FIFO tail of the key's bucket.
    void insert(GridIndex point, double key);

    /// Head of the current bucket, scanning forward cyclically past empty
    /// buckets. Returns nullopt immediately once nothing is stored.
    std::optional<QueueEntry> pop_min();

    /// Inserts another copy only if the lowered key maps to a different
    /// bucket; the old copy stays behind and is skipped later by the caller.
    bool reinsert_if_moved(GridIndex point, double old_key, double new_key);
    bool decrease_key(GridIndex point, double old_key, double new_key) {
        return reinsert_if_moved(point, old_key, new_key);
    }

private:
    static constexpr std::uint32_t kNil = 0xffffffffu;

    struct Node {
        QueueEntry entry;
        std::uint32_t next;
    };

    std::uint64_t level_of(double key) const;
    std::uint64_t window_level(double key) const;
    void append(std::size_t bucket, const QueueEntry& e);

    int n_b_;
    double delta_;
    std::uint64_t s_ = 0;
    std::uint64_t level_ = 0;  // absolute quantization level of bucket s_
    std::size_t live_ = 0;
    std::vector<std::uint32_t> head_;
    std::vector<std::uint32_t> tail_;
    std::vector<Node> pool_;
    std::uint32_t free_ = kNil;
    QueueStats stats_;
};

}  // namespace fmm
