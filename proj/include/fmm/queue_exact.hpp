#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fmm/queue.hpp"

namespace fmm {

/// Order among equal keys.
enum class TieBreak { Lexicographic, ReverseLexicographic };

/// Binary min-heap on (key, tie rank). Duplicates are allowed; a lowered key
/// is handled by pushing a new copy.
class ExactQueue {
public:
    explicit ExactQueue(TieBreak tie_break = TieBreak::Lexicographic) : tie_break_(tie_break) {}

    void insert(GridIndex point, double key);
    std::optional<QueueEntry> pop_min();

    /// Pushes a fresh copy whenever the key strictly decreases.
    bool decrease_key(GridIndex point, double old_key, double new_key);

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    const QueueStats& stats() const noexcept { return stats_; }

private:
    struct Node {
        double key;
        std::uint64_t rank;
        GridIndex point;
    };

    std::uint64_t rank_of(GridIndex p) const noexcept;
    void push(GridIndex point, double key);

    TieBreak tie_break_;
    std::vector<Node> heap_;
    QueueStats stats_;
};

}  // namespace fmm
