#include "fmm/queue_exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fmm {

namespace {

// Heap comparator: "a sorts after b". Counts invocations for the scaling study.
struct Later {
    std::uint64_t* counter;

    template <typename Node>
    bool operator()(const Node& a, const Node& b) const noexcept {
        ++*counter;
        if (a.key != b.key) {
            return a.key > b.key;
        }
        return a.rank > b.rank;
    }
};

}  // namespace

std::uint64_t ExactQueue::rank_of(GridIndex p) const noexcept {
    const auto i = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.i));
    const auto j = static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.j));
    const std::uint64_t lex = (i << 32) | j;
    return tie_break_ == TieBreak::Lexicographic ? lex : ~lex;
}

void ExactQueue::push(GridIndex point, double key) {
    if (!std::isfinite(key) || key < 0.0) {
        throw std::invalid_argument("queue keys must be finite and non-negative");
    }
    heap_.push_back({key, rank_of(point), point});
    std::push_heap(heap_.begin(), heap_.end(), Later{&stats_.comparisons});
}

void ExactQueue::insert(GridIndex point, double key) {
    push(point, key);
    ++stats_.insertions;
}

bool ExactQueue::decrease_key(GridIndex point, double old_key, double new_key) {
    if (new_key > old_key) {
        throw std::invalid_argument("decrease_key called with a larger key");
    }
    if (new_key == old_key) {
        return false;
    }
    push(point, new_key);
    ++stats_.insertions;
    ++stats_.reinsertions;
    return true;
}

std::optional<QueueEntry> ExactQueue::pop_min() {
    if (heap_.empty()) {
        return std::nullopt;
    }
    std::pop_heap(heap_.begin(), heap_.end(), Later{&stats_.comparisons});
    const Node top = heap_.back();
    heap_.pop_back();
    ++stats_.pops;
    return QueueEntry{top.point, top.key};
}

}  // namespace fmm
