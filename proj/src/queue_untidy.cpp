#include "fmm/queue_untidy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace fmm {

UntidyQueue::UntidyQueue(double h, double f_min, int buckets)
    : n_b_(buckets), delta_(0.0) {
    if (buckets < 1) {
        throw std::invalid_argument("untidy queue needs n_B >= 1 (delta is undefined otherwise)");
    }
    if (!(h > 0.0) || !(f_min > 0.0) || !std::isfinite(h) || !std::isfinite(f_min)) {
        throw std::invalid_argument("untidy queue needs finite h > 0 and f_min > 0");
    }
    delta_ = h / (f_min * static_cast<double>(buckets));
    head_.assign(static_cast<std::size_t>(buckets) + 1, kNil);
    tail_.assign(static_cast<std::size_t>(buckets) + 1, kNil);
}

std::uint64_t UntidyQueue::level_of(double key) const {
    if (!std::isfinite(key) || key < 0.0) {
        throw std::invalid_argument("queue keys must be finite and non-negative");
    }
    return static_cast<std::uint64_t>(std::floor(key / delta_));
}

int UntidyQueue::bucket_index(double key) const {
    return static_cast<int>(level_of(key) % static_cast<std::uint64_t>(n_b_ + 1));
}

std::uint64_t UntidyQueue::window_level(double key) const {
    const std::uint64_t level = level_of(key);
    const std::uint64_t top = level_ + static_cast<std::uint64_t>(n_b_);
    if (level >= level_ && level <= top) {
        return level;
    }
    // A key that sits on a level boundary up to rounding of its own
    // computation is assigned to the adjacent in-window level.
    const double ratio = key / delta_;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::max(ratio, 1.0);
    if (level == top + 1 && ratio - static_cast<double>(level) <= slack) {
        return top;
    }
    if (level + 1 == level_ && static_cast<double>(level_) - ratio <= slack) {
        return level_;
    }
    std::ostringstream os;
    os << "key " << key << " (level " << level << ") outside bucket window [" << level_ << ", "
       << top << "]";
    throw BucketWindowError(os.str());
}

void UntidyQueue::append(std::size_t bucket, const QueueEntry& e) {
    std::uint32_t idx;
    if (free_ != kNil) {
        idx = free_;
        free_ = pool_[idx].next;
        pool_[idx] = {e, kNil};
    } else {
        if (pool_.size() >= kNil) {
            throw std::length_error("untidy queue node pool exhausted");
        }
        idx = static_cast<std::uint32_t>(pool_.size());
        pool_.push_back({e, kNil});
    }
    if (tail_[bucket] == kNil) {
        head_[bucket] = idx;
    } else {
        pool_[tail_[bucket]].next = idx;
    }
    tail_[bucket] = idx;
    ++live_;
}

void UntidyQueue::insert(GridIndex point, double key) {
    const std::uint64_t level = window_level(key);
    append(static_cast<std::size_t>(level % static_cast<std::uint64_t>(n_b_ + 1)), {point, key});
    ++stats_.insertions;
}

std::optional<QueueEntry> UntidyQueue::pop_min() {
    if (live_ == 0) {
        return std::nullopt;
    }
    const auto wrap = static_cast<std::uint64_t>(n_b_ + 1);
    while (head_[s_] == kNil) {
        s_ = (s_ + 1) % wrap;
        ++level_;
        ++stats_.bucket_traversals;
    }
    const std::uint32_t idx = head_[s_];
    head_[s_] = pool_[idx].next;
    if (head_[s_] == kNil) {
        tail_[s_] = kNil;
    }
    const QueueEntry out = pool_[idx].entry;
    pool_[idx].next = free_;
    free_ = idx;
    --live_;
    ++stats_.pops;
    return out;
}

bool UntidyQueue::reinsert_if_moved(GridIndex point, double old_key, double new_key) {
    if (new_key > old_key) {
        throw std::invalid_argument("reinsert_if_moved: trial values may only decrease");
    }
    if (bucket_index(new_key) == bucket_index(old_key)) {
        return false;
    }
    insert(point, new_key);
    ++stats_.reinsertions;
    return true;
}

}  // namespace fmm
