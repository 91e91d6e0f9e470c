#pragma once

// Rolling memories backing the two parties' information systems: the
// principal stores environment estimates, the agent stores observations.
// Depth m bounds how far back the expectation looks; m = unbounded keeps
// everything. Full entries are retained (not just a running mean) because
// the strategy rule also needs the window's dispersion.

#include <cstddef>
#include <deque>
#include <numeric>

namespace hasim {

class RollingMemory {
public:
    // capacity 0 means unbounded.
    explicit RollingMemory(std::size_t capacity = 0) : capacity_(capacity) {}

    void record(double value) {
        entries_.push_back(value);
        ++total_recorded_;
        if (capacity_ > 0 && entries_.size() > capacity_) entries_.pop_front();
    }

    // Arithmetic mean of the retained entries; 0 when empty (the symmetric
    // prior equal to the experiments' true environment mean).
    double expectation() const {
        if (entries_.empty()) return 0.0;
        double sum = std::accumulate(entries_.begin(), entries_.end(), 0.0);
        return sum / static_cast<double>(entries_.size());
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    double back() const { return entries_.back(); }
    const std::deque<double>& values() const { return entries_; }
    std::size_t capacity() const { return capacity_; }
    // Observations ever recorded, including ones the window has evicted.
    std::size_t total_recorded() const { return total_recorded_; }

private:
    std::size_t capacity_;
    std::size_t total_recorded_ = 0;
    std::deque<double> entries_;
};

// theta estimate from a realized outcome: x - desired_effort * rho. Exact
// whenever the agent's exerted effort equals the contracted one.
inline double estimate_theta(double x, double desired_effort, double rho) {
    return x - desired_effort * rho;
}

}  // namespace hasim
