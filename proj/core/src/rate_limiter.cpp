#include "screenwright/rate_limiter.hpp"
#include "screenwright/error.hpp"

#include <thread>

namespace screenwright {

void SteadyClock::sleep_until(time_point deadline) {
    std::this_thread::sleep_until(deadline);
}

Clock::time_point VirtualClock::now() {
    std::lock_guard lock(mutex_);
    return now_;
}

void VirtualClock::sleep_until(time_point deadline) {
    std::lock_guard lock(mutex_);
    if (deadline > now_) {
        now_ = deadline;
    }
}

void VirtualClock::advance(duration d) {
    std::lock_guard lock(mutex_);
    now_ += d;
}

RateLimiter::RateLimiter(std::size_t limit, std::chrono::steady_clock::duration window,
                         std::shared_ptr<Clock> clock)
    : limit_(limit), window_(window), clock_(std::move(clock)) {
    if (limit_ == 0) {
        throw Error(ErrorCode::ConfigError, "rate limit must be positive");
    }
    if (!clock_) {
        throw Error(ErrorCode::ConfigError, "rate limiter needs a clock");
    }
}

void RateLimiter::acquire() {
    // lock stays held across the sleep
    std::lock_guard lock(mutex_);
    for (;;) {
        const auto now = clock_->now();
        while (!starts_.empty() && starts_.front() + window_ <= now) {
            starts_.pop_front();
        }
        if (starts_.size() < limit_) {
            starts_.push_back(now);
            return;
        }
        clock_->sleep_until(starts_.front() + window_);
    }
}

} // namespace screenwright
