#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>

namespace screenwright {

class Clock {
public:
    using duration = std::chrono::steady_clock::duration;
    using time_point = std::chrono::steady_clock::time_point;

    virtual ~Clock() = default;
    virtual time_point now() = 0;
    virtual void sleep_until(time_point deadline) = 0;
    void sleep_for(duration d) { sleep_until(now() + d); }
};

class SteadyClock : public Clock {
public:
    time_point now() override { return std::chrono::steady_clock::now(); }
    void sleep_until(time_point deadline) override;
};

// Time only moves when someone sleeps or calls advance().
class VirtualClock : public Clock {
public:
    time_point now() override;
    void sleep_until(time_point deadline) override;
    void advance(duration d);

private:
    std::mutex mutex_;
    time_point now_{};
};

// At most `limit` acquisitions start within any sliding `window`.
class RateLimiter {
public:
    explicit RateLimiter(std::size_t limit,
                         std::chrono::steady_clock::duration window = std::chrono::seconds(60),
                         std::shared_ptr<Clock> clock = std::make_shared<SteadyClock>());

    // Blocks until a slot is free, then records the start time.
    void acquire();
    std::size_t limit() const noexcept { return limit_; }
    const std::shared_ptr<Clock>& clock() const noexcept { return clock_; }

private:
    std::size_t limit_;
    std::chrono::steady_clock::duration window_;
    std::shared_ptr<Clock> clock_;
    std::mutex mutex_;
    std::deque<Clock::time_point> starts_;
};

} // namespace screenwright
