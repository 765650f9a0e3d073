#include "screenwright/rate_limiter.hpp"
#include "screenwright/error.hpp"

#include <gtest/gtest.h>

using namespace screenwright;
using namespace std::chrono_literals;

TEST(RateLimiter, BlocksUntilWindowSlides) {
    auto clock = std::make_shared<VirtualClock>();
    RateLimiter limiter(3, 60s, clock);
    const auto t0 = clock->now();
    limiter.acquire();
    clock->advance(10s);
    limiter.acquire();
    limiter.acquire();
    EXPECT_EQ(clock->now() - t0, 10s);
    limiter.acquire();  // waits for the first start to leave the window
    EXPECT_EQ(clock->now() - t0, 60s);
    limiter.acquire();
    EXPECT_EQ(clock->now() - t0, 70s);
}

TEST(RateLimiter, RejectsZeroLimit) {
    EXPECT_THROW(RateLimiter(0), Error);
}
