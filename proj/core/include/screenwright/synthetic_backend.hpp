#pragma once

// Offline backends. ScriptedBackend serves canned replies and keeps a
// transcript; SyntheticBackend answers every pipeline prompt with small,
// well-formed, deterministic output derived from the prompt itself.

#include "screenwright/gateway.hpp"

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

namespace screenwright {

class ScriptedBackend : public Backend {
public:
    using Responder = std::function<std::string(const ChatRequest&, std::size_t call_index)>;

    // Replies served in order; TransportError once they run out.
    explicit ScriptedBackend(std::vector<std::string> replies);
    explicit ScriptedBackend(Responder responder);

    std::string complete(const ChatRequest& request) override;

    std::vector<ChatRequest> requests() const;
    std::size_t call_count() const;

private:
    Responder responder_;
    mutable std::mutex mutex_;
    std::vector<ChatRequest> requests_;
};

class SyntheticBackend : public Backend {
public:
    explicit SyntheticBackend(std::uint64_t seed = 0) : seed_(seed) {}
    std::string complete(const ChatRequest& request) override;

private:
    std::uint64_t seed_;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text, std::uint64_t basis = 1469598103934665603ULL);

} // namespace screenwright
