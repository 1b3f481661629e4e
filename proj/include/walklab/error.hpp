#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace walklab {

// Runtime failure with a stable machine-readable code such as
// "disconnected", "singular_system" or "horizon_exceeded".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace walklab
