#pragma once

#include <stdexcept>
#include <string>

namespace swarm {

// Configuration / input-file problems. The CLI maps these to exit code 1;
// anything else escaping to main is a runtime error (exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace swarm
