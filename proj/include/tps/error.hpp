#pragma once

#include <stdexcept>
#include <string>

namespace tps {

// Domain error tagged with the pipeline stage that raised it.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace tps
