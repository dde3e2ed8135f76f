#pragma once

#include <stdexcept>
#include <string>

namespace dhdae {

enum class ErrorCode {
    shape,
    usage,
    not_dissipative,
    not_coercive,
    not_invertible,
    singular,
    not_reducible,
    unsupported,
    numeric,
    io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace dhdae
