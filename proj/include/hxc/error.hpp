#pragma once

#include <stdexcept>
#include <string>

namespace hxc {

// Every failure carries a stable kind tag (SyntaxError, NotInvolutive, ...)
// so reports and tests can match on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, long pos = -1)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)), pos_(pos) {}

    const std::string& kind() const { return kind_; }
    long position() const { return pos_; }

private:
    std::string kind_;
    long pos_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg, long pos = -1) {
    throw Error(kind, msg, pos);
}

}  // namespace hxc
