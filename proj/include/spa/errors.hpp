#pragma once

#include <stdexcept>
#include <string>

namespace spa {

// Error categories map one-to-one onto CLI exit codes (see README).
enum class ErrorKind {
    internal,      // exit 1
    config,        // exit 2
    precondition,  // exit 3: bad inputs, parse failures, violated preconditions
    auth,          // exit 4: persistent 401/403 from an endpoint
    protocol,      // exit 5: diversity-protocol violations (article shortfall etc.)
    integrity,     // exit 6: fingerprint mismatch on resume
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    int exit_code() const {
        switch (kind_) {
        case ErrorKind::config: return 2;
        case ErrorKind::precondition: return 3;
        case ErrorKind::auth: return 4;
        case ErrorKind::protocol: return 5;
        case ErrorKind::integrity: return 6;
        case ErrorKind::internal: break;
        }
        return 1;
    }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace spa
