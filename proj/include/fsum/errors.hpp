#pragma once

#include <stdexcept>
#include <string>

namespace fsum {

/// Enumeration or product size would exceed the configured cap.
/// Carries the budget that would have been required.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, const std::string& required, const std::string& cap)
        : std::runtime_error(what + " (required " + required + ", cap " + cap + ")"),
          required_(required), cap_(cap) {}
    const std::string& required() const { return required_; }
    const std::string& cap() const { return cap_; }

private:
    std::string required_;
    std::string cap_;
};

/// A theorem hypothesis is not met; refusal to certify is a verdict, not a crash.
class hypothesis_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Query past the certified horizon of an index set or checkpoint scan.
class horizon_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input text, file, or literal.
class parse_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A recomputed certificate no longer verifies.
class verification_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace fsum
