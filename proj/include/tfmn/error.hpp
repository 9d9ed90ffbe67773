#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfmn {

/// Library-wide failure. `code` is a short machine-readable tag
/// ("load_failure", "unknown_node", ...); `details` lists offending
/// rows or locations when there are several.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message,
          std::vector<std::string> details = {})
        : std::runtime_error(message)
        , code_(std::move(code))
        , details_(std::move(details))
    {}

    const std::string& code() const noexcept { return code_; }
    const std::vector<std::string>& details() const noexcept { return details_; }

private:
    std::string code_;
    std::vector<std::string> details_;
};

}  // namespace tfmn
