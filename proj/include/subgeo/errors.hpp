#ifndef SUBGEO_ERRORS_HPP
#define SUBGEO_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace subgeo {

/// Invalid arguments or malformed input data.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Point-file parse failure. The message names the byte offset or line.
class FormatError : public InputError {
public:
    using InputError::InputError;
};

/// A requested repetition/branch count exceeds the configured budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : std::runtime_error(what + " (required " + std::to_string(required) +
                             ", budget " + std::to_string(budget) + ")"),
          required_(required), budget_(budget) {}

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

}  // namespace subgeo

#endif  // SUBGEO_ERRORS_HPP
