#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cesaro {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or violated type invariant (bad exponent, mismatched
/// space, non-finite value, malformed table, ...).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A greedy selector found no admissible index before the end of the
/// candidate range. `failed_step` is the 1-based step j that could not be
/// completed. This signals that the finite prefix cannot continue the
/// construction, not a refutation of the underlying theorem.
class SelectionExhausted : public Error {
public:
    SelectionExhausted(std::size_t failed_step, const std::string& what)
        : Error(what), failed_step_(failed_step) {}
    std::size_t failed_step() const noexcept { return failed_step_; }

private:
    std::size_t failed_step_;
};

/// The Dunford-Pettis precondition of a selector failed: no admissible
/// tightness/uniform-integrability witness exists on the supplied grids.
class DiagnosticsFailed : public Error {
public:
    explicit DiagnosticsFailed(const std::string& what) : Error(what) {}
};

/// An oracle was asked to enumerate beyond its hard evaluation budget.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

} // namespace cesaro
