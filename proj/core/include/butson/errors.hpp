#pragma once

#include <stdexcept>
#include <string>

namespace butson {

/// Malformed input text (matrix or graph files).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operation produced (or was asked to accept) a matrix that violates
/// the defining property. Carries the first witness found.
class property_error : public std::runtime_error {
public:
    property_error(const std::string& what, int a, int b)
        : std::runtime_error(what), first(a), second(b) {}
    int first;
    int second;
};

/// A structural precondition failed; `condition` names the first violated one.
class condition_error : public std::runtime_error {
public:
    condition_error(const std::string& condition, const std::string& what)
        : std::runtime_error(what), condition(condition) {}
    std::string condition;
};

/// A cost cap or node budget was exceeded before the search finished.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace butson
