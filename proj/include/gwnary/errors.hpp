#pragma once

#include <stdexcept>
#include <string>

namespace gwnary {

/// Offspring spec text that does not match the grammar.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Root finder failed to converge or produced an inconsistent report.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Both endpoints of a critical-parameter search give the same predicate value.
class NoSignChangeError : public std::runtime_error {
public:
    explicit NoSignChangeError(const std::string& what) : std::runtime_error(what) {}
};

/// Survival quantities requested for a root whose conditioning event has no mass.
class DegenerateRootError : public std::runtime_error {
public:
    explicit DegenerateRootError(const std::string& what) : std::runtime_error(what) {}
};

/// Asymptote fit requested on a window with too few usable points.
class WindowTooSmallError : public std::runtime_error {
public:
    explicit WindowTooSmallError(const std::string& what) : std::runtime_error(what) {}
};

/// Asymptote fit requested for a curve whose class has no fit model.
class ClassMismatchError : public std::runtime_error {
public:
    explicit ClassMismatchError(const std::string& what) : std::runtime_error(what) {}
};

/// Too many Monte Carlo trials ran out of node budget for the estimate to be trusted.
class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gwnary
