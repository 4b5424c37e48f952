#pragma once

#include <stdexcept>
#include <string>

namespace grassfault {

// Invalid arguments or configuration supplied by the caller.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or inconsistent input data: files, labels, shapes.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: rank collapse, ill conditioning, non-convergence.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class RankDeficiencyError : public NumericError {
public:
    explicit RankDeficiencyError(const std::string& what) : NumericError(what) {}
};

class ConditioningError : public NumericError {
public:
    explicit ConditioningError(const std::string& what) : NumericError(what) {}
};

}  // namespace grassfault
