#pragma once

#include <stdexcept>
#include <string>

namespace hypmet {

/// Raised when a space cannot be constructed from its description
/// (point inside the excluded set, disconnected graph, bad parameter).
class BuildError : public std::runtime_error {
public:
    explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a distance or weight oracle produces an unusable value
/// (NaN, negative distance, nonpositive weight). Carries the offending
/// indices so the caller can reproduce the evaluation.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, int i, int j)
        : std::runtime_error(what + " at pair (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")"),
          i_(i), j_(j) {}

    int i() const { return i_; }
    int j() const { return j_; }

private:
    int i_;
    int j_;
};

} // namespace hypmet
