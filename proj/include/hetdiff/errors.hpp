#pragma once

#include <stdexcept>
#include <string>

namespace hetdiff {

/// Evaluation requested at a point where the model is undefined
/// (the diffusivity and the density/pressure conversions have no
/// value at the interface x = 0).
class invalid_point_error : public std::invalid_argument {
public:
    explicit invalid_point_error(const std::string& what)
        : std::invalid_argument(what) {}
};

/// A numerical routine failed to reach its requested tolerance.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double requested, double achieved)
        : std::runtime_error(what), requested_(requested), achieved_(achieved) {}

    double requested() const noexcept { return requested_; }
    double achieved() const noexcept { return achieved_; }

private:
    double requested_;
    double achieved_;
};

/// File or stream operation failed.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hetdiff
