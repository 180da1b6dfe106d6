#pragma once

#include <stdexcept>
#include <string>

namespace barylab {

/// The barycentric denominator vanished: the interpolant has a pole.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what, double where = 0.0)
        : std::runtime_error(what), where_(where) {}

    [[nodiscard]] double where() const noexcept { return where_; }

private:
    double where_;
};

}  // namespace barylab
