#pragma once

#include <stdexcept>
#include <string>

namespace pursuit {

// Bad scenario/config input. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical blow-up or broken internal invariant during a run. Exit code 2.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coincident points where a relative angle or distance is needed.
class DegenerateGeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace pursuit
