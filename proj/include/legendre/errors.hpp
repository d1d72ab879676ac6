#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace legendre {

// A build request that exceeds the configured resource cap (e.g. sieve limit).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A series/iteration that did not converge to the requested accuracy.
// Carries the partial value accumulated so far.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, std::complex<double> partial)
        : std::runtime_error(what), partial_(partial) {}
    std::complex<double> partial() const { return partial_; }

private:
    std::complex<double> partial_;
};

// A root bracket whose endpoints do not straddle a sign change.
class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace legendre
