#pragma once

#include <stdexcept>
#include <string>

namespace diracshell {

/// A function argument left the supported domain (z = 0 for Y_l, x <= 0 for K_l, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An evaluation would overflow double range (exponentially large Bessel arguments).
class range_error : public std::range_error {
public:
    using std::range_error::range_error;
};

/// A real energy fell inside the threshold guard band around |E| = m.
class near_threshold_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative solver failed to converge.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace diracshell
