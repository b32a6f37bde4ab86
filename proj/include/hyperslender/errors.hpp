#pragma once

#include <stdexcept>
#include <string>

namespace hyperslender {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid numeric parameter (non-positive K, tau outside (0,1), gamma <= 1, ...).
class BadParameter : public Error {
public:
    using Error::Error;
};

/// Power-law profile exponent outside {1} u [2, inf); the curvature would be
/// unbounded at the tip.
class BadExponent : public Error {
public:
    using Error::Error;
};

/// Profile slope fails to be strictly positive on the evaluation grid.
class NonMonotone : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside [0, domain_end].
class OutOfDomain : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature exceeded its subdivision budget before reaching tolerance.
class NoConvergence : public Error {
public:
    using Error::Error;
};

/// Admissibility inequality violated somewhere on the body.
class NotAdmissible : public Error {
public:
    using Error::Error;
};

/// Test-function support sticks out past the far window edges, where the
/// pairing would silently truncate.
class SupportOutsideWindow : public Error {
public:
    using Error::Error;
};

/// Measure flavor inconsistent with the region kind it is attached to.
class FlavorMismatch : public Error {
public:
    using Error::Error;
};

/// State has non-positive squared sound speed; no real characteristic speeds.
class NonHyperbolic : public Error {
public:
    using Error::Error;
};

} // namespace hyperslender
