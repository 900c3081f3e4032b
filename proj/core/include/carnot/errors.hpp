#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad arguments, malformed files, inconsistent configuration.
class invalid_input : public error {
public:
    explicit invalid_input(const std::string& msg) : error(msg) {}
};

/// A numerical procedure could not produce a trustworthy result
/// (singular systems, unbounded objectives, infeasible constraints,
/// grids too coarse for the requested tolerance, ...).
class numerical_error : public error {
public:
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

class degenerate_generator_error : public numerical_error {
public:
    explicit degenerate_generator_error(const std::string& msg) : numerical_error(msg) {}
};

class singular_rate_error : public numerical_error {
public:
    explicit singular_rate_error(const std::string& msg) : numerical_error(msg) {}
};

class inconsistent_generator_error : public invalid_input {
public:
    explicit inconsistent_generator_error(const std::string& msg) : invalid_input(msg) {}
};

class singular_metric_error : public numerical_error {
public:
    explicit singular_metric_error(const std::string& msg) : numerical_error(msg) {}
};

/// Quadrature grid too coarse for the requested tolerance.
class resolution_error : public numerical_error {
public:
    resolution_error(const std::string& msg, int suggested_samples)
        : numerical_error(msg), suggested_samples(suggested_samples) {}
    int suggested_samples;
};

class infeasible_error : public numerical_error {
public:
    explicit infeasible_error(const std::string& msg) : numerical_error(msg) {}
};

class unbounded_error : public numerical_error {
public:
    explicit unbounded_error(const std::string& msg) : numerical_error(msg) {}
};

}  // namespace carnot
