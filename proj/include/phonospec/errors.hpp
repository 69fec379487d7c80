// errors.hpp - exception types shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace phonospec {

// Bad input values (negative widths, unsorted tables, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input outside the applicability domain of a formula or guard.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation not available for this kind of input.
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class CalibrationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Dataset does not belong to the scenario it is being used with.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature gave up; carries the best estimate reached.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double estimate, double error)
        : NumericalError(what), estimate_(estimate), error_(error) {}
    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

// Time stepper failure; carries the last accepted state.
class StepperError : public NumericalError {
public:
    StepperError(const std::string& what, double t, double n)
        : NumericalError(what), t_(t), n_(n) {}
    double last_time() const noexcept { return t_; }
    double last_value() const noexcept { return n_; }

private:
    double t_;
    double n_;
};

// Config problem, addressed by a dotted path such as "environment.gas.m_g".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace phonospec
