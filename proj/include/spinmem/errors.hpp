#pragma once

#include <stdexcept>
#include <string>

namespace spinmem
{

// Base for every error raised by the library. Callers that only need a
// message and a nonzero exit code can catch this one type.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class NonPositiveParameter : public Error
{
public:
    NonPositiveParameter(const std::string& name, double value)
        : Error("parameter '" + name + "' violates its sign constraint (value " + std::to_string(value) + ")"),
          name_(name)
    {
    }
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class MissingCavityTransmission : public Error
{
public:
    MissingCavityTransmission() : Error("cavity scheme requires the output mirror transmission cavity_T") {}
};

class MissingDetuning : public Error
{
public:
    MissingDetuning() : Error("Raman pumping rate requires a nonzero one-photon detuning delta1") {}
};

class UnsupportedScheme : public Error
{
public:
    using Error::Error;
};

class NoWindowError : public Error
{
public:
    using Error::Error;
};

class QuadratureFailure : public Error
{
public:
    using Error::Error;
};

class NoBracket : public Error
{
public:
    NoBracket() : Error("root is not bracketed: function has the same sign at both ends") {}
};

class SumRuleViolation : public Error
{
public:
    SumRuleViolation(double integral, double tolerance)
        : Error("spin-noise sum rule violated: integral = " + std::to_string(integral) +
                ", expected 1 within " + std::to_string(tolerance)),
          integral_(integral)
    {
    }
    double integral() const { return integral_; }

private:
    double integral_;
};

class BoundsError : public Error
{
public:
    using Error::Error;
};

class UnknownFigure : public Error
{
public:
    explicit UnknownFigure(const std::string& name) : Error("unknown figure '" + name + "' (expected fig1..fig5)") {}
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

} // namespace spinmem
