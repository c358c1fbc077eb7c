#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabornc
{

enum class ErrorKind
{
    size,
    parameter,
    shape,
    numerical,
    not_a_frame,
    precondition
};

const char* to_string(ErrorKind kind) noexcept;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class SizeError : public Error
{
public:
    explicit SizeError(const std::string& what) : Error(ErrorKind::size, what) {}
};

class ParameterError : public Error
{
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::parameter, what) {}
};

/// Operands live on different grids or lattices.
class ShapeError : public Error
{
public:
    explicit ShapeError(const std::string& what) : Error(ErrorKind::shape, what) {}
};

/// An iterative method did not reach its tolerance. Carries the last iterate.
class NumericalError : public Error
{
public:
    NumericalError(const std::string& what, std::vector<std::complex<double>> last_iterate,
                   double residual)
        : Error(ErrorKind::numerical, what), last_iterate_(std::move(last_iterate)),
          residual_(residual)
    {
    }

    const std::vector<std::complex<double>>& last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    std::vector<std::complex<double>> last_iterate_;
    double residual_;
};

/// Raised when the lower frame bound falls below the positivity threshold.
class NotAFrameError : public Error
{
public:
    NotAFrameError(const std::string& what, double lower, double upper)
        : Error(ErrorKind::not_a_frame, what), lower_(lower), upper_(upper)
    {
    }

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

class PreconditionError : public Error
{
public:
    explicit PreconditionError(const std::string& what, double lower = 0.0, double upper = 0.0)
        : Error(ErrorKind::precondition, what), lower_(lower), upper_(upper)
    {
    }

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

}  // namespace gabornc
