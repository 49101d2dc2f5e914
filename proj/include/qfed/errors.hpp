#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qfed {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. negative energy).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Lookup outside a tabulated range.
class RangeError : public Error
{
public:
    using Error::Error;
};

/// A denominator vanished exactly (k_z = 0 on both sides of an interface, etc.).
class DegeneracyError : public Error
{
public:
    using Error::Error;
};

/// z-derivative requested exactly at the source point.
class KinkError : public Error
{
public:
    using Error::Error;
};

/// Semi-infinite source layer without decay; needs a nonzero loss floor.
class TailDivergenceError : public Error
{
public:
    using Error::Error;
};

/// Biased quantum-well occupation requested at hbar*omega <= eU.
class InversionDomainError : public Error
{
public:
    using Error::Error;
};

/// Photon number requested where no source contributes.
class NoSourcesError : public Error
{
public:
    using Error::Error;
};

/// Input failed validation. Carries every problem found, not just the first.
class ValidationError : public Error
{
public:
    explicit ValidationError(std::vector<std::string> problems)
        : Error(join(problems)), m_problems(std::move(problems))
    {
    }

    const std::vector<std::string>& problems() const { return m_problems; }

private:
    static std::string join(const std::vector<std::string>& items)
    {
        std::string out;
        for (const auto& item : items) {
            if (!out.empty())
                out += '\n';
            out += item;
        }
        return out;
    }

    std::vector<std::string> m_problems;
};

} // namespace qfed
