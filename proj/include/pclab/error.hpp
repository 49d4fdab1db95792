#pragma once

#include <concepts>
#include <stdexcept>
#include <string>

namespace pclab {

//! Raised when an argument falls outside the domain an operation accepts.
class DomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const char* message)
{
    if (!condition) {
        throw DomainError(message);
    }
}

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw DomainError(message);
    }
}

//! Builds the message only on failure; for checks inside hot loops.
template <std::invocable Describe>
void require(bool condition, Describe&& describe)
{
    if (!condition) {
        throw DomainError(std::string(describe()));
    }
}

}  // namespace pclab
