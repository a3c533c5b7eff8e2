#ifndef RTL_ERRORS_HH
#define RTL_ERRORS_HH

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rtl {

/// A precondition or internal contract did not hold (CLI exit code 2).
class ContractViolation : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// A configured size or time budget would be exceeded (CLI exit code 3).
class ResourceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. Carries the byte offset of the first bad byte.
class ParseError : public std::runtime_error
{
public:
    ParseError(const std::string & message, std::size_t offset) :
        std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset)
    {
    }

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace rtl

#endif // RTL_ERRORS_HH
