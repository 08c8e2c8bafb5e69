#ifndef VENERONI_ERROR_HPP
#define VENERONI_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace veneroni {

enum class ErrorCode {
    InvalidArgument,
    Parse,
    DivisionByZero,
    NotDivisible,
    FieldMismatch,
    RingMismatch,
    DegreeMismatch,
    Inconsistent,
    Genericity,
    Construction,
    BaseLocus,
    Limit,
    Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

// Syntax errors carry the byte offset into the input text.
class ParseError : public Error {
   public:
    ParseError(std::size_t offset, const std::string& what)
        : Error(ErrorCode::Parse, what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

   private:
    std::size_t offset_;
};

}  // namespace veneroni

#endif
