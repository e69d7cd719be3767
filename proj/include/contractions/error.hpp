#ifndef CONTRACTIONS_ERROR_HPP_
#define CONTRACTIONS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace contractions {

  enum class ErrorCode {
    wrong_length,
    out_of_range,
    degree_mismatch,
    syntax_error,
    unsupported_method,
    bad_parameter,
    scale_refusal,
    not_a_member,
    not_closed,
    corrupt_cache,
  };

  constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::wrong_length: return "WrongLength";
      case ErrorCode::out_of_range: return "OutOfRange";
      case ErrorCode::degree_mismatch: return "DegreeMismatch";
      case ErrorCode::syntax_error: return "SyntaxError";
      case ErrorCode::unsupported_method: return "UnsupportedMethod";
      case ErrorCode::bad_parameter: return "BadParameter";
      case ErrorCode::scale_refusal: return "ScaleRefusal";
      case ErrorCode::not_a_member: return "NotAMember";
      case ErrorCode::not_closed: return "NotClosed";
      case ErrorCode::corrupt_cache: return "CorruptCache";
    }
    return "Unknown";
  }

  // Every failure raised by the library carries one of the codes above.
  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what),
          _code(code) {}

    [[nodiscard]] ErrorCode code() const noexcept {
      return _code;
    }

   private:
    ErrorCode _code;
  };

}  // namespace contractions

#endif  // CONTRACTIONS_ERROR_HPP_
