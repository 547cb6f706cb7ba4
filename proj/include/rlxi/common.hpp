#ifndef RLXI_COMMON_HPP
#define RLXI_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlxi {

// Symbol ids: 0 is invalid, terminals are 1..256 (byte value + 1),
// nonterminals start at 257 in definition order.
using Symbol = std::uint32_t;

inline constexpr Symbol kNoSymbol = 0;
inline constexpr Symbol kFirstNonterminal = 257;

inline constexpr bool is_terminal(Symbol s) { return s >= 1 && s <= 256; }
inline constexpr bool is_nonterminal(Symbol s) { return s >= kFirstNonterminal; }
inline constexpr unsigned char terminal_byte(Symbol s) {
  return static_cast<unsigned char>(s - 1);
}
inline constexpr Symbol terminal_symbol(unsigned char b) {
  return static_cast<Symbol>(b) + 1;
}

enum class ErrorCode {
  ParseError,
  UndefinedSymbol,
  DuplicateRule,
  CycleDetected,
  ExponentTooSmall,
  EmptyBody,
  EmptyString,
  OutOfRange,
  TooLarge,
  Overflow,
  OverflowRisk,
  RankOutOfRange,
  SignatureCollision,
  ParamError,
  BadMagic,
  VersionMismatch,
  ChecksumMismatch,
  Truncated,
  Malformed,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UndefinedSymbol: return "UndefinedSymbol";
    case ErrorCode::DuplicateRule: return "DuplicateRule";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::ExponentTooSmall: return "ExponentTooSmall";
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::EmptyString: return "EmptyString";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OverflowRisk: return "OverflowRisk";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::SignatureCollision: return "SignatureCollision";
    case ErrorCode::ParamError: return "ParamError";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace rlxi

#endif
