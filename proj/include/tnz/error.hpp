#ifndef TNZ_ERROR_HPP
#define TNZ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tnz
{

enum class ErrorKind {
    ParseError,
    DuplicateNode,
    UnknownNode,
    DimensionMismatch,
    SlotReuse,
    IndexOutOfRange,
    UnknownEdge,
    NotClosed,
    NotTotal,
    LengthMismatch,
    TooLarge,
    InvalidFormula,
    EmptyNetwork,
    InvalidGraph,
    GuessRejected,
    SupportOutOfRange,
    TooSmall,
    NotNonNegative,
    InvalidWitness,
    NotAPartition,
    DisconnectedBlock,
    NoPhysicalEdge,
    NotInjective,
    SolveFailed,
    OutOfRange,
    MalformedTerm,
    MalformedGuess,
    NotStoquastic,
    NotCommuting,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch on it without parsing messages.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace tnz

#endif // TNZ_ERROR_HPP
