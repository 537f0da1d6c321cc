#include "tnz/error.hpp"

namespace tnz
{

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateNode: return "DuplicateNode";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SlotReuse: return "SlotReuse";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotTotal: return "NotTotal";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidFormula: return "InvalidFormula";
    case ErrorKind::EmptyNetwork: return "EmptyNetwork";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::GuessRejected: return "GuessRejected";
    case ErrorKind::SupportOutOfRange: return "SupportOutOfRange";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::NotNonNegative: return "NotNonNegative";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::DisconnectedBlock: return "DisconnectedBlock";
    case ErrorKind::NoPhysicalEdge: return "NoPhysicalEdge";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::SolveFailed: return "SolveFailed";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::MalformedTerm: return "MalformedTerm";
    case ErrorKind::MalformedGuess: return "MalformedGuess";
    case ErrorKind::NotStoquastic: return "NotStoquastic";
    case ErrorKind::NotCommuting: return "NotCommuting";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

} // namespace tnz
