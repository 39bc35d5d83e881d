#ifndef DEADLINE_ERROR_HPP
#define DEADLINE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace deadline {

enum class Errc {
    NegativeValue,
    NonPositiveProbability,
    MassNotOne,
    InvalidRange,
    ZeroBins,
    InvalidEpsilon,
    SupportCapExceeded,
    NotComposite,
    EmptyInput,
    InvalidSpec,
    ParseError,
    SchemaError,
    IoError,
};

inline std::string_view errc_name(Errc code) {
    switch (code) {
    case Errc::NegativeValue: return "NegativeValue";
    case Errc::NonPositiveProbability: return "NonPositiveProbability";
    case Errc::MassNotOne: return "MassNotOne";
    case Errc::InvalidRange: return "InvalidRange";
    case Errc::ZeroBins: return "ZeroBins";
    case Errc::InvalidEpsilon: return "InvalidEpsilon";
    case Errc::SupportCapExceeded: return "SupportCapExceeded";
    case Errc::NotComposite: return "NotComposite";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::IoError: return "IoError";
    }
    return "Unknown";
}

/// Every recoverable failure in the library surfaces as this exception.
/// The code is stable and is what callers (and the CLI's exit codes) branch on.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace deadline

#endif
