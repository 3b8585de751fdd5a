#ifndef CHARP_ERROR_HPP
#define CHARP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace charp {

// Every failure surfaced by the library carries one of these codes. The CLI
// reports the code name verbatim, so renaming an enumerator is a format change.
enum class Errc {
    ZeroDenominator,
    DivisionByZero,
    ZeroInput,
    DimensionMismatch,
    FieldMismatch,
    UnsupportedPrime,
    ExponentOverflow,
    ZeroElement,
    NotIndependent,
    RankMismatch,
    TowerMismatch,
    NotCoordinate,
    NotACycle,
    RankNotOne,
    DegenerateExtension,
    HypothesisFails,
    SolveFailed,
    NotInNu2,
    PreconditionViolated,
    ZeroB,
    NotDegreeP,
    RootFailure,
    ResidueNotSplit,
    UnsupportedN,
    MalformedSlot,
    DecomposeFailed,
    RankTooLow,
    NonCoordinateRoot,
    NotInSab,
    SyntaxError,
    BudgetExhausted,
    Unsupported,
    InternalError,
};

constexpr std::string_view errc_name(Errc e) noexcept
{
    switch (e) {
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::UnsupportedPrime: return "UnsupportedPrime";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::NotIndependent: return "NotIndependent";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::TowerMismatch: return "TowerMismatch";
    case Errc::NotCoordinate: return "NotCoordinate";
    case Errc::NotACycle: return "NotACycle";
    case Errc::RankNotOne: return "RankNotOne";
    case Errc::DegenerateExtension: return "DegenerateExtension";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::SolveFailed: return "SolveFailed";
    case Errc::NotInNu2: return "NotInNu2";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::ZeroB: return "ZeroB";
    case Errc::NotDegreeP: return "NotDegreeP";
    case Errc::RootFailure: return "RootFailure";
    case Errc::ResidueNotSplit: return "ResidueNotSplit";
    case Errc::UnsupportedN: return "UnsupportedN";
    case Errc::MalformedSlot: return "MalformedSlot";
    case Errc::DecomposeFailed: return "DecomposeFailed";
    case Errc::RankTooLow: return "RankTooLow";
    case Errc::NonCoordinateRoot: return "NonCoordinateRoot";
    case Errc::NotInSab: return "NotInSab";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::Unsupported: return "Unsupported";
    case Errc::InternalError: return "InternalError";
    }
    return "Unknown";
}

// Outcomes that mean "undecided" rather than "refuted".
constexpr bool errc_is_undecided(Errc e) noexcept
{
    return e == Errc::SolveFailed || e == Errc::BudgetExhausted || e == Errc::DecomposeFailed;
}

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }
    std::string_view name() const noexcept { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what)
{
    throw Error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace charp

#endif
