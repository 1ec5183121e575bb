#pragma once

#include <stdexcept>
#include <string>

namespace kahler {

enum class errc {
    syntax,
    invalid_input,
    insufficient_truncation,
    non_positive_multiplier_valuation,
    not_nested,
    uncertified_tail,
    non_positive_valuation_generator,
    imprimitive_parametrization,
    truncation_exhausted,
    order_undetectable,
    scan_exhausted,
    ring_mismatch,
    not_in_normalization,
    not_an_integral_ideal,
    internal_inconsistency,
    domain_error,
    gcd_not_one,
};

inline const char* errc_name(errc e) noexcept
{
    switch (e) {
    case errc::syntax: return "SyntaxError";
    case errc::invalid_input: return "InvalidInput";
    case errc::insufficient_truncation: return "InsufficientTruncation";
    case errc::non_positive_multiplier_valuation: return "NonPositiveMultiplierValuation";
    case errc::not_nested: return "NotNested";
    case errc::uncertified_tail: return "UncertifiedTail";
    case errc::non_positive_valuation_generator: return "NonPositiveValuationGenerator";
    case errc::imprimitive_parametrization: return "ImprimitiveParametrization";
    case errc::truncation_exhausted: return "TruncationExhausted";
    case errc::order_undetectable: return "OrderUndetectable";
    case errc::scan_exhausted: return "ScanExhausted";
    case errc::ring_mismatch: return "RingMismatch";
    case errc::not_in_normalization: return "NotInNormalization";
    case errc::not_an_integral_ideal: return "NotAnIntegralIdeal";
    case errc::internal_inconsistency: return "InternalInconsistency";
    case errc::domain_error: return "DomainError";
    case errc::gcd_not_one: return "GcdNotOne";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error
{
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace kahler
