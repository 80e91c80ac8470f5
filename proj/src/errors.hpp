#pragma once
#include <stdexcept>
#include <string>

namespace nvpoa {

// Stable codes; the C API and the CLI CSV error column expose these values.
enum class Errc : int {
    ok = 0,
    invalid_argument = 1,
    out_of_range = 2,
    inadmissible_ratio = 3,
    survival_underflow = 4,
    non_differentiable_point = 5,
    no_convergence = 6,
    bracket_failure = 7,
    singular_parameter = 8,
    degenerate_scenario = 9,
    insufficient_data = 10,
    empty_bins = 11,
    non_normalizable = 12,
    derivative_unavailable = 13,
    internal = 14,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

inline const char* errc_name(Errc c) {
    switch (c) {
    case Errc::ok: return "Ok";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::inadmissible_ratio: return "InadmissibleRatio";
    case Errc::survival_underflow: return "SurvivalUnderflow";
    case Errc::non_differentiable_point: return "NonDifferentiablePoint";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::bracket_failure: return "BracketFailure";
    case Errc::singular_parameter: return "SingularParameter";
    case Errc::degenerate_scenario: return "DegenerateScenario";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::empty_bins: return "EmptyBins";
    case Errc::non_normalizable: return "NonNormalizable";
    case Errc::derivative_unavailable: return "DerivativeUnavailable";
    case Errc::internal: return "Internal";
    }
    return "Internal";
}

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace nvpoa
