#pragma once

#include <stdexcept>
#include <string>

namespace mixnorm {

/// Library error categories. Every throwing operation documents which of
/// these it can raise; tests match on the code, not the message.
enum class errc {
    negative_weight,
    empty_axis,
    all_zero_weights,
    duplicate_points,
    dimension_mismatch,
    invalid_permutation,
    exponent_too_small,
    grid_mismatch,
    empty_list,
    moment_order_too_small,
    convergence_undecidable,
    divergent_series,
    no_schedule_available,
    invalid_model,
    not_positive_semidefinite,
    unsupported_moment,
    empty_sample,
    tail_spec_missing,
    insufficient_replicas,
    config_parse,
    validation,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::negative_weight: return "negative_weight";
        case errc::empty_axis: return "empty_axis";
        case errc::all_zero_weights: return "all_zero_weights";
        case errc::duplicate_points: return "duplicate_points";
        case errc::dimension_mismatch: return "dimension_mismatch";
        case errc::invalid_permutation: return "invalid_permutation";
        case errc::exponent_too_small: return "exponent_too_small";
        case errc::grid_mismatch: return "grid_mismatch";
        case errc::empty_list: return "empty_list";
        case errc::moment_order_too_small: return "moment_order_too_small";
        case errc::convergence_undecidable: return "convergence_undecidable";
        case errc::divergent_series: return "divergent_series";
        case errc::no_schedule_available: return "no_schedule_available";
        case errc::invalid_model: return "invalid_model";
        case errc::not_positive_semidefinite: return "not_positive_semidefinite";
        case errc::unsupported_moment: return "unsupported_moment";
        case errc::empty_sample: return "empty_sample";
        case errc::tail_spec_missing: return "tail_spec_missing";
        case errc::insufficient_replicas: return "insufficient_replicas";
        case errc::config_parse: return "config_parse";
        case errc::validation: return "validation";
        case errc::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace mixnorm
