#pragma once

#include <stdexcept>
#include <string>

namespace foursym {

// Machine-checkable failure kinds; messages carry the numeric details.
enum class Errc {
    dependent_basis,
    not_closed,
    grading_mismatch,
    tolerance_failure,
    not_invariant,
    not_complex_structure,
    not_automorphism,
    inconsistent_grading,
    action_mismatch,
    parity_violation,
    out_of_range,
    singular_frame,
    projection_residual,
    basis_mismatch,
    curvature_too_large,
    antipodal_step,
    non_orthonormal,
    degenerate_plane,
    not_positive_definite,
    bad_input,
    io_error,
};

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace foursym
