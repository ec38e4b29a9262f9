#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace towtrack {

inline constexpr double kPi = 3.14159265358979323846;

/// Surge force and yaw moment, the only two actuated channels. Also used for
/// the reference input tau_ref and (as a plain pair) the QP correction.
struct ControlInput {
    double tau_u = 0.0;  // surge force [N]
    double tau_r = 0.0;  // yaw moment [N*m]
};

inline ControlInput operator+(const ControlInput& a, const std::array<double, 2>& x) {
    return {a.tau_u + x[0], a.tau_r + x[1]};
}

/// The four singular points of the transformed tracking model.
///   SP-1: cos(psi_l - psi_b) = 0, stabilizing function undefined
///   SP-2: b_ul = 0, input matrix of the transformed dynamics singular
///   SP-3: sideslip angle undefined (u_l = 0, guarded as u <= 0)
///   SP-4: azimuth angle undefined (p_e = 0)
enum class Singularity { Stabilizer, InputMatrix, Sideslip, Azimuth };

const char* singularity_label(Singularity s);

class SingularityError : public std::runtime_error {
public:
    SingularityError(Singularity kind, const std::string& detail)
        : std::runtime_error(std::string(singularity_label(kind)) + ": " + detail),
          kind_(kind) {}

    Singularity kind() const { return kind_; }

private:
    Singularity kind_;
};

/// Thrown when a fixed-step integration produces a non-finite state.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace towtrack
