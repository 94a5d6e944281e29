#pragma once

namespace msect {

/// Principal branch W0 of the Lambert W function on x >= 0: the w >= 0
/// with w * e^w == x.
///
/// Halley iteration from ln(1 + x), stopping once the step falls below
/// 1e-15 * (1 + |w|). Throws DomainError for x < 0 or NaN and
/// ConvergenceError if 50 iterations do not suffice.
double lambert_w0(double x);

/// Relative residual |e^W(x) - x/W(x)| / (x/W(x)) of the identity
/// e^W(x) = x / W(x). Throws DomainError for x <= 0.
double check_w_identity(double x);

}  // namespace msect
