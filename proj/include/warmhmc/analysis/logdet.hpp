#pragma once

// Second-order linearization of log det(I + M) for small M: the residual
// |log det(I + M) − tr M + ½ tr M²| is bounded by ‖M‖³_op · d / (3(1−c))
// whenever ‖M‖_op ≤ c < 1.

#include <cmath>

#include <Eigen/Dense>

#include "warmhmc/core/errors.hpp"
#include "warmhmc/core/phase_point.hpp"

namespace warmhmc {

struct LogdetExpansionResult {
    double residual = 0.0;
    double bound = 0.0;
    double op_norm = 0.0;
    double logdet = 0.0;
};

inline LogdetExpansionResult logdet_expansion_check(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw ConfigError("logdet_expansion_check: matrix must be square and nonempty");
    const long d = m.rows();

    LogdetExpansionResult out;
    out.op_norm = m.jacobiSvd().singularValues()(0);
    if (!(out.op_norm < 1.0))
        throw DomainError("logdet_expansion_check: requires operator norm < 1");

    // ‖M‖_op < 1 keeps I + M nonsingular with positive determinant, so the
    // log-determinant is well defined; compute it in the log domain via LU.
    Eigen::PartialPivLU<Matrix> lu(Matrix::Identity(d, d) + m);
    double logdet = 0.0;
    double sign = lu.permutationP().determinant();
    for (long i = 0; i < d; ++i) {
        const double u = lu.matrixLU()(i, i);
        logdet += std::log(std::abs(u));
        if (u < 0.0) sign = -sign;
    }
    if (!(sign > 0.0))
        throw DomainError("logdet_expansion_check: determinant unexpectedly non-positive");
    out.logdet = logdet;

    const double tr = m.trace();
    const double tr2 = (m * m).trace();
    out.residual = std::abs(logdet - tr + 0.5 * tr2);
    out.bound = std::pow(out.op_norm, 3.0) * static_cast<double>(d) / (3.0 * (1.0 - out.op_norm));
    return out;
}

}  // namespace warmhmc
