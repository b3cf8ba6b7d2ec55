#pragma once

#include <Eigen/Dense>
#include <complex>

#include "beamspec/errors.hpp"

namespace beamspec {

using cplx = std::complex<double>;

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat8 = Eigen::Matrix<cplx, 8, 8>;
using Mat48 = Eigen::Matrix<cplx, 4, 8>;
using Vec4 = Eigen::Vector4cd;
using Vec8 = Eigen::Matrix<cplx, 8, 1>;
using RMat4 = Eigen::Matrix4d;
using RVec4 = Eigen::Vector4d;
using MatX = Eigen::MatrixXcd;
using RMatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXcd;
using RVecX = Eigen::VectorXd;

/// Physical constants of the beam problem. l is the half-length, alpha the
/// stiffness ratio (k/EI)^(1/4), k the foundation spring density.
struct BeamParams {
    double l = 1.0;
    double alpha = 1.0;
    double k = 1.0;

    /// Dimensionless beam length 2*l*alpha; the base spectrum depends only on
    /// this and k.
    double intrinsic_length() const { return 2.0 * l * alpha; }

    void validate() const {
        if (!(l > 0.0) || !(alpha > 0.0) || !(k > 0.0))
            throw Error("beam parameters must be positive (l, alpha, k)");
    }
};

/// Max absolute entry of a matrix (the norm used by identity checks).
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    return a.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& a) {
    return a.allFinite();
}

}  // namespace beamspec
