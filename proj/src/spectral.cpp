#include "beamspec/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "beamspec/representation.hpp"

namespace beamspec {

namespace {

Mat4 diag0110() {
    Mat4 d = Mat4::Zero();
    d(1, 1) = 1.0;
    d(2, 2) = 1.0;
    return d;
}

Mat4 diag1001() {
    Mat4 d = Mat4::Zero();
    d(0, 0) = 1.0;
    d(3, 3) = 1.0;
    return d;
}

Mat4 kappa_scaling(cplx kappa) {
    Mat4 d = Mat4::Zero();
    d(0, 0) = 1.0;
    d(1, 1) = kappa;
    d(2, 2) = kappa * kappa;
    d(3, 3) = kappa * kappa * kappa;
    return d;
}

bool is_degenerate(cplx lambda, double k) { return std::abs(lambda * k - 1.0) <= kDegenerateBand; }

void require_nonzero(cplx lambda) {
    if (std::abs(lambda) < 1e-300) throw ZeroLambda();
}

struct CharSvd {
    double rel_resid;
    Vec4 null_vec;
    int multiplicity;
};

/// Singularity test of the characteristic matrix. X grows like e^{|kappa| z}
/// for small lambda, which grades the rows and columns and makes the raw
/// sigma_min/sigma_max over-report singularity; diagonal equilibration
/// removes the grading without moving the null space (the null vector is
/// mapped back through the column scaling).
CharSvd char_svd(const Mat4& c) {
    Mat4 scaled = c;
    RVec4 col_scale = RVec4::Ones();
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < 4; ++i) {
            const double m = scaled.row(i).cwiseAbs().maxCoeff();
            if (m > 0.0) scaled.row(i) /= m;
        }
        for (int j = 0; j < 4; ++j) {
            const double m = scaled.col(j).cwiseAbs().maxCoeff();
            if (m > 0.0) {
                scaled.col(j) /= m;
                col_scale(j) /= m;
            }
        }
    }
    Eigen::JacobiSVD<Mat4> svd(scaled, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    CharSvd out;
    const double smax = s(0) > 0.0 ? s(0) : 1.0;
    out.rel_resid = s(3) / smax;
    out.multiplicity = (s(2) / smax <= 1e-8) ? 2 : 1;
    Vec4 null_vec = col_scale.asDiagonal() * svd.matrixV().col(3);
    out.null_vec = null_vec / null_vec.norm();
    return out;
}

}  // namespace

EigenBasis EigenBasis::make(cplx lambda, const BeamParams& params) {
    require_nonzero(lambda);
    EigenBasis basis;
    basis.lambda = lambda;
    basis.params = params;
    if (is_degenerate(lambda, params.k)) {
        basis.branch = EigenBranch::Degenerate;
    } else {
        basis.branch = EigenBranch::Generic;
        basis.kappa = chi(lambda, params.k);
    }
    return basis;
}

Vec4 EigenBasis::y(double x) const {
    Vec4 v;
    if (branch == EigenBranch::Degenerate) {
        v(0) = 1.0;
        v(1) = x;
        v(2) = x * x / 2.0;
        v(3) = x * x * x / 6.0;
    } else {
        const auto& c = constants();
        for (int j = 0; j < 4; ++j) v(j) = std::exp(c.omega[j] * kappa * params.alpha * x);
    }
    return v;
}

Mat4 EigenBasis::wronskian(double x) const {
    if (branch == EigenBranch::Degenerate) {
        Mat4 w = Mat4::Zero();
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double f = 1.0;
                for (int r = 1; r <= j - i; ++r) f *= x / r;
                w(i, j) = f;
            }
        return w;
    }
    const auto& c = constants();
    const cplx z = kappa * params.alpha * x;
    return alpha_scaling(params.alpha) * kappa_scaling(kappa) * c.W0 * exp_Omega(z);
}

cplx p_poly(int n, double z) {
    const auto& c = constants();
    cplx acc = 0.0;
    double zr = 1.0;  // z^r / r!
    for (int r = 0; r <= n; ++r) {
        acc += std::pow(c.omega[0], n - r) * zr;
        zr *= z / (r + 1);
    }
    return acc;
}

Mat4 p_matrix(double z) {
    Mat4 p;
    for (int n = 0; n < 4; ++n) {
        const cplx pn = p_poly(n, z);
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        p(0, n) = std::conj(pn);
        p(1, n) = sign * pn;
        p(2, n) = sign * std::conj(pn);
        p(3, n) = pn;
    }
    return p;
}

Mat2 p_plus(double z) {
    Mat2 m;
    m(0, 0) = std::conj(p_poly(0, z));
    m(0, 1) = std::conj(p_poly(2, z));
    m(1, 0) = p_poly(0, z);
    m(1, 1) = p_poly(2, z);
    return m;
}

Mat2 p_minus(double z) {
    Mat2 m;
    m(0, 0) = -std::conj(p_poly(1, z));
    m(0, 1) = -std::conj(p_poly(3, z));
    m(1, 0) = p_poly(1, z);
    m(1, 1) = p_poly(3, z);
    return m;
}

Mat4 x_matrix_zk(cplx z, cplx kappa) {
    const auto& c = constants();
    const Mat4 core = c.W0.adjoint() * kappa_scaling(kappa) * c.W0;
    return 0.25 * exp_eps_Omega(-z) *
           (diag0110() * core * exp_Omega(-kappa * z) + diag1001() * core * exp_Omega(kappa * z));
}

Mat4 X_matrix(cplx lambda, double x, const BeamParams& params) {
    require_nonzero(lambda);
    const double z = params.alpha * x;
    if (is_degenerate(lambda, params.k))
        return 0.25 * exp_eps_Omega(-z) * p_matrix(z) * alpha_scaling(1.0 / params.alpha);
    return x_matrix_zk(z, chi(lambda, params.k));
}

Mat4 X_matrix_direct(cplx lambda, double x, const BeamParams& params) {
    const EigenBasis basis = EigenBasis::make(lambda, params);
    return diag0110() * wronskian_W_inv(params, -x) * basis.wronskian(-x) +
           diag1001() * wronskian_W_inv(params, x) * basis.wronskian(x);
}

double x_margin(cplx lambda, double x, const BeamParams& params) {
    const Mat4 xm = X_matrix(lambda, x, params);
    Eigen::JacobiSVD<Mat4> svd(xm);
    const auto& s = svd.singularValues();
    return s(0) > 0.0 ? s(3) / s(0) : 0.0;
}

Mat4 Y_matrix(cplx lambda, double x, const BeamParams& params) {
    const Mat4 xp = X_matrix(lambda, x, params);
    const Mat4 xn = X_matrix(lambda, -x, params);
    Eigen::JacobiSVD<Mat4> svd(xp);
    const auto& s = svd.singularValues();
    if (!(s(0) > 0.0) || s(3) / s(0) < 1e-8)
        throw SingularX("Y_matrix: X is singular at lambda (base-spectrum point)");
    return xn * xp.inverse() - Mat4::Identity();
}

EigenMatrices eigen_matrices(cplx lambda, const BeamParams& params) {
    EigenMatrices m;
    m.lambda = lambda;
    m.x_at_l = X_matrix(lambda, params.l, params);
    m.x_at_minus_l = X_matrix(lambda, -params.l, params);
    Eigen::JacobiSVD<Mat4> svd(m.x_at_l);
    const auto& s = svd.singularValues();
    if (s(0) > 0.0 && s(3) / s(0) >= 1e-8)
        m.y = Mat4(m.x_at_minus_l * m.x_at_l.inverse() - Mat4::Identity());
    return m;
}

Mat4 char_matrix(const Mat4& g_gamma, cplx lambda, const BeamParams& params) {
    const Mat4 xl = X_matrix(lambda, params.l, params);
    const Mat4 xml = X_matrix(lambda, -params.l, params);
    return g_gamma * (xl - xml) + xl;
}

SpectralPoint characteristic_point(const Mat4& g_gamma, cplx lambda, const BeamParams& params) {
    const CharSvd svd = char_svd(char_matrix(g_gamma, lambda, params));
    SpectralPoint point;
    point.lambda = lambda;
    point.null_vector = svd.null_vec;
    point.residual = svd.rel_resid;
    point.multiplicity = svd.multiplicity;
    return point;
}

cplx char_det(const BoundaryCondition& bc, const BeamParams& params, cplx lambda) {
    require_nonzero(lambda);
    const Mat4 g = gamma(bc, params);
    return char_matrix(g, lambda, params).determinant();
}

cplx char_det_Y(const BoundaryCondition& bc, const BeamParams& params, cplx lambda) {
    require_nonzero(lambda);
    const Mat4 g = gamma(bc, params);
    const Mat4 y = Y_matrix(lambda, params.l, params);
    return (g * y - Mat4::Identity()).determinant();
}

namespace {

// --- real-line scanning ------------------------------------------------

/// Oscillation variable on (0, 1/k): lambda = 1 / (k (1 + (s/L)^4)).
double lambda_of_s(double s, const BeamParams& params) {
    const double L = params.intrinsic_length();
    const double q = s / L;
    return 1.0 / (params.k * (1.0 + q * q * q * q));
}

double s_of_lambda(double lam, const BeamParams& params) {
    const double L = params.intrinsic_length();
    return L * std::pow(1.0 / (lam * params.k) - 1.0, 0.25);
}

struct ScanSample {
    double lam = 0.0;
    double f = 0.0;       // Re char_det_Y
    bool f_ok = false;    // X invertible enough for Y
    double dx = 0.0;      // real-valued det X indicator
};

class Scanner {
public:
    Scanner(const Mat4& g, const BeamParams& params, double ev_tol)
        : g_(g), params_(params), ev_tol_(ev_tol) {}

    ScanSample eval(double lam) const {
        ScanSample s;
        s.lam = lam;
        const Mat4 xl = X_matrix(lam, params_.l, params_);
        const cplx det_x = xl.determinant();
        const bool inside = lam * params_.k > 0.0 && lam * params_.k < 1.0 &&
                            !is_degenerate(lam, params_.k);
        s.dx = inside ? det_x.imag() : det_x.real();
        Eigen::JacobiSVD<Mat4> svd(xl);
        const auto& sv = svd.singularValues();
        s.f_ok = sv(0) > 0.0 && sv(3) / sv(0) > 1e-8;
        if (s.f_ok) {
            const Mat4 xml = X_matrix(lam, -params_.l, params_);
            const Mat4 y = xml * xl.inverse() - Mat4::Identity();
            s.f = (g_ * y - Mat4::Identity()).determinant().real();
        }
        return s;
    }

    double f_only(double lam) const { return eval(lam).f; }
    double dx_only(double lam) const { return eval(lam).dx; }

    /// Bisection of a sign change of `fn` on [lo, hi].
    template <typename Fn>
    double bisect(Fn&& fn, double lo, double hi, double flo) const {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) return mid;
            const double fm = fn(mid);
            if (fm == 0.0) return mid;
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

    SpectralPoint make_point(double lam) const {
        // Polish against the sigma_min objective in a tight window.
        const double w = 1e-11 * std::max(1.0, std::abs(lam));
        double best_lam = lam;
        CharSvd best = char_svd(char_matrix(g_, lam, params_));
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lam - w, b = lam + w;
        double c1 = b - phi * (b - a), c2 = a + phi * (b - a);
        CharSvd s1 = char_svd(char_matrix(g_, c1, params_));
        CharSvd s2 = char_svd(char_matrix(g_, c2, params_));
        for (int it = 0; it < 40; ++it) {
            if (s1.rel_resid < s2.rel_resid) {
                b = c2;
                c2 = c1;
                s2 = s1;
                c1 = b - phi * (b - a);
                s1 = char_svd(char_matrix(g_, c1, params_));
            } else {
                a = c1;
                c1 = c2;
                s1 = s2;
                c2 = a + phi * (b - a);
                s2 = char_svd(char_matrix(g_, c2, params_));
            }
        }
        const double mid = 0.5 * (a + b);
        CharSvd sm = char_svd(char_matrix(g_, mid, params_));
        if (sm.rel_resid < best.rel_resid) {
            best = sm;
            best_lam = mid;
        }
        SpectralPoint point;
        point.lambda = best_lam;
        point.null_vector = best.null_vec;
        point.residual = best.rel_resid;
        point.multiplicity = best.multiplicity;
        return point;
    }

    /// Eigenvalue test at a base-spectrum point via the direct matrix.
    bool accept_at_base_point(double lam, SpectralPoint& out) const {
        const CharSvd s = char_svd(char_matrix(g_, lam, params_));
        if (s.rel_resid > ev_tol_) return false;
        out.lambda = lam;
        out.null_vector = s.null_vec;
        out.residual = s.rel_resid;
        out.multiplicity = s.multiplicity;
        return true;
    }

private:
    Mat4 g_;
    const BeamParams& params_;
    double ev_tol_;
};

/// Grid over one monotone piece; inside (0, 1/k) the points are uniform in
/// the oscillation variable so roots stay ~pi apart on the grid.
std::vector<double> piece_grid(double a, double b, int n, bool inside_unit, const BeamParams& p) {
    std::vector<double> lams;
    if (inside_unit) {
        const double s_hi = s_of_lambda(a, p);  // lambda small -> s large
        const double s_lo = std::max(s_of_lambda(b, p), 1e-4);
        const double pi = std::acos(-1.0);
        // ~50 samples per root spacing, capped so absurdly small interval
        // starts cannot blow the grid up
        const int count = std::min(
            std::max(n, static_cast<int>(std::ceil((s_hi - s_lo) / (pi / 50.0)))), 400000);
        for (int i = 0; i <= count; ++i) {
            const double s = s_hi + (s_lo - s_hi) * static_cast<double>(i) / count;
            lams.push_back(lambda_of_s(s, p));
        }
    } else {
        for (int i = 0; i <= n; ++i) lams.push_back(a + (b - a) * static_cast<double>(i) / n);
    }
    return lams;
}

}  // namespace

namespace {

/// Fallback for conditions with complex entries, where det(G Y - I) is not
/// real-valued on the real line and sign-change bracketing does not apply:
/// residual minima on the grid are refined by the local pattern search.
/// Finds real eigenvalues only (best effort).
ScanResult scan_by_minima(const Mat4& g, const BeamParams& params,
                          const std::vector<std::vector<double>>& piece_grids) {
    ScanResult result;
    auto push_point = [&](const SpectralPoint& p) {
        for (const auto& q : result.points)
            if (std::abs(q.lambda - p.lambda) <= 1e-9 * std::max(1.0, std::abs(p.lambda))) return;
        result.points.push_back(p);
    };
    for (const auto& lams : piece_grids) {
        std::vector<double> resid(lams.size());
        for (size_t i = 0; i < lams.size(); ++i)
            resid[i] = char_svd(char_matrix(g, lams[i], params)).rel_resid;
        for (size_t i = 1; i + 1 < lams.size(); ++i) {
            if (resid[i] < resid[i - 1] && resid[i] < resid[i + 1] && resid[i] < 1e-2) {
                const SpectralPoint p = polish_complex(g, lams[i], params);
                if (p.residual <= 1e-8 && std::abs(p.lambda.imag()) <= 1e-8) push_point(p);
            }
        }
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const SpectralPoint& u, const SpectralPoint& v) {
                  return u.lambda.real() > v.lambda.real();
              });
    return result;
}

}  // namespace

ScanResult scan_real_spectrum(const BoundaryCondition& bc, const BeamParams& params, double a,
                              double b, int grid) {
    if (!is_wellposed(bc, params)) throw NotWellPosed();
    if (!(a < b)) throw Error("scan_real_spectrum: empty interval");
    const Mat4 g = gamma(bc, params);
    const double ev_tol = 1e-8;
    Scanner scanner(g, params, ev_tol);

    // Split [a, b] at 0 and at the unit-interval boundaries.
    const double zero_guard = 1e-8 / params.k;
    const double inv_k = 1.0 / params.k;
    struct Piece {
        double lo, hi;
        bool inside_unit;
    };
    std::vector<Piece> pieces;
    auto add_piece = [&](double lo, double hi, bool inside) {
        if (hi > lo) pieces.push_back({lo, hi, inside});
    };
    add_piece(a, std::min(b, -zero_guard), false);
    add_piece(std::max(a, zero_guard), std::min(b, inv_k * (1.0 - 1e-12)), true);
    add_piece(std::max(a, inv_k * (1.0 + 1e-12)), b, false);

    if (!bc.is_real) {
        std::vector<std::vector<double>> grids;
        for (const auto& piece : pieces) {
            const int n = std::max(grid / static_cast<int>(pieces.size()), 64);
            grids.push_back(piece_grid(piece.lo, piece.hi, n, piece.inside_unit, params));
        }
        return scan_by_minima(g, params, grids);
    }

    ScanResult result;
    auto push_point = [&](const SpectralPoint& p) {
        for (const auto& q : result.points)
            if (std::abs(q.lambda - p.lambda) <= 1e-9 * std::max(1.0, std::abs(p.lambda))) return;
        result.points.push_back(p);
    };

    for (const auto& piece : pieces) {
        const int n = std::max(grid / static_cast<int>(pieces.size()), 64);
        const std::vector<double> lams = piece_grid(piece.lo, piece.hi, n, piece.inside_unit, params);
        std::vector<ScanSample> samples;
        samples.reserve(lams.size());
        for (double lam : lams) samples.push_back(scanner.eval(lam));
        std::sort(samples.begin(), samples.end(),
                  [](const ScanSample& u, const ScanSample& v) { return u.lam < v.lam; });

        for (size_t i = 0; i + 1 < samples.size(); ++i) {
            const ScanSample& s0 = samples[i];
            const ScanSample& s1 = samples[i + 1];
            const bool pole_crossing = s0.dx * s1.dx < 0.0;
            if (pole_crossing) {
                const double lam_q =
                    scanner.bisect([&](double t) { return scanner.dx_only(t); }, s0.lam, s1.lam,
                                   s0.dx);
                SpectralPoint at_base;
                if (scanner.accept_at_base_point(lam_q, at_base)) push_point(at_base);
                // Re-bracket f on both sides of the pole.
                const double gap = 1e-7 * std::max(1.0, std::abs(lam_q));
                const ScanSample left = scanner.eval(lam_q - gap);
                const ScanSample right = scanner.eval(lam_q + gap);
                if (s0.f_ok && left.f_ok && s0.f * left.f < 0.0) {
                    const double root = scanner.bisect(
                        [&](double t) { return scanner.f_only(t); }, s0.lam, left.lam, s0.f);
                    push_point(scanner.make_point(root));
                }
                if (right.f_ok && s1.f_ok && right.f * s1.f < 0.0) {
                    const double root = scanner.bisect(
                        [&](double t) { return scanner.f_only(t); }, right.lam, s1.lam, right.f);
                    push_point(scanner.make_point(root));
                }
                continue;
            }
            if (s0.f_ok && s1.f_ok && s0.f * s1.f < 0.0) {
                const double root = scanner.bisect([&](double t) { return scanner.f_only(t); },
                                                   s0.lam, s1.lam, s0.f);
                push_point(scanner.make_point(root));
            }
        }

        // |f| dips that never cross zero: report as unresolved candidates.
        for (size_t i = 1; i + 1 < samples.size(); ++i) {
            const double fm = std::abs(samples[i].f);
            if (!samples[i].f_ok || !samples[i - 1].f_ok || !samples[i + 1].f_ok) continue;
            if (fm < std::abs(samples[i - 1].f) && fm < std::abs(samples[i + 1].f) &&
                fm < 1e-10 && samples[i - 1].f * samples[i + 1].f > 0.0) {
                bool near_root = false;
                for (const auto& q : result.points)
                    if (std::abs(q.lambda - samples[i].lam) <=
                        1e-6 * std::max(1.0, std::abs(samples[i].lam)))
                        near_root = true;
                if (!near_root) result.unresolved.push_back(samples[i].lam);
            }
        }
    }

    std::sort(result.points.begin(), result.points.end(),
              [](const SpectralPoint& u, const SpectralPoint& v) {
                  return u.lambda.real() > v.lambda.real();
              });
    return result;
}

GridFunction eigenfunction(const SpectralPoint& point, const BeamParams& params,
                           std::shared_ptr<const QuadratureRule> rule) {
    const EigenBasis basis = EigenBasis::make(point.lambda, params);
    GridFunction u;
    u.rule = rule;
    u.values.reserve(rule->nodes.size());
    for (double x : rule->nodes) u.values.push_back((basis.y(x).transpose() * point.null_vector)(0));
    return u;
}

SpectralPoint polish_complex(const Mat4& g_gamma, cplx seed, const BeamParams& params) {
    auto resid = [&](cplx lam) { return char_svd(char_matrix(g_gamma, lam, params)).rel_resid; };
    cplx best_lam = seed;
    double best = resid(seed);
    double step = 1e-3 * std::max(1.0, std::abs(seed));
    const cplx dirs[4] = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    for (int it = 0; it < 200 && step > 1e-15 * std::max(1.0, std::abs(best_lam)); ++it) {
        bool improved = false;
        for (const cplx& d : dirs) {
            const cplx trial = best_lam + step * d;
            if (std::abs(trial) < 1e-12) continue;
            const double r = resid(trial);
            if (r < best) {
                best = r;
                best_lam = trial;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return characteristic_point(g_gamma, best_lam, params);
}

std::vector<QRootPair> spec_Q(const BeamParams& params, int count) {
    if (count < 1) throw Error("spec_Q: count must be >= 1");
    const double L = params.intrinsic_length();
    const double pi = std::acos(-1.0);
    const cplx dir = std::polar(1.0, pi / 4.0);

    auto f = [&](double s) {
        return x_matrix_zk(0.5 * L, (s / L) * dir).determinant().imag();
    };

    std::vector<double> roots_s;
    double s_lo = 0.25;
    double s_hi = 2.0 * pi * count + pi;
    const double step = pi / 50.0;
    double prev_s = s_lo;
    double prev_f = f(prev_s);
    while (static_cast<int>(roots_s.size()) < 2 * count) {
        for (double s = prev_s + step; s <= s_hi && static_cast<int>(roots_s.size()) < 2 * count;
             s += step) {
            const double fs = f(s);
            if (prev_f * fs < 0.0) {
                double lo = prev_s, hi = s, flo = prev_f;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (hi - lo <= 1e-14 * mid) break;
                    const double fm = f(mid);
                    if (fm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                roots_s.push_back(0.5 * (lo + hi));
            }
            prev_s = s;
            prev_f = fs;
        }
        if (static_cast<int>(roots_s.size()) < 2 * count) {
            if (s_hi > 2.0 * pi * (count + 16)) throw Error("spec_Q: root search exhausted");
            prev_s = s_hi;
            prev_f = f(prev_s);
            s_hi += 2.0 * pi;
        }
    }

    std::vector<QRootPair> pairs(count);
    for (int n = 0; n < count; ++n) {
        const double s_mu = roots_s[2 * n];
        const double s_nu = roots_s[2 * n + 1];
        pairs[n].mu = lambda_of_s(s_mu, params);
        pairs[n].nu = lambda_of_s(s_nu, params);
        pairs[n].mu_residual = x_margin(pairs[n].mu, params.l, params);
        pairs[n].nu_residual = x_margin(pairs[n].nu, params.l, params);
    }
    return pairs;
}

}  // namespace beamspec
