#include "gorenstein/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gorenstein {

SymmetricMatrixF::SymmetricMatrixF(int dim) : dim_(dim) {
    if (dim < 0 || dim > 512) throw std::invalid_argument("dimension out of range (cap 512)");
    u_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim + 1) / 2, 0.0);
}

double SymmetricMatrixF::max_abs() const {
    double mx = 0.0;
    for (double v : u_) mx = std::max(mx, std::abs(v));
    return mx;
}

std::vector<double> SymmetricMatrixF::apply(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("dimension mismatch");
    std::vector<double> y(static_cast<std::size_t>(dim_), 0.0);
    for (int i = 0; i < dim_; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dim_; ++j) acc += at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

SymmetricMatrixF SymmetricMatrixF::from_rational(const RationalMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("not square");
    SymmetricMatrixF s(a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j) {
            if (a.at(i, j) != a.at(j, i)) throw std::invalid_argument("not symmetric");
            s.set(i, j, rat_to_double(a.at(i, j)));
        }
    return s;
}

double EigenDecomposition::max_reconstruction_error(const SymmetricMatrixF& a) const {
    const int n = a.dim();
    double err = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += eigenvalues[static_cast<std::size_t>(k)] *
                       eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                       eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            err = std::max(err, std::abs(acc - a.at(i, j)));
        }
    return err;
}

double EigenDecomposition::max_orthonormality_error() const {
    const std::size_t n = eigenvectors.size();
    double err = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += eigenvectors[a][i] * eigenvectors[b][i];
            err = std::max(err, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    return err;
}

EigenDecomposition eigh(const SymmetricMatrixF& s) {
    const int n = s.dim();
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = s.at(i, j);
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite entry");
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
        }
    std::vector<std::vector<double>> v(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;

    auto off_norm = [&]() {
        double acc = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double x = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                acc += x * x;
            }
        return std::sqrt(acc);
    };

    const double scale = std::max(1.0, s.max_abs());
    const double target = 1e-14 * scale * n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_norm() <= target) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                if (std::abs(apq) <= 1e-300) continue;
                const double app = a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)];
                const double aqq = a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const double tau = sn / (1.0 + c);
                a[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = app - t * apq;
                a[static_cast<std::size_t>(q)][static_cast<std::size_t>(q)] = aqq + t * apq;
                a[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = 0.0;
                a[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)] = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double& arp = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
                        double& arq = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
                        const double xp = arp, xq = arq;
                        arp = xp - sn * (xq + tau * xp);
                        arq = xq + sn * (xp - tau * xq);
                        a[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] = arp;
                        a[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)] = arq;
                    }
                    double& vrp = v[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)];
                    double& vrq = v[static_cast<std::size_t>(r)][static_cast<std::size_t>(q)];
                    const double yp = vrp, yq = vrq;
                    vrp = yp - sn * (yq + tau * yp);
                    vrq = yq + sn * (yp - tau * yq);
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return a[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)] <
               a[static_cast<std::size_t>(y)][static_cast<std::size_t>(y)];
    });

    EigenDecomposition dec;
    dec.eigenvalues.resize(static_cast<std::size_t>(n));
    dec.eigenvectors.assign(static_cast<std::size_t>(n),
                            std::vector<double>(static_cast<std::size_t>(n)));
    for (int k = 0; k < n; ++k) {
        const int src = order[static_cast<std::size_t>(k)];
        dec.eigenvalues[static_cast<std::size_t>(k)] =
            a[static_cast<std::size_t>(src)][static_cast<std::size_t>(src)];
        for (int i = 0; i < n; ++i)
            dec.eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] =
                v[static_cast<std::size_t>(i)][static_cast<std::size_t>(src)];
    }
    return dec;
}

PsdReport psd_check(const SymmetricMatrixF& a, double tol) {
    if (tol <= 0) throw std::invalid_argument("tol must be positive");
    PsdReport rep{};
    if (a.dim() == 0) {
        rep.verdict = PsdVerdict::PD;
        rep.min_eigenvalue = 0.0;
        rep.numeric_rank = 0;
        rep.scale = 1.0;
        return rep;
    }
    const EigenDecomposition dec = eigh(a);
    double abs_max = 0.0;
    for (double l : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(l));
    const double s = std::max(1.0, abs_max);
    const double lmin = dec.eigenvalues.front();
    rep.min_eigenvalue = lmin;
    rep.scale = s;
    rep.numeric_rank = 0;
    for (double l : dec.eigenvalues)
        if (l > tol * s) ++rep.numeric_rank;
    if (lmin > tol * s)
        rep.verdict = PsdVerdict::PD;
    else if (lmin >= -tol * s)
        rep.verdict = PsdVerdict::PSD;
    else
        rep.verdict = PsdVerdict::INDEFINITE;
    return rep;
}

PinvResult pinv_apply(const SymmetricMatrixF& a, const std::vector<double>& b, double tol) {
    if (static_cast<int>(b.size()) != a.dim()) throw std::invalid_argument("dimension mismatch");
    const EigenDecomposition dec = eigh(a);
    double abs_max = 0.0;
    for (double l : dec.eigenvalues) abs_max = std::max(abs_max, std::abs(l));
    const double s = std::max(1.0, abs_max);

    const int n = a.dim();
    PinvResult res;
    res.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        const double l = dec.eigenvalues[static_cast<std::size_t>(k)];
        if (l <= tol * s) continue;
        double dot = 0.0;
        for (int i = 0; i < n; ++i)
            dot += dec.eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
                   b[static_cast<std::size_t>(i)];
        const double coef = dot / l;
        for (int i = 0; i < n; ++i)
            res.x[static_cast<std::size_t>(i)] +=
                coef * dec.eigenvectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
    const std::vector<double> ax = a.apply(res.x);
    double rnorm = 0.0, bnorm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = ax[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
        rnorm += d * d;
        bnorm += b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    }
    res.residual = std::sqrt(rnorm);
    res.in_range = res.residual <= tol * std::sqrt(bnorm) || bnorm == 0.0;
    return res;
}

std::vector<double> solve_lu(std::vector<std::vector<double>> a, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)]))
                piv = i;
        if (a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(k)] == 0.0)
            throw std::invalid_argument("singular system");
        std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(piv)]);
        std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
        for (int i = k + 1; i < n; ++i) {
            const double f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] /
                             a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            if (f == 0.0) continue;
            for (int j = k; j < n; ++j)
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] -= f * b[static_cast<std::size_t>(k)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double acc = b[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            acc -= a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] =
            acc / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
    }
    return x;
}

std::vector<std::vector<double>> cholesky(const SymmetricMatrixF& a, double eps) {
    const int n = a.dim();
    const double scale = std::max(1.0, a.max_abs());
    std::vector<std::vector<double>> l(static_cast<std::size_t>(n),
                                       std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int j = 0; j < n; ++j) {
        double d = a.at(j, j);
        for (int k = 0; k < j; ++k)
            d -= l[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] *
                 l[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        if (d < eps * scale) throw std::invalid_argument("matrix not positive definite");
        const double dj = std::sqrt(d);
        l[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = dj;
        for (int i = j + 1; i < n; ++i) {
            double acc = a.at(i, j);
            for (int k = 0; k < j; ++k)
                acc -= l[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                       l[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
            l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc / dj;
        }
    }
    return l;
}

}  // namespace gorenstein
