#include "semiclassic/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

namespace semiclassic::detail {

namespace {

constexpr std::array<double, 15> kGaussNodes = {
    -0.98799251802048542849, -0.93727339240070590431, -0.84820658341042721620,
    -0.72441773136017004742, -0.57097217260853884754, -0.39415134707756336990,
    -0.20119409399743452230, 0.0,                     0.20119409399743452230,
    0.39415134707756336990,  0.57097217260853884754,  0.72441773136017004742,
    0.84820658341042721620,  0.93727339240070590431,  0.98799251802048542849};

constexpr std::array<double, 15> kGaussWeights = {
    0.030753241996117268355, 0.070366047488108124709, 0.10715922046717193501,
    0.13957067792615431445,  0.16626920581699393355,  0.18616100001556221103,
    0.19843148532711157646,  0.20257824192556127288,  0.19843148532711157646,
    0.18616100001556221103,  0.16626920581699393355,  0.13957067792615431445,
    0.10715922046717193501,  0.070366047488108124709, 0.030753241996117268355};

}  // namespace

double gauss15(const Fn& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 15; ++i) acc += kGaussWeights[i] * f(mid + half * kGaussNodes[i]);
    return acc * half;
}

Antiderivative::Antiderivative(Fn f, std::vector<double> knots)
    : f_(std::move(f)), knots_(std::move(knots)) {
    if (knots_.size() < 2) throw DomainError("antiderivative needs at least one panel");
    prefix_.resize(knots_.size());
    prefix_[0] = 0.0;
    for (std::size_t i = 1; i < knots_.size(); ++i)
        prefix_[i] = prefix_[i - 1] + gauss15(f_, knots_[i - 1], knots_[i]);
}

double Antiderivative::operator()(double x) const {
    if (x < knots_.front() - 1e-12 || x > knots_.back() + 1e-12)
        throw QuadratureFailure("antiderivative evaluated outside its span");
    x = std::clamp(x, knots_.front(), knots_.back());
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t i = std::min<std::size_t>(knots_.size() - 1,
                                          static_cast<std::size_t>(it - knots_.begin()));
    // i indexes the first knot >= x (at least 1)
    return prefix_[i - 1] + gauss15(f_, knots_[i - 1], x);
}

namespace {

double adaptive_step(const Fn& f, double a, double b, double whole, double tol,
                     int depth, int max_depth) {
    double mid = 0.5 * (a + b);
    double left = gauss15(f, a, mid), right = gauss15(f, mid, b);
    double refined = left + right;
    if (std::fabs(refined - whole) <= tol || depth >= max_depth) {
        if (depth >= max_depth && std::fabs(refined - whole) > tol)
            throw QuadratureFailure("adaptive quadrature failed to converge");
        return refined;
    }
    return adaptive_step(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_step(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const Fn& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    double whole = gauss15(f, a, b);
    double scale = std::max(std::fabs(whole), 1e-300);
    return adaptive_step(f, a, b, whole, tol * scale, 0, max_depth);
}

std::vector<double> cumulative_integral(const std::vector<double>& y, double h) {
    // composite Simpson on even prefixes; odd prefixes add the integral of the
    // local quadratic through the last three samples
    std::size_t n = y.size();
    if (n < 3) throw DomainError("cumulative integral needs at least 3 samples");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 2; i < n; i += 2)
        out[i] = out[i - 2] + h / 3.0 * (y[i - 2] + 4.0 * y[i - 1] + y[i]);
    for (std::size_t i = 1; i < n; i += 2) {
        if (i == 1)
            out[1] = h / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2]);
        else
            out[i] = out[i - 1] + h / 12.0 * (-y[i - 2] + 8.0 * y[i - 1] + 5.0 * y[i]);
    }
    return out;
}

IvpResult zero_energy_ivp(const Fn& W, double big_t, double rel_tol) {
    namespace od = boost::numeric::odeint;
    using State = std::array<double, 2>;

    auto rhs = [&W](const State& y, State& dy, double t) {
        dy[0] = y[1];
        dy[1] = W(t) * y[0];
    };

    auto stepper = od::make_controlled(1e-30, rel_tol, od::runge_kutta_dopri5<State>());
    State y{0.0, 1.0};
    double t = -0.5 * big_t;
    double dt = 1e-3 * big_t;
    double log_scale = 0.0;
    const double t_end = 0.5 * big_t;
    long iterations = 0;

    while (t < t_end) {
        if (t + dt > t_end) dt = t_end - t;
        if (++iterations > 50'000'000)
            throw ToleranceNotMet("zero-energy IVP exceeded the step budget");
        auto result = stepper.try_step(rhs, y, t, dt);
        if (result == od::fail) {
            if (dt < 1e-16 * big_t)
                throw ToleranceNotMet("zero-energy IVP step size underflow");
            continue;
        }
        double mag = std::max(std::fabs(y[0]), std::fabs(y[1]));
        if (mag > 1e100) {
            y[0] /= mag;
            y[1] /= mag;
            log_scale += std::log(mag);
            // rescaling the state invalidates the FSAL derivative cache
            stepper.reset();
        }
    }
    return IvpResult{ScaledValue{y[0], log_scale}, ScaledValue{y[1], log_scale}};
}

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& sub) {
    if (sub.size() + 1 != diag.size())
        throw DomainError("tridiagonal dimensions mismatch");
    Eigen::Map<const Eigen::VectorXd> d(diag.data(), static_cast<long>(diag.size()));
    Eigen::Map<const Eigen::VectorXd> s(sub.data(), static_cast<long>(sub.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw Nonconvergence("tridiagonal eigenvalue iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

// solve (A - shift I) x = b for symmetric tridiagonal A, partial pivoting
// (gaussian elimination with the extra second superdiagonal band)
std::vector<double> shifted_tridiag_solve(const std::vector<double>& diag,
                                          const std::vector<double>& sub,
                                          double shift, std::vector<double> b) {
    std::size_t n = diag.size();
    std::vector<double> d(n), e(n, 0.0), f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = sub[i];
    std::vector<double> below(sub);  // subdiagonal entries a(i+1, i)

    for (std::size_t i = 0; i + 1 < n; ++i) {
        double pivot = d[i], other = below[i];
        if (std::fabs(other) > std::fabs(pivot)) {
            std::swap(d[i], below[i]);
            std::swap(e[i], d[i + 1]);
            std::swap(f[i], e[i + 1]);
            std::swap(b[i], b[i + 1]);
            pivot = d[i];
        }
        if (pivot == 0.0) pivot = d[i] = 1e-300;
        double m = below[i] / pivot;
        d[i + 1] -= m * e[i];
        e[i + 1] -= m * f[i];
        b[i + 1] -= m * b[i];
    }
    if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
    std::vector<double> x(n);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n >= 2) x[n - 2] = (b[n - 2] - e[n - 2] * x[n - 1]) / (d[n - 2] == 0.0 ? 1e-300 : d[n - 2]);
    for (std::size_t ii = n; ii-- > 2;) {
        std::size_t i = ii - 2;
        x[i] = (b[i] - e[i] * x[i + 1] - f[i] * x[i + 2]) / (d[i] == 0.0 ? 1e-300 : d[i]);
    }
    return x;
}

}  // namespace

std::vector<double> tridiag_eigenvector(
    const std::vector<double>& diag, const std::vector<double>& sub,
    double eigenvalue, const std::vector<std::vector<double>>& previous) {
    std::size_t n = diag.size();
    std::vector<double> v(n);
    // deterministic, sign-fixed start vector
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i + 1));

    double norm = 0.0;
    for (int iter = 0; iter < 6; ++iter) {
        for (const auto& p : previous) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += v[i] * p[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * p[i];
        }
        v = shifted_tridiag_solve(diag, sub, eigenvalue, std::move(v));
        norm = 0.0;
        for (double c : v) norm += c * c;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw Nonconvergence("inverse iteration produced a non-finite vector");
        for (double& c : v) c /= norm;
        if (iter >= 1 && norm > 1e12) break;  // already at machine-precision residual
    }
    // fix overall sign: make the largest-magnitude component positive
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& c : v) c = -c;
    return v;
}

std::pair<double, double> two_rate_fit(const std::vector<double>& y, double step) {
    std::size_t p = y.size();
    if (p < 4) throw DomainError("two-rate fit needs at least 4 samples");
    // Gauge the samples by a geometric factor so the recurrence roots are
    // O(1): strongly decaying data otherwise leaves one Hankel column many
    // orders below the other and the rank test cannot see it. The roots
    // transform as z -> z/g, shifting both rates by ln(g)/step.
    double lg = 0.0;
    if (y[0] != 0.0 && y[p - 1] != 0.0)
        lg = (std::log(std::fabs(y[p - 1])) - std::log(std::fabs(y[0]))) /
             static_cast<double>(p - 1);
    std::vector<double> w(p);
    for (std::size_t i = 0; i < p; ++i)
        w[i] = y[i] * std::exp(-lg * static_cast<double>(i));
    // linear recurrence w[i+2] = s w[i+1] - r w[i], rows scaled to unit max
    Eigen::MatrixXd A(static_cast<long>(p - 2), 2);
    Eigen::VectorXd rhs(static_cast<long>(p - 2));
    for (std::size_t i = 0; i + 2 < p; ++i) {
        double scale = std::max({std::fabs(w[i]), std::fabs(w[i + 1]), std::fabs(w[i + 2])});
        if (scale == 0.0) scale = 1.0;
        A(static_cast<long>(i), 0) = w[i + 1] / scale;
        A(static_cast<long>(i), 1) = -w[i] / scale;
        rhs(static_cast<long>(i)) = w[i + 2] / scale;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-13);
    if (qr.rank() < 2)
        throw FitDegenerate("samples carry a single decay rate (rank-deficient recurrence)");
    Eigen::Vector2d sr = qr.solve(rhs);
    double s = sr(0), r = sr(1);

    double disc = s * s - 4.0 * r;
    if (disc <= 1e-12 * s * s)
        throw FitDegenerate("decay rates indistinguishable on this grid");
    double root = std::sqrt(disc);
    double z1 = 0.5 * (s + root);           // slower decay
    double z2 = (z1 != 0.0) ? r / z1 : 0.0; // stable smaller root via product
    if (!(z1 > 0.0) || !(z2 > 0.0))
        throw FitDegenerate("recurrence roots not positive; input is not a two-exponential decay");
    return {-(std::log(z1) + lg) / step, -(std::log(z2) + lg) / step};
}

std::vector<double> least_squares_fit(const std::vector<double>& x,
                                      const std::vector<double>& y,
                                      const std::vector<Fn>& basis) {
    if (x.size() != y.size() || x.size() < basis.size())
        throw DomainError("least squares fit is underdetermined");
    Eigen::MatrixXd A(static_cast<long>(x.size()), static_cast<long>(basis.size()));
    Eigen::VectorXd b(static_cast<long>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            A(static_cast<long>(i), static_cast<long>(j)) = basis[j](x[i]);
        b(static_cast<long>(i)) = y[i];
    }
    Eigen::VectorXd c = A.householderQr().solve(b);
    return std::vector<double>(c.data(), c.data() + c.size());
}

}  // namespace semiclassic::detail
