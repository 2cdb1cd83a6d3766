#include "semiclassic/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "semiclassic/numerics.hpp"

namespace semiclassic {

namespace detail {

struct ProfileKernel {
    PotentialModel potential;
    double x_i, x_f;            // canonical ascending endpoints
    double action;
    double mu_minus, mu_plus;   // approach rates at tau -> -inf / +inf
    double big_d, big_c;        // zero-mode amplitude constants
    bool closed_form;

    ProfileKernel(PotentialModel m, double xi, double xf, double s, double mm,
                  double mp, bool cf)
        : potential(m), x_i(xi), x_f(xf), action(s), mu_minus(mm), mu_plus(mp),
          big_d(0), big_c(0), closed_form(cf) {}
    virtual ~ProfileKernel() = default;

    virtual double x_at(double s) const = 0;  // s = tau - tau_c, ascending branch
    virtual double v_at(double s) const = 0;  // sqrt(2 V(x(s))) >= 0
};

namespace {

// x_c = sqrt(u), u = logistic(2 omega s): both tails evaluated without
// cancellation
struct ClosedFormKernel final : ProfileKernel {
    double omega;

    explicit ClosedFormKernel(double w)
        : ProfileKernel(triple_well(w), 0.0, 1.0, 0.25 * w, w, 2.0 * w, true),
          omega(w) {
        big_d = big_c = 2.0 * std::sqrt(w);
    }

    std::pair<double, double> u_pair(double s) const {  // (u, 1-u)
        if (s >= 0.0) {
            double e = std::exp(-2.0 * omega * s);
            return {1.0 / (1.0 + e), e / (1.0 + e)};
        }
        double t = std::exp(2.0 * omega * s);
        return {t / (1.0 + t), 1.0 / (1.0 + t)};
    }

    double x_at(double s) const override { return std::sqrt(u_pair(s).first); }

    double v_at(double s) const override {
        auto [u, um] = u_pair(s);
        return omega * std::sqrt(u) * um;
    }
};

struct NumericKernel final : ProfileKernel {
    double x_mid;
    double u_mid, v_mid;             // log distances of the anchor to each well
    double delta_cut = 1e-6;
    detail::Antiderivative left_anti, right_anti;  // prefix integrals of the remainders
    double left_total;               // int_a^{x_mid} R_left
    double q_left_cut, r_left_cut;   // linear tail data inside delta_cut of a
    double q_right_cut, r_right_cut; // same near b

    // remainder after peeling the exact log singularity off 1/sqrt(2V)
    static double remainder(const PotentialModel& m, double well, double mu,
                            double delta) {
        return 1.0 / m.sqrt_two_v_offset(well, delta) - 1.0 / (mu * std::fabs(delta));
    }

    static std::vector<double> uniform_knots(double lo, double hi, int panels) {
        std::vector<double> k(static_cast<std::size_t>(panels) + 1);
        for (int i = 0; i <= panels; ++i)
            k[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / panels;
        k.back() = hi;
        return k;
    }

    static detail::Antiderivative build_checked(const detail::Fn& f, double lo,
                                                double hi, double tol) {
        detail::Antiderivative candidate(f, uniform_knots(lo, hi, 16));
        for (int panels = 32; panels <= 512; panels *= 2) {
            detail::Antiderivative refined(f, uniform_knots(lo, hi, panels));
            double worst = 0.0;
            for (double q : {0.25, 0.5, 0.75, 1.0}) {
                double x = lo + q * (hi - lo);
                worst = std::max(worst, std::fabs(candidate(x) - refined(x)));
            }
            if (worst <= std::max(0.1 * tol, 1e-15) * (1.0 + std::fabs(refined(hi))))
                return refined;
            candidate = std::move(refined);
        }
        throw QuadratureFailure("endpoint-regularized quadrature did not settle");
    }

    NumericKernel(const PotentialModel& m, double a, double b, double anchor,
                  double mm, double mp, double act, double tol)
        : ProfileKernel(m, a, b, act, mm, mp, false),
          x_mid(anchor),
          u_mid(std::log(anchor - a)),
          v_mid(-std::log(b - anchor)),
          left_anti(build_checked(
              [m, a, mm](double x) { return remainder(m, a, mm, x - a); }, a,
              anchor, tol)),
          right_anti(build_checked(
              [m, b, mp](double x) { return remainder(m, b, mp, x - b); }, anchor,
              b, tol)) {
        left_total = left_anti(x_mid);
        q_left_cut = left_anti(a + delta_cut) - left_total;  // int_{x_mid}^{a+cut}
        r_left_cut = remainder(potential, a, mu_minus, delta_cut);
        q_right_cut = right_anti(b - delta_cut);             // int_{x_mid}^{b-cut}
        r_right_cut = remainder(potential, b, mu_plus, -delta_cut);
    }

    // int_{x_mid}^{x} R_left at x = a + delta
    double q_left(double delta) const {
        if (delta >= delta_cut) return left_anti(x_i + delta) - left_total;
        return q_left_cut - r_left_cut * (delta_cut - delta);
    }
    // int_{x_mid}^{x} R_right at x = b - delta
    double q_right(double delta) const {
        if (delta >= delta_cut) return right_anti(x_f - delta);
        return q_right_cut + r_right_cut * (delta_cut - delta);
    }
    double r_left(double delta) const {
        return delta >= delta_cut ? remainder(potential, x_i, mu_minus, delta)
                                  : r_left_cut;
    }
    double r_right(double delta) const {
        return delta >= delta_cut ? remainder(potential, x_f, mu_plus, -delta)
                                  : r_right_cut;
    }

    // tau(x) - tau_c = (u - u_mid)/mu_minus + q_left(e^u),  u = ln(x - a)
    double invert_left(double s) const {  // s <= 0, returns u
        double u = u_mid + mu_minus * s;
        for (int it = 0; it < 100; ++it) {
            u = std::min(u, u_mid);
            double delta = std::exp(u);
            double h = (u - u_mid) / mu_minus + q_left(delta) - s;
            double hp = 1.0 / mu_minus + r_left(delta) * delta;
            double du = h / hp;
            u -= du;
            if (std::fabs(du) <= 1e-14 * (1.0 + std::fabs(u))) return std::min(u, u_mid);
        }
        throw Nonconvergence("instanton inversion (left branch) stalled");
    }

    // tau(x) - tau_c = (v - v_mid)/mu_plus + q_right(e^{-v}),  v = -ln(b - x)
    double invert_right(double s) const {  // s >= 0, returns v
        double v = v_mid + mu_plus * s;
        for (int it = 0; it < 100; ++it) {
            v = std::max(v, v_mid);
            double delta = std::exp(-v);
            double g = (v - v_mid) / mu_plus + q_right(delta) - s;
            double gp = 1.0 / mu_plus + r_right(delta) * delta;
            double dv = g / gp;
            v -= dv;
            if (std::fabs(dv) <= 1e-14 * (1.0 + std::fabs(v))) return std::max(v, v_mid);
        }
        throw Nonconvergence("instanton inversion (right branch) stalled");
    }

    double x_at(double s) const override {
        if (s >= 0.0) return x_f - std::exp(-invert_right(s));
        return x_i + std::exp(invert_left(s));
    }

    double v_at(double s) const override {
        if (s >= 0.0)
            return potential.sqrt_two_v_offset(x_f, -std::exp(-invert_right(s)));
        return potential.sqrt_two_v_offset(x_i, std::exp(invert_left(s)));
    }
};

}  // namespace
}  // namespace detail

InstantonProfile::InstantonProfile(std::shared_ptr<const detail::ProfileKernel> kernel,
                                   double center, bool reversed, bool reflected)
    : kernel_(std::move(kernel)), center_(center), reversed_(reversed),
      reflected_(reflected) {}

double InstantonProfile::position(double tau) const {
    double s = tau - center_;
    double x = kernel_->x_at(reversed_ ? -s : s);
    return reflected_ ? -x : x;
}

double InstantonProfile::velocity(double tau) const {
    double s = tau - center_;
    double v = kernel_->v_at(reversed_ ? -s : s);
    double sign = (reversed_ ? -1.0 : 1.0) * (reflected_ ? -1.0 : 1.0);
    return sign * v;
}

std::pair<double, double> InstantonProfile::endpoints() const {
    std::pair<double, double> e{kernel_->x_i, kernel_->x_f};
    if (reversed_) std::swap(e.first, e.second);
    if (reflected_) e = {-e.first, -e.second};
    return e;
}

double InstantonProfile::action() const { return kernel_->action; }

std::pair<double, double> InstantonProfile::decay_rates() const {
    return reversed_ ? std::pair{kernel_->mu_plus, kernel_->mu_minus}
                     : std::pair{kernel_->mu_minus, kernel_->mu_plus};
}

std::pair<double, double> InstantonProfile::amplitude_constants() const {
    return reversed_ ? std::pair{kernel_->big_c, kernel_->big_d}
                     : std::pair{kernel_->big_d, kernel_->big_c};
}

const PotentialModel& InstantonProfile::model() const { return kernel_->potential; }

InstantonProfile closed_form_instanton(double omega, double tau_c) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    return InstantonProfile(std::make_shared<detail::ClosedFormKernel>(omega), tau_c,
                            false, false);
}

namespace {

// plateau mean of values(sample) over [lo, hi]; flat to `flat_tol` or throws
double plateau_fit(const std::function<double(double)>& values, double lo, double hi,
                   double flat_tol, const char* side) {
    constexpr int kSamples = 20;
    double sum = 0.0, mn = 0.0, mx = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        double p = values(lo + (hi - lo) * i / (kSamples - 1));
        if (i == 0) mn = mx = p;
        mn = std::min(mn, p);
        mx = std::max(mx, p);
        sum += p;
    }
    double mean = sum / kSamples;
    if (!(std::fabs(mean) > 0.0) || (mx - mn) > flat_tol * std::fabs(mean))
        throw FitUnstable(std::string("asymptotic plateau not flat on the ") + side +
                          " side: relative variation " +
                          std::to_string((mx - mn) / std::fabs(mean)));
    return mean;
}

}  // namespace

InstantonProfile numeric_instanton(const PotentialModel& model, double from_well,
                                   double to_well, double tau_c, double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    auto wells = model.wells();
    auto find = [&](double loc) -> int {
        for (std::size_t i = 0; i < wells.size(); ++i)
            if (std::fabs(wells[i].location - loc) <= 1e-9) return static_cast<int>(i);
        throw DomainError("requested endpoint is not a minimum of the potential");
    };
    int ia = find(from_well), ib = find(to_well);
    if (ia == ib) throw DomainError("instanton endpoints must differ");
    if (std::abs(ia - ib) != 1)
        throw NonAdjacentWells("another minimum lies strictly between the endpoints");

    bool descending = from_well > to_well;
    const WellInfo& wa = wells[std::min(ia, ib)];
    const WellInfo& wb = wells[std::max(ia, ib)];
    double a = wa.location, b = wb.location;

    double anchor;
    if (a == 0.0)
        anchor = b / std::sqrt(2.0);
    else if (b == 0.0)
        anchor = a / std::sqrt(2.0);
    else
        anchor = 0.5 * (a + b);

    double action = detail::integrate_adaptive(
        [&model](double x) { return model.sqrt_two_v(x); }, a, b,
        std::min(1e-12, tolerance));

    auto kernel = std::make_shared<detail::NumericKernel>(
        model, a, b, anchor, wa.frequency, wb.frequency, action, tolerance);

    // amplitude constants from wide plateaus (correction terms there are below
    // 1e-8 for any polynomial well); the public asymptotic_constants() op
    // re-fits on the narrower standard window with its own stability guard
    double root_s = std::sqrt(action);
    auto xo_left = [&](double s) {
        return kernel->v_at(s) / root_s * std::exp(-kernel->mu_minus * s);
    };
    auto xo_right = [&](double s) {
        return kernel->v_at(s) / root_s * std::exp(kernel->mu_plus * s);
    };
    kernel->big_d = plateau_fit(xo_left, -30.0 / kernel->mu_minus,
                                -18.0 / kernel->mu_minus, 1e-5, "left");
    kernel->big_c = plateau_fit(xo_right, 18.0 / kernel->mu_plus,
                                30.0 / kernel->mu_plus, 1e-5, "right");

    return InstantonProfile(kernel, tau_c, descending, false);
}

InstantonProfile time_reverse(const InstantonProfile& p) {
    return InstantonProfile(p.kernel_, p.center_, !p.reversed_, p.reflected_);
}

InstantonProfile space_reflect(const InstantonProfile& p) {
    return InstantonProfile(p.kernel_, p.center_, p.reversed_, !p.reflected_);
}

InstantonProfile translate(const InstantonProfile& p, double dtau) {
    return InstantonProfile(p.kernel_, p.center_ + dtau, p.reversed_, p.reflected_);
}

ZeroMode zero_mode(const InstantonProfile& p) {
    double root_s = std::sqrt(p.action());
    InstantonProfile copy = p;
    auto values = [copy, root_s](double tau) {
        return std::fabs(copy.velocity(tau)) / root_s;
    };
    auto [mu_m, mu_p] = p.decay_rates();
    double half = 40.0 / std::min(mu_m, mu_p);
    double tc = p.center();
    double norm = detail::integrate_adaptive(
        [&values](double t) {
            double v = values(t);
            return v * v;
        },
        tc - half, tc + half, 1e-11);
    return ZeroMode{values, norm};
}

double zero_mode_residual_sup(const InstantonProfile& p, double h, double half_width) {
    ZeroMode zm = zero_mode(p);
    const PotentialModel& m = p.model();
    double tc = p.center();
    long n = std::lround(2.0 * half_width / h);
    std::vector<double> xo(static_cast<std::size_t>(n) + 1);
    for (long j = 0; j <= n; ++j)
        xo[static_cast<std::size_t>(j)] = zm.values(tc - half_width + h * j);
    double worst = 0.0;
    for (long j = 1; j < n; ++j) {
        auto ju = static_cast<std::size_t>(j);
        double tau = tc - half_width + h * j;
        double second = (xo[ju + 1] - 2.0 * xo[ju] + xo[ju - 1]) / (h * h);
        double w = m.second_derivative(p.position(tau));
        worst = std::max(worst, std::fabs(-second + w * xo[ju]));
    }
    return worst;
}

std::pair<double, double> asymptotic_constants(const InstantonProfile& p) {
    if (p.kernel_->closed_form) return p.amplitude_constants();

    double w = p.model().omega;
    double tc = p.center();
    double root_s = std::sqrt(p.action());
    auto [mu_m, mu_p] = p.decay_rates();
    InstantonProfile copy = p;
    double big_d = plateau_fit(
        [&](double tau) {
            return std::fabs(copy.velocity(tau)) / root_s *
                   std::exp(-mu_m * (tau - tc));
        },
        tc - 15.0 / w, tc - 8.0 / w, 1e-6, "left");
    double big_c = plateau_fit(
        [&](double tau) {
            return std::fabs(copy.velocity(tau)) / root_s *
                   std::exp(mu_p * (tau - tc));
        },
        tc + 8.0 / w, tc + 15.0 / w, 1e-6, "right");
    return {big_d, big_c};
}

}  // namespace semiclassic
