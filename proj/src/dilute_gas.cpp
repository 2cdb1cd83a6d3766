#include "semiclassic/dilute_gas.hpp"

#include <cmath>
#include <limits>

#include "semiclassic/numerics.hpp"

namespace semiclassic {

double instanton_density(double omega) {
    if (!(omega > 0.0)) throw DomainError("omega must be positive");
    double action = 0.25 * omega;
    return std::sqrt(8.0 / (3.0 * M_PI)) * std::sqrt(action) * std::exp(-action);
}

bool dilute_regime(double omega) {
    return omega >= 10.0 * instanton_density(omega);
}

namespace {

void check_well_index(int w) {
    if (w < -1 || w > 1) throw DomainError("well index must be -1, 0 or +1");
}

std::uint64_t walks(int from, int to, int k) {
    if (k == 0) return from == to ? 1 : 0;
    std::uint64_t total = 0;
    if (from < 1) total += walks(from + 1, to, k - 1);
    if (from > -1) total += walks(from - 1, to, k - 1);
    return total;
}

}  // namespace

GasConfigurationCount count_configurations(int k, int from_well, int to_well) {
    if (k < 0) throw DomainError("k must be nonnegative");
    check_well_index(from_well);
    check_well_index(to_well);
    if (k > 30)
        throw EnumerationTooLarge("exhaustive enumeration capped at k = 30; "
                                  "use the matrix-power count instead");
    return GasConfigurationCount{k, {from_well, to_well}, walks(from_well, to_well, k)};
}

std::uint64_t count_configurations_matrix(int k, int from_well, int to_well) {
    if (k < 0) throw DomainError("k must be nonnegative");
    check_well_index(from_well);
    check_well_index(to_well);
    using Mat = std::array<std::array<std::uint64_t, 3>, 3>;
    auto mul = [](const Mat& a, const Mat& b) {
        Mat c{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) c[i][j] += a[i][l] * b[l][j];
        return c;
    };
    Mat result{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    Mat base{{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}};  // adjacency of -1 - 0 - +1
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
    }
    return result[static_cast<std::size_t>(from_well + 1)]
                 [static_cast<std::size_t>(to_well + 1)];
}

namespace {

double odd_series(double z, int terms) {
    double term = z, sum = 0.0;
    for (int j = 0; j < terms; ++j) {
        sum += term;
        term *= z * z / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
    }
    return sum;
}

}  // namespace

ScaledValue transition_amplitude(double omega, double big_t, int terms) {
    if (!(omega > 0.0) || !(big_t > 0.0)) throw DomainError("omega and T must be positive");
    double z = omega * big_t * instanton_density(omega);
    double prefactor = std::sqrt(3.0 * omega / (4.0 * M_PI));
    if (terms < 0 && z > 700.0)  // sinh would overflow; peel e^z off
        return ScaledValue{prefactor * 0.5 * (1.0 - std::exp(-2.0 * z)),
                           z - 0.75 * omega * big_t};
    double s = terms < 0 ? std::sinh(z) : odd_series(z, terms);
    return ScaledValue{prefactor * s, -0.75 * omega * big_t};
}

ScaledValue return_amplitude(double omega, double big_t) {
    if (!(omega > 0.0) || !(big_t > 0.0)) throw DomainError("omega and T must be positive");
    // per-species expansion parameter: the density d of Eq-39 type already
    // carries the sqrt(2) of the combinatorial factor, so divide it back out
    // and let the enumerated counts supply the weights
    double zeta = omega * big_t * instanton_density(omega) / std::sqrt(2.0);
    double sum = 0.0, power = 1.0;  // zeta^k / k!
    bool converged = false;
    for (int k = 0; k <= 120; k += 2) {
        // enumerate outright while cheap, then the matrix power of the same walks
        std::uint64_t f = k <= 16 ? count_configurations(k, 0, 0).count
                                  : count_configurations_matrix(k, 0, 0);
        double term = static_cast<double>(f) * power;
        sum += term;
        if (k > 0 && term < 1e-17 * sum) {
            converged = true;
            break;
        }
        power *= zeta * zeta / ((k + 1.0) * (k + 2.0));
    }
    if (!converged)
        throw EnumerationTooLarge("return amplitude series needs k > 120 at this omega T");
    double prefactor = std::sqrt(3.0 * omega / (4.0 * M_PI));
    return ScaledValue{prefactor * sum, -0.75 * omega * big_t};
}

double translational_volume(int k, double omega, double big_t) {
    if (k < 0) throw DomainError("k must be nonnegative");
    if (!(omega > 0.0) || !(big_t > 0.0)) throw DomainError("omega and T must be positive");
    double v = 1.0;
    for (int j = 1; j <= k; ++j) v *= omega * big_t / j;
    return v;
}

namespace {

double ordered_volume(int k, double omega, double upper) {
    if (k == 0) return 1.0;
    return detail::integrate_adaptive(
        [k, omega](double t) { return omega * ordered_volume(k - 1, omega, t); }, 0.0,
        upper, 1e-7);
}

}  // namespace

double translational_volume_quadrature(int k, double omega, double big_t) {
    if (k < 0 || k > 4)
        throw DomainError("nested quadrature verification limited to k <= 4");
    if (!(omega > 0.0) || !(big_t > 0.0)) throw DomainError("omega and T must be positive");
    return ordered_volume(k, omega, big_t);
}

DiluteGasSpectrum predicted_spectrum(double omega) {
    double d = instanton_density(omega);
    double reference = 0.75 * omega;
    double s = omega * d;
    return DiluteGasSpectrum{omega,
                             d,
                             reference,
                             s,
                             {reference - s, reference, reference + s},
                             dilute_regime(omega)};
}

std::pair<double, double> extract_energies(
    const std::function<double(double)>& amplitude, const std::vector<double>& t_grid) {
    std::size_t n = t_grid.size();
    if (n < 4) throw DomainError("need at least 4 grid points");
    if (!(t_grid[0] > 0.0)) throw DomainError("T grid must be positive");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(t_grid[i + 1] > t_grid[i]))
            throw DomainError("T grid must be strictly increasing");

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = amplitude(t_grid[i]);
        if (y[i] == 0.0 || !std::isfinite(y[i]))
            throw FitDegenerate("amplitude vanishes or overflows on the grid");
    }
    double sign = y[n - 1] > 0.0 ? 1.0 : -1.0;

    // Dominant rate by log-linear regression anchored on the tail points
    // (least contaminated by the fast mode; fitting all points would smear
    // the early-time correction signal into the slope). The faster rate
    // comes from the correction residual r_i = 1 - y_i / (A e^{-E_low t_i})
    // = e^{-dE t_i}, unit prefactor for the contracted difference form.
    // Each pass divides the current fast-mode factor out of the tail
    // samples before refitting; a few passes reach a fixed point.
    std::size_t tail = std::max<std::size_t>(2, n / 2);
    double de = std::numeric_limits<double>::infinity();
    double e_low = 0.0;
    for (int pass = 0; pass < 60; ++pass) {
        double sw = 0.0, st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
        for (std::size_t i = n - tail; i < n; ++i) {
            double corrected = sign * y[i];
            double fast = std::exp(-de * t_grid[i]);
            if (fast < 1.0) corrected /= 1.0 - fast;
            if (!(corrected > 0.0))
                throw FitDegenerate("samples are not a two-exponential decay");
            double v = std::log(corrected);
            sw += 1.0; st += t_grid[i]; sv += v;
            stt += t_grid[i] * t_grid[i]; stv += t_grid[i] * v;
        }
        double det = sw * stt - st * st;
        e_low = -(sw * stv - st * sv) / det;
        double log_a = (stt * sv - st * stv) / det;

        // residuals carry the fast mode; weight by (r t)^2, the inverse
        // variance of the per-point rate estimate -ln(r)/t
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 1.0 - sign * y[i] / std::exp(log_a - e_low * t_grid[i]);
            if (!(r > 1e-13)) continue;
            double w = r * r * t_grid[i] * t_grid[i];
            num += w * (-std::log(r) / t_grid[i]);
            den += w;
        }
        if (den == 0.0)
            throw FitDegenerate("decay rates indistinguishable on this grid");
        double next = num / den;
        if (!(next > 0.0))
            throw FitDegenerate("samples are not a two-exponential decay");
        bool settled = std::isfinite(de) && std::fabs(next - de) <= 1e-14 * next;
        de = next;
        if (settled) break;
    }
    return {e_low, e_low + de};
}

}  // namespace semiclassic
