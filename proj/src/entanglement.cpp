#include "mesoent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>

#ifdef MESOENT_HAVE_OPENMP
#include <omp.h>
#endif

namespace mesoent {

namespace {

const Eigen::Matrix2d kJ = (Eigen::Matrix2d() << 0.0, 1.0, -1.0, 0.0).finished();

CurveParams params_of(const BathParams& bath, double k) {
    return {bath.temperature(), bath.omega(), bath.lambda(), k};
}

void check_grid(std::span<const double> t_grid) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0) {
            throw ValidityError("time grid entries must be finite and non-negative");
        }
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
            throw ValidityError("time grid must be strictly increasing");
        }
    }
}

double invariant_drift(const EntanglementReport& a, const EntanglementReport& b) {
    const double scale = std::max({std::abs(b.i1), std::abs(b.i2), std::numeric_limits<double>::min()});
    const double d = std::max({std::abs(a.i1 - b.i1), std::abs(a.i2 - b.i2), std::abs(a.i3 - b.i3),
                               std::abs(a.i4 - b.i4)});
    return d / scale;
}

BoundaryRow boundary_row(double k, double lambda, double omega) {
    BoundaryRow row{k, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                    std::numeric_limits<double>::quiet_NaN(), true, {}};
    try {
        const auto tc = critical_temperature(k, lambda, omega);
        row.t_c = tc.bisection;
        row.margin = tc.margin;
        row.closed_form = tc.closed_form;
    } catch (const Error& e) {
        row.ok = false;
        row.message = e.what();
    }
    return row;
}

}  // namespace

Invariants invariants(const TwoModeCovariance& cov) {
    const Eigen::Matrix2d a = cov.sigma1();
    const Eigen::Matrix2d b = cov.sigma2();
    const Eigen::Matrix2d c = cov.sigmac();
    Invariants inv;
    inv.i1 = a.determinant();
    inv.i2 = b.determinant();
    inv.i3 = c.determinant();
    inv.i4 = (a * kJ * c * kJ * b * kJ * c.transpose() * kJ).trace();
    return inv;
}

Separability separability(const TwoModeCovariance& cov) {
    const auto inv = invariants(cov);
    const double q = 0.25 - std::abs(inv.i3);
    const double s = inv.i1 * inv.i2 + q * q - inv.i4 - 0.25 * (inv.i1 + inv.i2);
    return {s, s >= 0.0};
}

EntanglementReport log_negativity(const TwoModeCovariance& cov) {
    const auto inv = invariants(cov);
    const auto sep = separability(cov);
    EntanglementReport r;
    r.i1 = inv.i1;
    r.i2 = inv.i2;
    r.i3 = inv.i3;
    r.i4 = inv.i4;
    r.s = sep.score;
    r.separable = sep.separable;

    const double half = 0.5 * (inv.i1 + inv.i2) - inv.i3;
    double disc = half * half - (inv.i1 * inv.i2 + inv.i3 * inv.i3 - inv.i4);
    const double m2 = std::max(1.0, cov.matrix().cwiseAbs2().maxCoeff());
    if (disc < 0.0) {
        if (disc < -kTol.sqrt_fail * m2 * m2) {
            throw ConsistencyError("negative discriminant " + std::to_string(disc) +
                                   " in symplectic eigenvalue of the partial transpose");
        }
        disc = 0.0;
    }
    r.idet = half - std::sqrt(disc);
    if (!(r.idet > 0.0)) {
        throw ConsistencyError("non-positive partial-transpose invariant Idet = " + std::to_string(r.idet));
    }
    r.e = std::max(0.0, -0.5 * std::log2(4.0 * r.idet));
    return r;
}

CurveEvaluator::CurveEvaluator(const BathParams& bath, double k)
    : bath_(bath),
      k_(k),
      gen_(generator(bath)),
      sigma_beta_(thermal_meso_covariance(bath)),
      sigma0_(squeeze(MesoGaussianState(sigma_beta_), SqueezeSpec{k}).covariance()) {}

CurveSample CurveEvaluator::sample(double t) const {
    const auto red = reduce_two_modes(evolve_covariance(gen_, sigma_beta_, sigma0_, t));
    return {t, log_negativity(red), red.matrix()};
}

std::vector<double> uniform_grid(double t_max, double dt) {
    if (!std::isfinite(t_max) || t_max <= 0.0) throw ValidityError("t_max must be positive");
    if (!std::isfinite(dt) || dt <= 0.0) throw ValidityError("dt must be positive");
    const auto n = static_cast<long>(std::floor(t_max / dt + 1e-9));
    std::vector<double> grid(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) * dt;
    return grid;
}

EntanglementCurve serial::entanglement_curve(const BathParams& bath, double k,
                                             std::span<const double> t_grid) {
    check_grid(t_grid);
    const CurveEvaluator ev(bath, k);
    EntanglementCurve curve{params_of(bath, k), {}};
    curve.samples.reserve(t_grid.size());
    for (double t : t_grid) curve.samples.push_back(ev.sample(t));
    return curve;
}

EntanglementCurve entanglement_curve(const BathParams& bath, double k, std::span<const double> t_grid) {
    check_grid(t_grid);
    const CurveEvaluator ev(bath, k);
    EntanglementCurve curve{params_of(bath, k), std::vector<CurveSample>(t_grid.size())};
    const auto n = static_cast<long>(t_grid.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        try {
            curve.samples[static_cast<std::size_t>(i)] = ev.sample(t_grid[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical(mesoent_curve_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return curve;
}

SuddenTimes sudden_times(const EntanglementCurve& curve, double tol) {
    const auto& s = curve.samples;
    if (s.size() < 2) throw ResolutionError("sudden_times needs at least two samples");
    const auto first = std::find_if(s.begin(), s.end(), [](const CurveSample& c) { return !c.report.separable; });
    if (first == s.end()) return {};
    if (first == s.begin()) {
        throw ResolutionError("curve is entangled at its first sample; birth is not bracketed");
    }
    const auto last = std::find_if(s.rbegin(), s.rend(), [](const CurveSample& c) { return !c.report.separable; });

    const CurveEvaluator ev(
        BathParams::from_temperature(curve.params.temperature, curve.params.omega, curve.params.lambda),
        curve.params.k);
    // lo and hi straddle the change; entangled_at_hi says which side is entangled
    auto refine = [&](double lo, double hi, bool entangled_at_hi) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const bool ent = !ev.report(mid).separable;
            if (ent == entangled_at_hi) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    SuddenTimes out;
    out.birth = refine(std::prev(first)->t, first->t, true);
    if (last != s.rbegin()) {
        const auto j = last.base() - 1;  // forward iterator to the last entangled sample
        out.death = refine(j->t, std::next(j)->t, false);
    }
    return out;
}

PeakE peak_entanglement(const BathParams& bath, double k, std::span<const double> t_grid) {
    if (t_grid.empty()) throw ValidityError("peak_entanglement needs a non-empty grid");
    const auto curve = entanglement_curve(bath, k, t_grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        if (curve.samples[i].report.e > curve.samples[best].report.e) best = i;
    }
    PeakE peak{curve.samples[best].t, curve.samples[best].report.e};
    if (peak.e <= 0.0 || curve.samples.size() < 2) return peak;

    const CurveEvaluator ev(bath, k);
    double a = curve.samples[best == 0 ? 0 : best - 1].t;
    double b = curve.samples[std::min(best + 1, curve.samples.size() - 1)].t;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ev.report(c).e;
    double fd = ev.report(d).e;
    while (b - a > 1e-9 * std::max(1.0, b)) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ev.report(c).e;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ev.report(d).e;
        }
    }
    if (fc > peak.e) peak = {c, fc};
    if (fd > peak.e) peak = {d, fd};
    return peak;
}

double asymptotic_E(const BathParams& bath, double k) {
    constexpr double kHorizon = 1e4;
    const CurveEvaluator ev(bath, k);
    EntanglementReport prev = ev.report(1.0);
    for (double t = 1.0; 2.0 * t <= kHorizon; t *= 2.0) {
        const EntanglementReport next = ev.report(2.0 * t);
        if (std::abs(next.e - prev.e) < kTol.plateau_E && invariant_drift(prev, next) < kTol.plateau_invariants) {
            return next.e;
        }
        prev = next;
    }
    throw ConvergenceError("no entanglement plateau reached for t <= 1e4 (lambda = " +
                           std::to_string(bath.lambda()) + ", k = " + std::to_string(k) + ")");
}

double critical_temperature_closed_form(double k, double omega) {
    const double c = std::sqrt(3.0 + std::exp(-4.0 * k));
    const double disc = 4.0 / (c * c) - 1.0;
    if (!(k > 0.0) || !(disc >= 0.0)) {
        throw BracketError("no critical temperature for k = " + std::to_string(k));
    }
    const double eta = 2.0 / c - std::sqrt(disc);
    return omega / (2.0 * std::atanh(eta));
}

CriticalTemperature critical_temperature(double k, double lambda, double omega, double tol) {
    constexpr double kLow = 0.01;
    constexpr double kHigh = 5.0;
    auto entangled = [&](double temperature) {
        return asymptotic_E(BathParams::from_temperature(temperature, omega, lambda), k) > 0.0;
    };
    double lo = kLow;
    double hi = kHigh;
    if (!entangled(lo) || entangled(hi)) {
        throw BracketError("asymptotic entanglement does not change sign on T in [0.01, 5] (k = " +
                           std::to_string(k) + ", lambda = " + std::to_string(lambda) + ")");
    }
    while (0.5 * (hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (entangled(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    CriticalTemperature out{0.5 * (lo + hi), 0.5 * (hi - lo), std::numeric_limits<double>::quiet_NaN()};
    if (lambda == 1.0) out.closed_form = critical_temperature_closed_form(k, omega);
    return out;
}

double script_E_reference(const BathParams& bath, double k, double t) {
    const double eta = bath.eta();
    const double u = eta * t / (1.0 + eta);
    const double s = bath.meso_thermal_variance();
    const double lam = bath.lambda();
    // e^{-4u} cosh^2(2 lambda u), written without overflow or underflow
    const double ch2 = 0.25 * std::pow(std::exp(2.0 * (lam - 1.0) * u) + std::exp(-2.0 * (lam + 1.0) * u), 2);
    const double first = 1.0 + std::expm1(4.0 * k) * std::exp(-4.0 * u);
    const double second = 1.0 + std::expm1(-4.0 * k) * ch2;
    return s * s * first * second;
}

std::vector<BoundaryRow> serial::phase_boundary(std::span<const double> k_values, double lambda, double omega) {
    std::vector<BoundaryRow> rows;
    rows.reserve(k_values.size());
    for (double k : k_values) rows.push_back(boundary_row(k, lambda, omega));
    return rows;
}

std::vector<BoundaryRow> phase_boundary(std::span<const double> k_values, double lambda, double omega) {
    std::vector<BoundaryRow> rows(k_values.size());
    const auto n = static_cast<long>(k_values.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = boundary_row(k_values[static_cast<std::size_t>(i)], lambda, omega);
    }
    return rows;
}

}  // namespace mesoent
