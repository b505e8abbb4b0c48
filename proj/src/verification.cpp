#include "trife/verification.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace trife
{

void SampleSpec::validate() const
{
    if (count < 1) {
        throw ConstraintError("sample count must be at least 1");
    }
    if (!(pole_exclusion_radius >= 0.0)) {
        throw ConstraintError("pole exclusion radius must be nonnegative");
    }
    if (!(domain.re_max >= domain.re_min) || !(domain.im_max >= domain.im_min)) {
        throw ConstraintError("sample domain is empty");
    }
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter)
{
    std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + (counter + 1) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter)
{
    return double(counter_hash(seed, counter) >> 11) * 0x1.0p-53;
}

Complex sample_point(const SampleSpec &spec, std::uint64_t index, int slot)
{
    const std::uint64_t base = index * 16 + std::uint64_t(slot) * 2;
    const double u = counter_uniform(spec.seed, base);
    const double v = counter_uniform(spec.seed, base + 1);
    const Rect &d = spec.domain;
    return {d.re_min + u * (d.re_max - d.re_min), d.im_min + v * (d.im_max - d.im_min)};
}

ResidualReport merge(const ResidualReport &a, const ResidualReport &b)
{
    ResidualReport r = a;
    const int na = a.samples - a.skipped;
    const int nb = b.samples - b.skipped;
    r.samples = a.samples + b.samples;
    r.skipped = a.skipped + b.skipped;
    if (na + nb > 0) {
        r.mean_abs = (a.mean_abs * na + b.mean_abs * nb) / double(na + nb);
    }
    if (nb > 0 && (na == 0 || b.max_abs > a.max_abs)) {
        r.max_abs = b.max_abs;
        r.worst_point = b.worst_point;
    }
    r.pass = r.max_abs <= r.tolerance;
    return r;
}

ResidualReport sample_pairs(const std::string &name, const SampleSpec &spec, double tol, const PairResidual &fn)
{
    spec.validate();
    ResidualReport r;
    r.name = name;
    r.tolerance = tol;
    double sum = 0.0;
    int used = 0;
    for (int i = 0; i < spec.count; ++i) {
        const Complex x = sample_point(spec, std::uint64_t(i), 0);
        const Complex y = sample_point(spec, std::uint64_t(i), 1);
        std::optional<double> v;
        try {
            v = fn(x, y);
        } catch (const PoleError &) {
        } catch (const DegenerateError &) {
        } catch (const QuadratureError &) {
        }
        ++r.samples;
        if (!v || !std::isfinite(*v)) {
            ++r.skipped;
            continue;
        }
        sum += *v;
        ++used;
        if (used == 1 || *v > r.max_abs) {
            r.max_abs = *v;
            r.worst_point = {x, y};
        }
    }
    if (used == 0) {
        throw Error(name + ": every sample was skipped");
    }
    r.mean_abs = sum / used;
    r.pass = r.max_abs <= tol;
    return r;
}

bool near_declared_pole(const SolutionTriple &s, Complex x, Complex y, double radius)
{
    const std::array<Complex, 3> pts{x, y, -x - y};
    for (int j = 0; j < 3; ++j) {
        for (Complex p : s.slots[j].poles) {
            if (std::abs(pts[j] - p) < radius) {
                return true;
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

double fe14_point(const SolutionTriple &s, Complex x, Complex y)
{
    const Complex z = -x - y;
    const Complex sum = s.f(x) + s.g(y) + s.h(z);
    const Complex F = s.F(x), G = s.G(y), H = s.H(z);
    return std::abs(sum * sum - (F + G + H)) / (1.0 + std::abs(F) + std::abs(G) + std::abs(H));
}

double det22_point(const SolutionTriple &s, Complex x, Complex y)
{
    const Complex z = -x - y;
    const std::array<Complex, 3> r1{s.d2(0, x), s.d2(1, y), s.d2(2, z)};
    const std::array<Complex, 3> r2{s.d1(0, x), s.d1(1, y), s.d1(2, z)};
    const Complex det = r1[0] * (r2[1] - r2[2]) - r1[1] * (r2[0] - r2[2]) + r1[2] * (r2[0] - r2[1]);
    auto norm = [](const std::array<Complex, 3> &r) {
        return std::sqrt(std::norm(r[0]) + std::norm(r[1]) + std::norm(r[2]));
    };
    const double scale = norm(r1) * norm(r2) * std::sqrt(3.0);
    if (scale == 0.0) {
        return std::abs(det);
    }
    return std::abs(det) / scale;
}

double eq32_point(const Quadruple &q, Complex x, Complex y)
{
    const Complex dxi = q.xi(x) - q.xi(y);
    if (dxi == Complex{}) {
        throw DegenerateError("xi(x) = xi(y)");
    }
    const Complex lhs = q.phi(x + y);
    const Complex ex = q.eta(x), ey = q.eta(y);
    const Complex quot = (q.gamma(x) - q.gamma(y)) / dxi;
    const double scale = 1.0 + std::abs(lhs) + std::abs(ex) + std::abs(ey) + std::abs(quot);
    return std::abs(lhs - ex - ey + quot) / scale;
}

double eq34_point(const ScalarFn &phi, const ScalarFn &tau, const ScalarFn &A, Complex x, Complex y)
{
    const Complex lhs = phi(x + y);
    const Complex px = phi(x), py = phi(y);
    const Complex prod = tau(x) * tau(y) * A(x + y);
    const double scale = 1.0 + std::abs(lhs) + std::abs(px) + std::abs(py) + std::abs(prod);
    return std::abs(lhs - px - py - prod) / scale;
}

double eq38_point(const ScalarFn &dphi, const TauA &ta, Complex x, Complex y)
{
    const Complex den = ta.dtau(x) * ta.tau(y) - ta.tau(x) * ta.dtau(y);
    if (std::abs(den) < 1e-12) {
        throw DegenerateError("Wronskian of tau vanishes");
    }
    const Complex a = ta.A(x + y);
    const Complex q = (dphi(x) - dphi(y)) / den;
    return std::abs(a + q) / (1.0 + std::abs(a) + std::abs(q));
}

std::pair<Complex, Complex> fs_sigma_sides(const WeierstrassEvaluator &ev, Complex x, Complex y, Complex z)
{
    const auto vx = ev.evaluate(x), vy = ev.evaluate(y), vz = ev.evaluate(z);
    if (vx.overflow || vy.overflow || vz.overflow) {
        throw PoleError("sigma determinant evaluated at a lattice point");
    }
    // Rows (1, p, p').
    const Complex det = (vy.p * vz.dp - vz.p * vy.dp) - (vx.p * vz.dp - vz.p * vx.dp) + (vx.p * vy.dp - vy.p * vx.dp);
    const Complex lhs = 0.5 * det;
    const Complex s = x + y + z;
    if (s == Complex{} || x == y || y == z || z == x) {
        return {lhs, Complex{}};
    }
    const Complex log_rhs = ev.log_sigma(s) + ev.log_sigma(x - y) + ev.log_sigma(y - z) + ev.log_sigma(z - x) -
                            3.0 * (vx.log_sigma + vy.log_sigma + vz.log_sigma);
    return {lhs, std::exp(log_rhs)};
}

double fs_sigma_point(const WeierstrassEvaluator &ev, Complex x, Complex y, Complex z)
{
    const double scale = std::abs(x) + std::abs(y) + std::abs(z);
    const Complex s = x + y + z;
    if (std::abs(s) <= 1e-12 * scale) {
        const auto [lhs, rhs] = fs_sigma_sides(ev, x, y, -x - y);
        return std::max(std::abs(lhs), std::abs(rhs));
    }
    for (Complex d : {x - y, y - z, z - x}) {
        if (std::abs(d) <= 1e-12 * scale) {
            throw DegenerateError("sigma determinant needs pairwise distinct points");
        }
    }
    const auto vx = ev.evaluate(x), vy = ev.evaluate(y), vz = ev.evaluate(z);
    if (vx.overflow || vy.overflow || vz.overflow) {
        throw PoleError("sigma determinant evaluated at a lattice point");
    }
    const Complex det = (vy.p * vz.dp - vz.p * vy.dp) - (vx.p * vz.dp - vz.p * vx.dp) + (vx.p * vy.dp - vy.p * vx.dp);
    const Complex log_rhs = ev.log_sigma(s) + ev.log_sigma(x - y) + ev.log_sigma(y - z) + ev.log_sigma(z - x) -
                            3.0 * (vx.log_sigma + vy.log_sigma + vz.log_sigma);
    return std::abs(0.5 * det * std::exp(-log_rhs) - 1.0);
}

// ---------------------------------------------------------------------------

ResidualReport fe14_residual(const SolutionTriple &s, const SampleSpec &spec, double tol)
{
    return sample_pairs("fe14", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        if (near_declared_pole(s, x, y, spec.pole_exclusion_radius)) {
            return std::nullopt;
        }
        return fe14_point(s, x, y);
    });
}

ResidualReport det22_residual(const SolutionTriple &s, const SampleSpec &spec, double tol)
{
    return sample_pairs("det22", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        if (near_declared_pole(s, x, y, spec.pole_exclusion_radius)) {
            return std::nullopt;
        }
        return det22_point(s, x, y);
    });
}

ResidualReport sutherland4_residual(const ScalarFn &f, const ScalarFn &F, const SampleSpec &spec, double tol)
{
    return sample_pairs("sutherland4", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const Complex z = -x - y;
        const double r = spec.pole_exclusion_radius;
        if (std::abs(x) < r || std::abs(y) < r || std::abs(z) < r) {
            return std::nullopt;
        }
        const Complex fx = f(x), fy = f(y), fz = f(z);
        const Complex Fx = F(x), Fy = F(y), Fz = F(z);
        const Complex diff = fx * fy + fy * fz + fz * fx - (Fx + Fy + Fz);
        return std::abs(diff) / (1.0 + std::abs(Fx) + std::abs(Fy) + std::abs(Fz));
    });
}

ResidualReport sutherland4_residual(const IdenticalSolution &s, const SampleSpec &spec, double tol)
{
    const IdenticalSolution copy = s;
    auto r = sutherland4_residual([copy](Complex x) { return copy.f(x); }, [copy](Complex x) { return copy.F(x); },
                                  spec, tol);
    r.note = "F calibrated at x0 = 0.37, constant = " + std::to_string(s.calibration.real()) + " + " +
             std::to_string(s.calibration.imag()) + "i";
    return r;
}

ResidualReport eq32_residual(const Quadruple &q, const SampleSpec &spec, double tol)
{
    return sample_pairs("eq32", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        if (std::abs(x - y) < spec.pole_exclusion_radius) {
            return std::nullopt;
        }
        return eq32_point(q, x, y);
    });
}

ResidualReport eq34_residual(const ScalarFn &phi, const ScalarFn &tau, const ScalarFn &A, const SampleSpec &spec,
                             double tol)
{
    return sample_pairs("eq34", spec, tol,
                        [&](Complex x, Complex y) -> std::optional<double> { return eq34_point(phi, tau, A, x, y); });
}

ResidualReport eq38_residual(const ScalarFn &dphi, const TauA &ta, const SampleSpec &spec, double tol)
{
    return sample_pairs("eq38", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        if (std::abs(x - y) < spec.pole_exclusion_radius) {
            return std::nullopt;
        }
        return eq38_point(dphi, ta, x, y);
    });
}

ResidualReport ode40_suite(const ScalarFn &u, const ScalarFn &du, const ChainConstants &c, const SampleSpec &spec,
                           double tol)
{
    return sample_pairs("ode40", spec, tol,
                        [&](Complex x, Complex) -> std::optional<double> { return ode40_residual(u(x), du(x), c); });
}

ResidualReport addition54_residual(const WeierstrassEvaluator &ev, const SampleSpec &spec, double tol)
{
    return sample_pairs("addition54", spec, tol, [&](Complex x, Complex a) -> std::optional<double> {
        const double r = spec.pole_exclusion_radius;
        if (std::abs(x) < r || std::abs(a) < r || std::abs(x + a) < r) {
            return std::nullopt;
        }
        return p_addition_residual(ev, x, a);
    });
}

ResidualReport fs_sigma_determinant_residual(const WeierstrassEvaluator &ev, const SampleSpec &spec, double tol)
{
    std::uint64_t index = 0;
    return sample_pairs("fs_sigma", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const Complex z = sample_point(spec, index++, 2);
        const double r = spec.pole_exclusion_radius;
        for (Complex v : {x, y, z, x - y, y - z, z - x, x + y + z}) {
            if (std::abs(v) < r) {
                return std::nullopt;
            }
        }
        return fs_sigma_point(ev, x, y, z);
    });
}

MixingScan mixing_determinant_scan(const PhiChain &chain, Complex alpha1, const SampleSpec &spec, int n,
                                   double zero_tol, double nonzero_floor)
{
    if (n < 2) {
        throw ConstraintError("mixing grid needs at least 2 points per axis");
    }
    MixingScan scan;
    scan.zero_tol = zero_tol;
    scan.nonzero_floor = nonzero_floor;
    scan.pass = true;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            MixingCell cell;
            cell.s1 = double(i) / (n - 1);
            cell.t1 = double(k) / (n - 1);
            const double s2 = 1.0 - cell.s1, t2 = 1.0 - cell.t1;
            cell.expected_zero = cell.s1 * cell.t1 == 0.0 && s2 * t2 == 0.0;
            const auto triple = triad_from_chain(chain, alpha1, cell.s1, cell.t1, true);
            cell.det_max = det22_residual(triple, spec, zero_tol).max_abs;
            const bool interior = i > 0 && i < n - 1 && k > 0 && k < n - 1;
            if (cell.expected_zero) {
                cell.ok = cell.det_max <= zero_tol;
            } else if (interior) {
                cell.ok = cell.det_max > nonzero_floor;
            } else {
                cell.ok = cell.det_max > zero_tol;
            }
            scan.pass = scan.pass && cell.ok;
            scan.cells.push_back(cell);
        }
    }
    return scan;
}

} // namespace trife
