#include "trife/lax.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace trife
{

namespace
{

constexpr int third(int j, int k) { return 3 - j - k; }

SampleSpec fit_spec()
{
    SampleSpec spec;
    spec.seed = 84;
    spec.count = 64;
    spec.domain = {0.3, 1.5, -0.4, 0.4};
    return spec;
}

std::array<Complex, 3> config_from(Complex x, Complex y) { return {Complex{}, x, x + y}; }

Complex entry(const PairFns &fns, int j, int k, Complex x)
{
    return fns[j][k] ? fns[j][k](x) : Complex{};
}

Complex btau(const PairEntrySet &set, const std::array<Complex, 3> &q, int j)
{
    Complex acc{};
    for (int l = 0; l < 3; ++l) {
        if (l != j) {
            acc += entry(set.B, j, l, q[j] - q[l]);
        }
    }
    return acc;
}

PairFns shape_from(const std::function<Complex(int, int, Complex)> &fn)
{
    PairFns out;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j != k) {
                out[j][k] = [fn, j, k](Complex x) { return fn(j, k, x); };
            }
        }
    }
    return out;
}

} // namespace

PairEntrySet rational_preset(Complex gamma)
{
    require_finite(gamma, "gamma");
    PairEntrySet set;
    set.name = "rational";
    set.A = shape_from([gamma](int, int, Complex x) { return gamma / x; });
    set.dA = shape_from([gamma](int, int, Complex x) { return -gamma / (x * x); });
    fit_B_scale(set, shape_from([](int, int, Complex x) { return 1.0 / (x * x); }), fit_spec());
    EllipticTriadParams p;
    p.alpha = -gamma * gamma;
    set.induced = p;
    return set;
}

PairEntrySet hyperbolic_preset(Complex gamma)
{
    require_finite(gamma, "gamma");
    PairEntrySet set;
    set.name = "hyperbolic";
    set.A = shape_from([gamma](int, int, Complex x) { return gamma / std::sinh(x); });
    set.dA = shape_from([gamma](int, int, Complex x) {
        const Complex s = std::sinh(x);
        return -gamma * std::cosh(x) / (s * s);
    });
    fit_B_scale(set, shape_from([](int, int, Complex x) {
                    const Complex s = std::sinh(x);
                    return 1.0 / (s * s);
                }),
                fit_spec());
    // 1/sinh^2 = p - 1/3 for (g2, g3) = (4/3, -8/27).
    EllipticTriadParams p;
    p.alpha = -gamma * gamma;
    p.beta = -gamma * gamma / 3.0;
    p.weier = {4.0 / 3.0, -8.0 / 27.0};
    set.induced = p;
    return set;
}

PairEntrySet elliptic_preset(Complex gamma, Complex nu, WeierstrassParams weier, std::array<Complex, 3> lambda,
                             EllipticOptions options)
{
    require_finite(gamma, "gamma");
    require_finite(nu, "nu");
    const auto ev = std::make_shared<const WeierstrassEvaluator>(weier, options);
    const auto vnu = ev->evaluate(nu);
    if (vnu.overflow) {
        throw ConstraintError("spectral parameter nu sits on a lattice point");
    }
    const Complex log_sigma_nu = vnu.log_sigma;
    PairEntrySet set;
    set.name = "elliptic";
    set.lambda = lambda;
    // Phi(x) = sigma(x + nu) / (sigma(x) sigma(nu)).
    auto phi = [ev, nu, log_sigma_nu](Complex x) {
        const auto vx = ev->evaluate(x);
        if (vx.overflow) {
            throw PoleError("Lax entry evaluated at a pole");
        }
        // sigma(x + nu) vanishes on the lattice, and so does Phi.
        if (x + nu == Complex{}) {
            return Complex{};
        }
        const auto vs = ev->evaluate(x + nu);
        if (vs.overflow) {
            return Complex{};
        }
        return std::exp(vs.log_sigma - vx.log_sigma - log_sigma_nu);
    };
    auto dphi = [ev, nu, phi](Complex x) { return phi(x) * (ev->zeta(x + nu) - ev->zeta(x)); };
    set.A = shape_from([gamma, lambda, phi](int j, int k, Complex x) { return gamma * phi(x + lambda[j] - lambda[k]); });
    set.dA = shape_from(
        [gamma, lambda, dphi](int j, int k, Complex x) { return gamma * dphi(x + lambda[j] - lambda[k]); });
    fit_B_scale(set, shape_from([ev, lambda](int j, int k, Complex x) { return ev->p(x + lambda[j] - lambda[k]); }),
                fit_spec());
    // b1(x) = gamma^2 (p(x + lambda2 - lambda3) - p(nu)), so f = int b1 is
    // elliptic with alpha = -gamma^2, beta = -gamma^2 p(nu), a1 = lambda3 - lambda2.
    EllipticTriadParams p;
    p.alpha = -gamma * gamma;
    p.beta = -gamma * gamma * vnu.p;
    p.a1 = lambda[2] - lambda[1];
    p.a2 = lambda[0] - lambda[2];
    p.weier = weier;
    p.options = options;
    set.induced = p;
    return set;
}

PairEntrySet random_preset(std::uint64_t seed)
{
    PairEntrySet set;
    set.name = "random";
    std::array<std::array<double, 3>, 3> a{}, c{};
    std::uint64_t n = 0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            a[j][k] = 0.5 + counter_uniform(seed, n++);
            c[j][k] = -1.0 + 2.0 * counter_uniform(seed, n++);
        }
    }
    set.A = shape_from([a, c](int j, int k, Complex x) { return a[j][k] / x + c[j][k] * x; });
    set.dA = shape_from([a, c](int j, int k, Complex x) { return -a[j][k] / (x * x) + c[j][k]; });
    return set;
}

// ---------------------------------------------------------------------------

namespace
{

// Off-diagonal commutator condition for (j, k): returns (B-independent part,
// coefficient of kappa given B = kappa * shape, magnitude scale).
struct Eq84Parts {
    Complex base;
    Complex slope;
    double scale;
};

Eq84Parts eq84_parts(const PairEntrySet &set, const PairFns *shape, const std::array<Complex, 3> &q, int j, int k)
{
    const int l = third(j, k);
    const Complex ajk = set.A[j][k](q[j] - q[k]);
    const Complex t1 = set.dA[j][l](q[j] - q[l]) * set.A[l][k](q[l] - q[k]);
    const Complex t2 = set.A[j][l](q[j] - q[l]) * set.dA[l][k](q[l] - q[k]);
    Eq84Parts parts;
    parts.base = t1 - t2;
    parts.scale = std::abs(t1) + std::abs(t2);
    if (shape) {
        PairEntrySet tmp;
        tmp.B = *shape;
        parts.slope = ajk * (btau(tmp, q, j) - btau(tmp, q, k));
    } else {
        const Complex bdiff = ajk * (btau(set, q, j) - btau(set, q, k));
        parts.base += bdiff;
        parts.scale += std::abs(bdiff);
    }
    return parts;
}

} // namespace

Complex fit_B_scale(PairEntrySet &set, const PairFns &shape, const SampleSpec &spec)
{
    Complex num{};
    double den = 0.0;
    for (int i = 0; i < spec.count; ++i) {
        const auto q = config_from(sample_point(spec, std::uint64_t(i), 0), sample_point(spec, std::uint64_t(i), 1));
        try {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    if (j == k) {
                        continue;
                    }
                    const auto parts = eq84_parts(set, &shape, q, j, k);
                    num += std::conj(parts.slope) * parts.base;
                    den += std::norm(parts.slope);
                }
            }
        } catch (const PoleError &) {
        }
    }
    if (den == 0.0) {
        throw DegenerateError("B shape does not enter the commutator condition");
    }
    const Complex kappa = -num / den;
    set.b_scale = kappa;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j != k) {
                set.B[j][k] = [s = shape[j][k], kappa](Complex x) { return kappa * s(x); };
            }
        }
    }
    return kappa;
}

BFunctions b_functions(const PairEntrySet &set)
{
    BFunctions out;
    // b_i pairs (j, k) = (2,3), (3,1), (1,2) in 1-based labels.
    static constexpr int pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    for (int i = 0; i < 3; ++i) {
        const int j = pairs[i][0], k = pairs[i][1];
        const ScalarFn ajk = set.A[j][k], akj = set.A[k][j];
        const ScalarFn djk = set.dA[j][k], dkj = set.dA[k][j];
        out.b[i] = [ajk, akj](Complex x) { return -ajk(x) * akj(-x); };
        out.db[i] = [ajk, akj, djk, dkj](Complex x) { return -djk(x) * akj(-x) + ajk(x) * dkj(-x); };
    }
    return out;
}

Complex eq90_value(const BFunctions &b, Complex x, Complex y)
{
    const Complex z = -x - y;
    const Complex b1 = b.b[0](x), b2 = b.b[1](y), b3 = b.b[2](z);
    const Complex d1 = b.db[0](x), d2 = b.db[1](y), d3 = b.db[2](z);
    return b2 * d1 - b1 * d2 + b3 * d2 - b2 * d3 + b1 * d3 - b3 * d1;
}

double det91_point(const BFunctions &b, Complex x, Complex y)
{
    const Complex z = -x - y;
    const std::array<Complex, 3> r1{b.db[0](x), b.db[1](y), b.db[2](z)};
    const std::array<Complex, 3> r2{b.b[0](x), b.b[1](y), b.b[2](z)};
    const Complex det = r1[0] * (r2[1] - r2[2]) - r1[1] * (r2[0] - r2[2]) + r1[2] * (r2[0] - r2[1]);
    auto norm = [](const std::array<Complex, 3> &r) {
        return std::sqrt(std::norm(r[0]) + std::norm(r[1]) + std::norm(r[2]));
    };
    const double scale = norm(r1) * norm(r2) * std::sqrt(3.0);
    return scale == 0.0 ? std::abs(det) : std::abs(det) / scale;
}

ResidualReport det91_residual(const BFunctions &b, const SampleSpec &spec, double tol)
{
    return sample_pairs("det91", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const double r = spec.pole_exclusion_radius;
        if (std::abs(x) < r || std::abs(y) < r || std::abs(x + y) < r) {
            return std::nullopt;
        }
        return det91_point(b, x, y);
    });
}

PairFns potential_from_A(const PairEntrySet &set)
{
    PairFns V;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j == k) {
                continue;
            }
            V[j][k] = [ajk = set.A[j][k], akj = set.A[k][j], djk = set.dA[j][k], dkj = set.dA[k][j]](Complex x) {
                return ajk(x) * dkj(-x) - djk(x) * akj(-x);
            };
        }
    }
    return V;
}

std::pair<Mat3, Mat3> build_L_M(const PairEntrySet &set, const std::array<Complex, 3> &q,
                                const std::array<Complex, 3> &p)
{
    Mat3 L{}, M{};
    for (int j = 0; j < 3; ++j) {
        L[j][j] = p[j];
        M[j][j] = btau(set, q, j);
        for (int k = 0; k < 3; ++k) {
            if (j != k) {
                L[j][k] = set.A[j][k](q[j] - q[k]);
                M[j][k] = set.dA[j][k](q[j] - q[k]);
            }
        }
    }
    return {L, M};
}

std::pair<Mat3, Mat3> build_L_M(const PairEntrySet &set, const ThreeBodyState &s)
{
    return build_L_M(set, {s.q[0], s.q[1], s.q[2]}, {s.p[0], s.p[1], s.p[2]});
}

double eq84_point(const PairEntrySet &set, const std::array<Complex, 3> &q)
{
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j != k) {
                const auto parts = eq84_parts(set, nullptr, q, j, k);
                worst = std::max(worst, std::abs(parts.base) / (1.0 + parts.scale));
            }
        }
    }
    return worst;
}

ResidualReport eq84_residual(const PairEntrySet &set, const SampleSpec &spec, double tol)
{
    return sample_pairs("eq84", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const double r = spec.pole_exclusion_radius;
        if (std::abs(x) < r || std::abs(y) < r || std::abs(x + y) < r) {
            return std::nullopt;
        }
        return eq84_point(set, config_from(x, y));
    });
}

Complex phi_jk(const PairEntrySet &set, const std::array<Complex, 3> &q, int j, int k)
{
    const int l = third(j, k);
    const Complex ajk = set.A[j][k](q[j] - q[k]);
    if (std::abs(ajk) < 1e-14) {
        throw DegenerateError("A_jk vanishes; cocycle function undefined");
    }
    const Complex num = set.dA[j][l](q[j] - q[l]) * set.A[l][k](q[l] - q[k]) -
                        set.A[j][l](q[j] - q[l]) * set.dA[l][k](q[l] - q[k]);
    return num / ajk;
}

double cocycle_point(const PairEntrySet &set, const std::array<Complex, 3> &q, int j, int k, int m)
{
    const Complex a = phi_jk(set, q, j, k), b = phi_jk(set, q, k, m), c = phi_jk(set, q, m, j);
    return std::abs(a + b + c) / (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
}

ResidualReport phi_cocycle_residual(const PairEntrySet &set, const SampleSpec &spec, double tol)
{
    return sample_pairs("cocycle", spec, tol, [&](Complex x, Complex y) -> std::optional<double> {
        const double r = spec.pole_exclusion_radius;
        if (std::abs(x) < r || std::abs(y) < r || std::abs(x + y) < r) {
            return std::nullopt;
        }
        const auto q = config_from(x, y);
        return std::max(cocycle_point(set, q, 0, 1, 2), cocycle_point(set, q, 1, 0, 2));
    });
}

// ---------------------------------------------------------------------------

std::array<double, 3> forces(const PairFns &V, const std::array<double, 3> &q)
{
    std::array<double, 3> acc{};
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j == k) {
                continue;
            }
            const Complex v = V[j][k](q[j] - q[k]);
            if (std::abs(v.imag()) > 1e-9 * (1.0 + std::abs(v))) {
                throw Error("pair force has a nonzero imaginary part; coupling is not real");
            }
            acc[j] += v.real();
        }
    }
    return acc;
}

double energy(const PairEntrySet &set, const ThreeBodyState &s)
{
    double e = 0.0;
    for (int j = 0; j < 3; ++j) {
        e += 0.5 * s.p[j] * s.p[j];
        for (int k = j + 1; k < 3; ++k) {
            const double x = s.q[j] - s.q[k];
            e += (set.A[j][k](x) * set.A[k][j](-x)).real();
        }
    }
    return e;
}

namespace
{

void check_proximity(const std::array<double, 3> &q, double t, double exclusion)
{
    for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k) {
            if (std::abs(q[j] - q[k]) < exclusion) {
                throw ProximityError("particles " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                         " entered the exclusion radius at t = " + std::to_string(t),
                                     t, j, k);
            }
        }
    }
}

} // namespace

Trajectory integrate_motion(const PairFns &V, const ThreeBodyState &s0, double dt, double T, double exclusion)
{
    if (!(dt > 0.0) || !(T >= 0.0)) {
        throw ConstraintError("integration needs dt > 0 and T >= 0");
    }
    check_proximity(s0.q, s0.t, exclusion);
    Trajectory traj;
    traj.dt = dt;
    const auto steps = static_cast<long>(std::llround(T / dt));
    traj.states.reserve(std::size_t(steps) + 1);
    traj.states.push_back(s0);
    ThreeBodyState s = s0;
    using Vec = std::array<double, 3>;
    auto axpy = [](const Vec &a, double h, const Vec &b) {
        return Vec{a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
    };
    for (long n = 0; n < steps; ++n) {
        const Vec k1q = s.p;
        const Vec k1p = forces(V, s.q);
        const Vec k2q = axpy(s.p, 0.5 * dt, k1p);
        const Vec k2p = forces(V, axpy(s.q, 0.5 * dt, k1q));
        const Vec k3q = axpy(s.p, 0.5 * dt, k2p);
        const Vec k3p = forces(V, axpy(s.q, 0.5 * dt, k2q));
        const Vec k4q = axpy(s.p, dt, k3p);
        const Vec k4p = forces(V, axpy(s.q, dt, k3q));
        for (int j = 0; j < 3; ++j) {
            s.q[j] += dt / 6.0 * (k1q[j] + 2.0 * k2q[j] + 2.0 * k3q[j] + k4q[j]);
            s.p[j] += dt / 6.0 * (k1p[j] + 2.0 * k2p[j] + 2.0 * k3p[j] + k4p[j]);
        }
        s.t = s0.t + double(n + 1) * dt;
        check_proximity(s.q, s.t, exclusion);
        traj.states.push_back(s);
    }
    return traj;
}

namespace
{

Mat3 mul(const Mat3 &a, const Mat3 &b)
{
    Mat3 c{};
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
            for (int j = 0; j < 3; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

Complex trace(const Mat3 &a) { return a[0][0] + a[1][1] + a[2][2]; }

} // namespace

SpectrumReport isospectrality_report(const PairEntrySet &set, const Trajectory &traj)
{
    SpectrumReport rep;
    const std::size_t n = traj.states.size();
    if (n == 0) {
        throw ConstraintError("empty trajectory");
    }
    std::vector<Mat3> Ls(n), Ms(n);
    std::array<Complex, 3> first{};
    const double e0 = energy(set, traj.states[0]);
    const double m0 = traj.states[0].p[0] + traj.states[0].p[1] + traj.states[0].p[2];
    for (std::size_t i = 0; i < n; ++i) {
        const auto &s = traj.states[i];
        std::tie(Ls[i], Ms[i]) = build_L_M(set, s);
        const Mat3 L2 = mul(Ls[i], Ls[i]);
        const Mat3 L3 = mul(L2, Ls[i]);
        const std::array<Complex, 3> tr{trace(Ls[i]), trace(L2), trace(L3)};
        if (i == 0) {
            first = tr;
        }
        rep.times.push_back(s.t);
        for (int k = 0; k < 3; ++k) {
            rep.traces[k].push_back(tr[k].real());
            rep.drift[k] = std::max(rep.drift[k], std::abs(tr[k] - first[k]) / std::max(1.0, std::abs(first[k])));
        }
        rep.energy_drift = std::max(rep.energy_drift, std::abs(energy(set, s) - e0) / std::max(1.0, std::abs(e0)));
        rep.momentum_drift = std::max(rep.momentum_drift, std::abs(s.p[0] + s.p[1] + s.p[2] - m0));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Mat3 LM = mul(Ls[i], Ms[i]);
        const Mat3 ML = mul(Ms[i], Ls[i]);
        double acc = 0.0;
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                const Complex ldot = (Ls[i + 1][r][c] - Ls[i - 1][r][c]) / (2.0 * traj.dt);
                acc += std::norm(ldot - (LM[r][c] - ML[r][c]));
            }
        }
        rep.lax_residual = std::max(rep.lax_residual, std::sqrt(acc));
    }
    return rep;
}

SolutionTriple induced_triple(const PairEntrySet &set)
{
    if (!set.induced) {
        throw ConstraintError("entry set has no known induced triple");
    }
    return make_elliptic_solution(*set.induced);
}

} // namespace trife
