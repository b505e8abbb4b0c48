#include "trife/quadrature.hpp"

#include <array>
#include <cmath>

namespace trife
{

namespace
{

struct SimpsonState {
    const ScalarFn &fn;
    Complex origin;
    Complex dir; // b - a
};

Complex eval(const SimpsonState &st, double s)
{
    const Complex v = st.fn(st.origin + s * st.dir);
    if (!is_finite(v)) {
        throw QuadratureError("integrand is not finite along the path");
    }
    return v;
}

Complex simpson_recurse(const SimpsonState &st, double s0, double s1, Complex f0, Complex fm, Complex f1,
                        Complex whole, double tol, int depth)
{
    const double sm = 0.5 * (s0 + s1);
    const double sl = 0.5 * (s0 + sm);
    const double sr = 0.5 * (sm + s1);
    const Complex fl = eval(st, sl);
    const Complex fr = eval(st, sr);
    const double h = (s1 - s0) / 12.0;
    const Complex left = h * (f0 + 4.0 * fl + fm);
    const Complex right = h * (fm + 4.0 * fr + f1);
    const Complex delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth <= 0) {
        throw QuadratureError("adaptive Simpson did not converge (singular integrand on the path?)");
    }
    return simpson_recurse(st, s0, sm, f0, fl, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(st, sm, s1, fm, fr, f1, right, 0.5 * tol, depth - 1);
}

} // namespace

Complex integrate_segment(const ScalarFn &fn, Complex a, Complex b, double abs_tol, int max_depth)
{
    if (a == b) {
        return {};
    }
    const Complex dir = b - a;
    // Integrate in the real parameter s in [0, 1]; the tolerance is on the
    // parametrised integral, so rescale by |b - a|.
    const double tol = abs_tol / std::abs(dir);
    const SimpsonState st{fn, a, dir};
    // Split into a few panels first so a narrow feature cannot be missed by
    // the initial five samples.
    constexpr int panels = 4;
    Complex total{};
    for (int i = 0; i < panels; ++i) {
        const double s0 = double(i) / panels;
        const double s1 = double(i + 1) / panels;
        const Complex f0 = eval(st, s0);
        const Complex f1 = eval(st, s1);
        const Complex fm = eval(st, 0.5 * (s0 + s1));
        const Complex whole = (s1 - s0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += simpson_recurse(st, s0, s1, f0, fm, f1, whole, tol / panels, max_depth);
    }
    return total * dir;
}

Complex gauss_legendre_segment(const ScalarFn &fn, Complex a, Complex b)
{
    static constexpr std::array<double, 5> nodes{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                                 0.8650633666889845, 0.9739065285171717};
    static constexpr std::array<double, 5> weights{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                                   0.1494513491505806, 0.0666713443086881};
    const Complex mid = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    Complex acc{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        acc += weights[i] * (fn(mid + half * nodes[i]) + fn(mid - half * nodes[i]));
    }
    return acc * half;
}

} // namespace trife
