#pragma once

// Deterministic inner maximizers used by the worst-case selectors. The
// objectives are smooth on compact intervals; a uniform grid locates the
// global bracket and golden-section refinement polishes it. Ties always
// resolve toward the smallest argument (lexicographic in 2-D) so repeated
// runs produce bit-identical selections.

#include <cmath>
#include <utility>

namespace letf::grid {

inline constexpr int kGrid1d = 1024;
inline constexpr int kGrid2d = 256;
inline constexpr double kGoldenTol = 1e-10;

// Golden-section maximization on [lo, hi]. Assumes the bracket contains the
// max (callers pass a grid-located bracket); ties shrink toward lo.
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi,
                                     double tol = kGoldenTol) {
    const double invphi = 0.6180339887498949;
    double a = lo, b = hi, h = b - a;
    if (h <= tol) {
        double m = 0.5 * (a + b);
        return {m, f(m)};
    }
    double c = b - invphi * h;
    double d = a + invphi * h;
    double fc = f(c), fd = f(d);
    while (h > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            h = b - a;
            c = b - invphi * h;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            h = b - a;
            d = a + invphi * h;
            fd = f(d);
        }
    }
    double m = fc >= fd ? c : d;
    double fm = fc >= fd ? fc : fd;
    // keep the smaller endpoint when it matches the refined value
    double fa = f(a);
    if (fa >= fm) return {a, fa};
    return {m, fm};
}

// 1024-point uniform grid followed by golden-section refinement of the best
// bracket; returns (argmax, max). Degenerate intervals evaluate the point.
template <class F>
std::pair<double, double> max_1d(F&& f, double lo, double hi, int n = kGrid1d) {
    if (!(hi > lo)) return {lo, f(lo)};
    int best = 0;
    double fbest = f(lo);
    double step = (hi - lo) / (n - 1);
    for (int i = 1; i < n; ++i) {
        double v = f(lo + step * i);
        if (v > fbest) {
            fbest = v;
            best = i;
        }
    }
    double blo = lo + step * (best > 0 ? best - 1 : 0);
    double bhi = lo + step * (best < n - 1 ? best + 1 : n - 1);
    auto [xr, fr] = golden_max(f, blo, bhi);
    if (fr > fbest) return {xr, fr};
    return {lo + step * best, fbest};
}

struct Max2d {
    double x = 0.0, y = 0.0, value = 0.0;
};

// 256x256 grid then coordinate-wise golden refinement from the best cell.
template <class F>
Max2d max_2d(F&& f, double xlo, double xhi, double ylo, double yhi,
             int n = kGrid2d) {
    Max2d r{xlo, ylo, f(xlo, ylo)};
    int nx = xhi > xlo ? n : 1, ny = yhi > ylo ? n : 1;
    double sx = nx > 1 ? (xhi - xlo) / (nx - 1) : 0.0;
    double sy = ny > 1 ? (yhi - ylo) / (ny - 1) : 0.0;
    int bi = 0, bj = 0;
    for (int i = 0; i < nx; ++i) {
        double x = xlo + sx * i;
        for (int j = 0; j < ny; ++j) {
            double v = f(x, ylo + sy * j);
            if (v > r.value) {
                r = {x, ylo + sy * j, v};
                bi = i;
                bj = j;
            }
        }
    }
    // three rounds of alternating 1-D golden refinements around the best cell
    double xl = xlo + sx * (bi > 0 ? bi - 1 : 0);
    double xh = xlo + sx * (bi < nx - 1 ? bi + 1 : nx - 1);
    double yl = ylo + sy * (bj > 0 ? bj - 1 : 0);
    double yh = ylo + sy * (bj < ny - 1 ? bj + 1 : ny - 1);
    for (int round = 0; round < 3; ++round) {
        if (xh > xl) {
            auto [x, v] = golden_max([&](double t) { return f(t, r.y); }, xl, xh);
            if (v > r.value) {
                r.x = x;
                r.value = v;
            }
        }
        if (yh > yl) {
            auto [y, v] = golden_max([&](double t) { return f(r.x, t); }, yl, yh);
            if (v > r.value) {
                r.y = y;
                r.value = v;
            }
        }
    }
    return r;
}

// Maximum of a convex quadratic over an interval sits at an endpoint; the
// smaller argument wins ties.
template <class F>
std::pair<double, double> max_endpoints(F&& f, double lo, double hi) {
    double flo = f(lo);
    if (hi <= lo) return {lo, flo};
    double fhi = f(hi);
    if (fhi > flo) return {hi, fhi};
    return {lo, flo};
}

}  // namespace letf::grid
