#pragma once

#include <memory>
#include <vector>

namespace qball {

// Uniform radial mesh for spherically symmetric fields on R^3.
// Nodes r_i = i h, i = 0..n, r_n = r_max.  The quadrature weights w_i
// approximate int f dx = 4 pi int f(r) r^2 dr at second order:
//   w_0 = pi h^3 / 6,  w_i = 4 pi r_i^2 h,  w_n = 2 pi r_n^2 h.
// The first weight is the half-cell volume moment that makes the conservative
// radial Laplacian self-adjoint in <.,.>_w including the origin node, which in
// turn makes the enclosed-charge Poisson inverse exact on the stencil.
struct RadialGrid {
    double r_max = 0.0;
    int n = 0;
    double h = 0.0;
    std::vector<double> r;  // size n+1
    std::vector<double> w;  // size n+1, volume quadrature weights
    std::vector<double> ah; // size n, (r_{i+1/2})^2 face areas / 4 pi
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_max, int n);

// Real scalar field sampled at the grid nodes.
struct RadialField {
    GridPtr grid;
    std::vector<double> v;

    RadialField() = default;
    explicit RadialField(GridPtr g) : grid(std::move(g)), v(grid->n + 1, 0.0) {}
    RadialField(GridPtr g, std::vector<double> vals) : grid(std::move(g)), v(std::move(vals)) {}

    int n() const { return grid->n; }
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

// sum_i w_i f_i  ~  int_{R^3} f dx.
double integrate(const RadialField& f);

// Inner product sum_i w_i f_i g_i.
double dot_w(const RadialField& f, const RadialField& g);

// sqrt(<f,f>_w), the discrete L^2(R^3) norm.
double norm_w(const RadialField& f);

bool all_finite(const RadialField& f);

} // namespace qball
