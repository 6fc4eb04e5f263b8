#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace inlsc {

using Complex = std::complex<double>;

/// Cell-centred radial grid on (0, r_max]: r_j = (j + 1/2) h, j = 0..n-1.
///
/// Integrals of radial functions over R^d are midpoint sums
///   omega * sum_j f(r_j) r_j^{d-1-w} h,
/// with omega the area of the unit sphere S^{d-1}. The offset keeps every node
/// away from the origin, where c/r^2 and |x|^{-b} are singular.
class RadialGrid {
public:
    RadialGrid(int d, int n, double h);

    /// Grid with n = round(r_max / h) cells.
    static std::shared_ptr<const RadialGrid> make(int d, double r_max, double h);

    int d() const { return d_; }
    int n() const { return n_; }
    double h() const { return h_; }
    double r_max() const { return n_ * h_; }
    double omega() const { return omega_; }

    double r(int j) const { return (j + 0.5) * h_; }
    /// Cell face r_{j+1/2} = (j + 1) h.
    double face(int j) const { return (j + 1) * h_; }
    /// Flux weight of face j: (r_{j+1}^d - r_j^d) / (d h), the mean of r^{d-1} between the
    /// adjacent nodes. Equals face(j)^{d-1} + O(h^2); with it the discrete Dirichlet form is
    /// the exact Dirichlet energy of the piecewise-linear interpolant.
    double face_weight(int j) const { return face_weights_[static_cast<std::size_t>(j)]; }
    const std::vector<double>& nodes() const { return nodes_; }

    /// Quadrature weight omega * r_j^{d-1} h of the plain measure dx.
    double weight(int j) const { return weights_[static_cast<std::size_t>(j)]; }

private:
    int d_;
    int n_;
    double h_;
    double omega_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> face_weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Area of the unit sphere in R^d, 2 pi^{d/2} / Gamma(d/2), via the half-integer recursion.
double unit_sphere_area(int d);

/// Complex radial profile sampled at the grid nodes.
struct RadialField {
    GridPtr grid;
    std::vector<Complex> values;

    RadialField() = default;
    RadialField(GridPtr g, std::vector<Complex> v);
    explicit RadialField(GridPtr g);

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t j) { return values[j]; }
    const Complex& operator[](std::size_t j) const { return values[j]; }

    /// Sample f(r) at the nodes.
    template <class F>
    static RadialField sample(GridPtr g, F&& f) {
        RadialField out(g);
        for (int j = 0; j < g->n(); ++j) out.values[static_cast<std::size_t>(j)] = f(g->r(j));
        return out;
    }
};

RadialField operator*(Complex a, const RadialField& u);
RadialField operator-(const RadialField& u, const RadialField& v);

/// r^p, by repeated multiplication when p is a small integer.
double radial_power(double r, double p);

/// omega * sum_j f_j r_j^{d-1-w} h, i.e. the integral of |x|^{-w} f(|x|) over R^d.
/// Rejects w >= d (non-integrable weight at the origin).
double integrate(const RadialGrid& grid, std::span<const double> f, double w = 0.0);

/// Weighted inner product Re <u, v> = sum_j weight_j Re(conj(u_j) v_j).
double inner(const RadialField& u, const RadialField& v);
double norm(const RadialField& u);

/// Second-order d/dr: centred differences inside, one-sided three-point stencils at both ends.
std::vector<Complex> ddr(const RadialField& u);

/// Tridiagonal operator (Lu)_j = lower_j u_{j-1} + diag_j u_j + upper_j u_{j+1}.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const { return diag.size(); }
    std::vector<Complex> apply(std::span<const Complex> u) const;
    std::vector<double> apply(std::span<const double> u) const;
};

/// Discrete P_c = -Delta + c/r^2 in flux form with face weights face_weight(j). There is
/// no face at r = 0 (zero flux), and the ghost value beyond r_max is zero (Dirichlet).
/// The matrix is symmetric in the weighted inner product.
Tridiagonal pc_operator(const RadialGrid& grid, double c);

RadialField apply_pc(const RadialField& u, double c);

/// Solve (diag-dominant) complex tridiagonal system by the Thomas algorithm.
/// Throws std::runtime_error on a vanishing pivot.
std::vector<Complex> solve_tridiagonal(std::span<const Complex> lower, std::span<const Complex> diag,
                                       std::span<const Complex> upper, std::span<const Complex> rhs);
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

// Field CSV: header "r,re_u,im_u", one row per node.
void write_field_csv(std::ostream& out, const RadialField& u);
void write_field_csv(const std::string& path, const RadialField& u);
RadialField read_field_csv(const std::string& path, int d);

/// Full round-trip scientific notation.
std::string format_number(double x);

}  // namespace inlsc
