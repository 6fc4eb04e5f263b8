#include "inlsc/radial_grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace inlsc {

double unit_sphere_area(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    // Gamma(d/2): start from Gamma(1) = 1 or Gamma(1/2) = sqrt(pi), step by Gamma(x+1) = x Gamma(x).
    double gamma = (d % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
    for (double x = (d % 2 == 0) ? 1.0 : 0.5; x + 1.0 <= 0.5 * d; x += 1.0) gamma *= x;
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / gamma;
}

RadialGrid::RadialGrid(int d, int n, double h) : d_(d), n_(n), h_(h), omega_(unit_sphere_area(d)) {
    if (d < 1) throw std::invalid_argument("dimension must be positive");
    if (n < 3) throw std::invalid_argument("radial grid needs at least 3 nodes");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid spacing must be positive");
    nodes_.resize(static_cast<std::size_t>(n));
    weights_.resize(static_cast<std::size_t>(n));
    face_weights_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        nodes_[k] = r(j);
        weights_[k] = omega_ * radial_power(r(j), d - 1) * h;
        face_weights_[k] = (radial_power(r(j + 1), d) - radial_power(r(j), d)) / (d * h);
    }
}

std::shared_ptr<const RadialGrid> RadialGrid::make(int d, double r_max, double h) {
    if (!(h > 0.0) || !(r_max > 0.0)) throw std::invalid_argument("r_max and h must be positive");
    return std::make_shared<const RadialGrid>(d, static_cast<int>(std::lround(r_max / h)), h);
}

RadialField::RadialField(GridPtr g, std::vector<Complex> v) : grid(std::move(g)), values(std::move(v)) {
    if (!grid) throw std::invalid_argument("field needs a grid");
    if (values.size() != static_cast<std::size_t>(grid->n()))
        throw std::invalid_argument("field length does not match grid");
}

RadialField::RadialField(GridPtr g) : grid(std::move(g)) {
    if (!grid) throw std::invalid_argument("field needs a grid");
    values.assign(static_cast<std::size_t>(grid->n()), Complex{});
}

RadialField operator*(Complex a, const RadialField& u) {
    RadialField out = u;
    for (auto& v : out.values) v *= a;
    return out;
}

RadialField operator-(const RadialField& u, const RadialField& v) {
    if (u.size() != v.size()) throw std::invalid_argument("field size mismatch");
    RadialField out = u;
    for (std::size_t j = 0; j < out.size(); ++j) out.values[j] -= v.values[j];
    return out;
}

double radial_power(double r, double p) {
    const double k = std::round(p);
    if (k != p || std::abs(k) > 16) return std::pow(r, p);
    double out = 1.0;
    for (int i = 0; i < static_cast<int>(std::abs(k)); ++i) out *= r;
    return k < 0 ? 1.0 / out : out;
}

double integrate(const RadialGrid& grid, std::span<const double> f, double w) {
    if (w >= grid.d()) throw std::invalid_argument("weight |x|^{-w} with w >= d is not integrable at 0");
    if (f.size() != static_cast<std::size_t>(grid.n())) throw std::invalid_argument("integrand length mismatch");
    double sum = 0.0;
    const double p = grid.d() - 1 - w;
    for (int j = 0; j < grid.n(); ++j) sum += f[static_cast<std::size_t>(j)] * radial_power(grid.r(j), p);
    return grid.omega() * grid.h() * sum;
}

double inner(const RadialField& u, const RadialField& v) {
    if (u.size() != v.size()) throw std::invalid_argument("field size mismatch");
    double s = 0.0;
    for (int j = 0; j < u.grid->n(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        s += u.grid->weight(j) * std::real(std::conj(u.values[k]) * v.values[k]);
    }
    return s;
}

double norm(const RadialField& u) { return std::sqrt(inner(u, u)); }

std::vector<Complex> ddr(const RadialField& u) {
    const auto n = u.size();
    if (n < 3) throw std::invalid_argument("ddr needs at least 3 nodes");
    const double h = u.grid->h();
    const auto& v = u.values;
    std::vector<Complex> out(n);
    out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (v[j + 1] - v[j - 1]) / (2.0 * h);
    out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return out;
}

namespace {
template <class T>
std::vector<T> tri_apply(const Tridiagonal& t, std::span<const T> u) {
    const auto n = t.size();
    if (u.size() != n) throw std::invalid_argument("operator size mismatch");
    std::vector<T> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        T acc = t.diag[j] * u[j];
        if (j > 0) acc += t.lower[j] * u[j - 1];
        if (j + 1 < n) acc += t.upper[j] * u[j + 1];
        out[j] = acc;
    }
    return out;
}

template <class T>
std::vector<T> thomas(std::span<const T> lower, std::span<const T> diag, std::span<const T> upper,
                      std::span<const T> rhs) {
    const auto n = diag.size();
    if (lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("tridiagonal size mismatch");
    std::vector<T> c_prime(n), d_prime(n);
    T pivot = diag[0];
    if (std::abs(pivot) == 0.0) throw std::runtime_error("singular tridiagonal system");
    c_prime[0] = upper[0] / pivot;
    d_prime[0] = rhs[0] / pivot;
    for (std::size_t j = 1; j < n; ++j) {
        pivot = diag[j] - lower[j] * c_prime[j - 1];
        if (std::abs(pivot) == 0.0 || !std::isfinite(std::abs(pivot)))
            throw std::runtime_error("singular tridiagonal system");
        c_prime[j] = upper[j] / pivot;
        d_prime[j] = (rhs[j] - lower[j] * d_prime[j - 1]) / pivot;
    }
    std::vector<T> x(n);
    x[n - 1] = d_prime[n - 1];
    for (std::size_t j = n - 1; j-- > 0;) x[j] = d_prime[j] - c_prime[j] * x[j + 1];
    return x;
}
}  // namespace

std::vector<Complex> Tridiagonal::apply(std::span<const Complex> u) const { return tri_apply(*this, u); }
std::vector<double> Tridiagonal::apply(std::span<const double> u) const { return tri_apply(*this, u); }

Tridiagonal pc_operator(const RadialGrid& grid, double c) {
    const int n = grid.n();
    const double h2 = grid.h() * grid.h();
    Tridiagonal t;
    t.lower.assign(static_cast<std::size_t>(n), 0.0);
    t.diag.assign(static_cast<std::size_t>(n), 0.0);
    t.upper.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        const double rj = grid.r(j);
        const double scale = 1.0 / (radial_power(rj, grid.d() - 1) * h2);
        const double f_out = grid.face_weight(j);
        const double f_in = j > 0 ? grid.face_weight(j - 1) : 0.0;
        t.diag[k] = (f_out + f_in) * scale + c / (rj * rj);
        if (j > 0) t.lower[k] = -f_in * scale;
        if (j + 1 < n) t.upper[k] = -f_out * scale;
    }
    return t;
}

RadialField apply_pc(const RadialField& u, double c) {
    const auto op = pc_operator(*u.grid, c);
    return RadialField(u.grid, op.apply(std::span<const Complex>(u.values)));
}

std::vector<Complex> solve_tridiagonal(std::span<const Complex> lower, std::span<const Complex> diag,
                                       std::span<const Complex> upper, std::span<const Complex> rhs) {
    return thomas(lower, diag, upper, rhs);
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
    return thomas(lower, diag, upper, rhs);
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}

void write_field_csv(std::ostream& out, const RadialField& u) {
    out << "r,re_u,im_u\n";
    for (int j = 0; j < u.grid->n(); ++j) {
        const auto& v = u.values[static_cast<std::size_t>(j)];
        out << format_number(u.grid->r(j)) << ',' << format_number(v.real()) << ',' << format_number(v.imag())
            << '\n';
    }
}

void write_field_csv(const std::string& path, const RadialField& u) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_field_csv(out, u);
}

RadialField read_field_csv(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("r,", 0) != 0)
        throw std::runtime_error(path + ": missing field CSV header");
    std::vector<double> rs;
    std::vector<Complex> vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        rs.push_back(std::stod(a));
        vs.emplace_back(std::stod(b), std::stod(c));
    }
    if (rs.size() < 3) throw std::runtime_error(path + ": field needs at least 3 rows");
    const double h = 2.0 * rs[0];
    for (std::size_t j = 0; j < rs.size(); ++j)
        if (std::abs(rs[j] - (j + 0.5) * h) > 1e-9 * (1.0 + rs[j]))
            throw std::runtime_error(path + ": nodes are not on a cell-centred grid");
    for (const auto& v : vs)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error(path + ": non-finite field value");
    auto grid = std::make_shared<const RadialGrid>(d, static_cast<int>(rs.size()), h);
    return RadialField(grid, std::move(vs));
}

}  // namespace inlsc
