#include "kgws/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

constexpr double exact_r_min = 1e-4;

// Energy-independent pieces of W(r; E) = cent + (m^2 - (E - V)^2) / (hbar c)^2.
struct Problem {
    std::vector<double> r;
    std::vector<double> cent;
    std::vector<double> mass;
    std::vector<double> pot;
    double h = 0.0;
    double inv_hc2 = 0.0;
    int match = 0;
    int l = 0;
    bool exact = false;
};

Problem make_problem(int l, const SystemParams& p, const PekerisCoefficients* d, const RadialGrid& grid)
{
    if (l < 0) throw DomainError("shooting: l must be non-negative");
    if (!(p.a > 0.0) || !(p.r0 > 0.0) || !(p.q > 0.0)) throw ValidationError("shooting: a, r0 and q must be positive");

    Problem pr;
    pr.l = l;
    pr.exact = d == nullptr;
    const int count = grid.size();
    const double r_first = pr.exact ? std::max(grid.r_min(), exact_r_min) : grid.r_min();
    pr.h = (grid.r_max() - r_first) / (count - 1);
    pr.inv_hc2 = 1.0 / (p.hbar_c * p.hbar_c);
    pr.r.resize(count);
    pr.cent.resize(count);
    pr.mass.resize(count);
    pr.pot.resize(count);
    for (int i = 0; i < count; ++i) {
        const double r = i == count - 1 ? grid.r_max() : r_first + pr.h * i;
        const double x = r - p.r0;
        pr.r[i] = r;
        pr.cent[i] = pr.exact ? centrifugal_exact(r, l) : centrifugal_approx(x, l, p, *d);
        pr.mass[i] = mass_energy(x, p);
        pr.pot[i] = woods_saxon_potential(r, p);
    }
    const auto it = std::min_element(pr.r.begin(), pr.r.end(), [&](double u, double v) {
        return std::abs(u - p.r0) < std::abs(v - p.r0);
    });
    pr.match = std::clamp(static_cast<int>(it - pr.r.begin()), 2, count - 3);
    return pr;
}

struct Shot {
    double mismatch = 0.0;
    std::vector<double> phi;  // outward for i <= match, scaled inward beyond
};

void rescale_if_large(std::vector<double>& v, int from, int to)
{
    const double big = 1e150;
    const int last = std::max(from, to);
    const int first = std::min(from, to);
    if (std::abs(v[to]) < big) return;
    for (int i = first; i <= last; ++i) v[i] /= big;
}

Shot shoot(const Problem& pr, double energy, bool keep_phi)
{
    const int count = static_cast<int>(pr.r.size());
    const int m = pr.match;
    const double h2 = pr.h * pr.h / 12.0;

    std::vector<double> f(count);
    for (int i = 0; i < count; ++i) {
        const double ev = energy - pr.pot[i];
        const double w = pr.cent[i] + (pr.mass[i] * pr.mass[i] - ev * ev) * pr.inv_hc2;
        f[i] = 1.0 - h2 * w;
    }

    std::vector<double> out(count, 0.0);
    if (pr.exact) {
        out[0] = std::pow(pr.r[0], pr.l + 1);
        out[1] = std::pow(pr.r[1], pr.l + 1);
    } else {
        out[0] = 0.0;
        out[1] = pr.h;
    }
    for (int i = 1; i <= m; ++i) {
        out[i + 1] = ((12.0 - 10.0 * f[i]) * out[i] - f[i - 1] * out[i - 1]) / f[i + 1];
        rescale_if_large(out, 0, i + 1);
    }

    std::vector<double> in(count, 0.0);
    in[count - 1] = 0.0;
    in[count - 2] = 1e-20;
    for (int i = count - 2; i > m; --i) {
        in[i - 1] = ((12.0 - 10.0 * f[i]) * in[i] - f[i + 1] * in[i + 1]) / f[i - 1];
        rescale_if_large(in, count - 1, i - 1);
    }

    // Discrete Wronskian of the Numerov variables f*phi, conserved by the
    // recurrence, normalized to the sine of the angle between the two
    // solution vectors so that it stays finite for every E.
    const double ao = f[m] * out[m], bo = f[m + 1] * out[m + 1];
    const double ai = f[m] * in[m], bi = f[m + 1] * in[m + 1];
    const double norm = std::hypot(ao, bo) * std::hypot(ai, bi);
    Shot s;
    s.mismatch = norm > 0.0 ? (ao * bi - bo * ai) / norm : 0.0;

    if (keep_phi) {
        const double scale = std::abs(in[m]) > std::abs(in[m + 1]) ? out[m] / in[m] : out[m + 1] / in[m + 1];
        s.phi = std::move(out);
        for (int i = m + 1; i < count; ++i) s.phi[i] = scale * in[i];
    }
    return s;
}

int nodes_of(const std::vector<double>& phi)
{
    double peak = 0.0;
    for (double v : phi) peak = std::max(peak, std::abs(v));
    const double floor = 1e-10 * peak;
    int nodes = 0;
    int prev_sign = 0;
    for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
        if (std::abs(phi[i]) <= floor) continue;
        const int s = phi[i] > 0.0 ? 1 : -1;
        if (prev_sign != 0 && s != prev_sign) ++nodes;
        prev_sign = s;
    }
    return nodes;
}

struct Root {
    double energy;
    double mismatch;
    int nodes;
};

std::vector<Root> roots_in(const Problem& pr, double lo, double hi, int samples)
{
    std::vector<Root> roots;
    auto g = [&](double e) { return shoot(pr, e, false).mismatch; };
    double e_prev = lo;
    double g_prev = g(lo);
    for (int k = 1; k <= samples; ++k) {
        const double e = lo + (hi - lo) * k / samples;
        const double gv = g(e);
        if ((g_prev < 0.0 && gv > 0.0) || (g_prev > 0.0 && gv < 0.0)) {
            std::uintmax_t iters = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                g, e_prev, e, g_prev, gv, boost::math::tools::eps_tolerance<double>(50), iters);
            const double root = 0.5 * (bracket.first + bracket.second);
            const Shot s = shoot(pr, root, true);
            roots.push_back({root, s.mismatch, nodes_of(s.phi)});
        }
        e_prev = e;
        g_prev = gv;
    }
    return roots;
}

OracleResult solve(const Problem& pr, int n, Branch branch, const SystemParams& p, const ShootOptions& opts)
{
    if (n < 0) throw DomainError("shooting: n must be non-negative");
    const auto [lo, hi] = shooting_range(branch, p);

    auto pick = [&](const std::vector<Root>& roots) -> const Root* {
        for (const Root& r : roots)
            if (r.nodes == n) return &r;
        return nullptr;
    };

    std::vector<Root> roots;
    if (opts.guess) {
        const double a = std::max(lo, *opts.guess - 10.0);
        const double b = std::min(hi, *opts.guess + 10.0);
        if (a < b) roots = roots_in(pr, a, b, 200);
    }
    const Root* found = pick(roots);
    if (!found) {
        roots = roots_in(pr, lo, hi, opts.scan_points);
        found = pick(roots);
    }
    if (!found) {
        if (roots.empty())
            throw NoBoundState("shooting: no eigenvalue on the " + std::string(to_string(branch)) + " branch");
        const Root* nearest = &roots.front();
        for (const Root& r : roots)
            if (std::abs(r.nodes - n) < std::abs(nearest->nodes - n)) nearest = &r;
        throw NodeCountMismatch("shooting: no eigenvalue with " + std::to_string(n) + " nodes", nearest->nodes);
    }

    OracleResult res;
    res.energy = found->energy;
    res.match_residual = std::abs(found->mismatch);
    res.node_count = found->nodes;
    return res;
}

} // namespace

std::pair<double, double> shooting_range(Branch branch, const SystemParams& p)
{
    const double mc2 = p.rest_energy();
    const double eps = 1e-6 * mc2;
    if (branch == Branch::particle) return {eps, mc2 - eps};
    return {-mc2 + eps, -eps};
}

OracleResult shoot_approximated(int n, int l, Branch branch, const SystemParams& p,
                                const PekerisCoefficients& d, const RadialGrid& grid, const ShootOptions& opts)
{
    OracleResult res = solve(make_problem(l, p, &d, grid), n, branch, p, opts);
    if (opts.estimate_convergence) {
        ShootOptions fine = opts;
        fine.guess = res.energy;
        fine.estimate_convergence = false;
        const OracleResult r2 = solve(make_problem(l, p, &d, grid.refined()), n, branch, p, fine);
        res.grid_convergence = std::abs(r2.energy - res.energy);
    }
    return res;
}

OracleResult shoot_exact_centrifugal(int n, int l, Branch branch, const SystemParams& p, const RadialGrid& grid,
                                     const ShootOptions& opts)
{
    OracleResult res = solve(make_problem(l, p, nullptr, grid), n, branch, p, opts);
    if (opts.estimate_convergence) {
        ShootOptions fine = opts;
        fine.guess = res.energy;
        fine.estimate_convergence = false;
        const OracleResult r2 = solve(make_problem(l, p, nullptr, grid.refined()), n, branch, p, fine);
        res.grid_convergence = std::abs(r2.energy - res.energy);
    }
    return res;
}

double observed_convergence_order(int n, int l, Branch branch, const SystemParams& p,
                                  const PekerisCoefficients& d, const RadialGrid& grid,
                                  std::optional<double> guess)
{
    ShootOptions opts;
    opts.guess = guess;
    opts.estimate_convergence = false;
    const double e1 = solve(make_problem(l, p, &d, grid), n, branch, p, opts).energy;
    opts.guess = e1;
    const RadialGrid g2 = grid.refined();
    const double e2 = solve(make_problem(l, p, &d, g2), n, branch, p, opts).energy;
    const double e3 = solve(make_problem(l, p, &d, g2.refined()), n, branch, p, opts).energy;
    return std::log2(std::abs(e1 - e2) / std::abs(e2 - e3));
}

ResidualReport verify_state(const Eigenfunction& phi, const RadialGrid& grid, std::optional<double> energy)
{
    const SystemParams& p = phi.state.params;
    const PekerisCoefficients& d = phi.state.pekeris;
    const double e = energy.value_or(phi.state.energy);
    const double inv_hc2 = 1.0 / (p.hbar_c * p.hbar_c);

    ResidualReport rep;
    double peak = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        const double x = r - p.r0;
        const PhiJet j = phi.jet(r);
        const double m = mass_energy(x, p);
        const double ev = e - woods_saxon_potential(r, p);
        const double w = centrifugal_approx(x, phi.state.l, p, d) + (m * m - ev * ev) * inv_hc2;
        const double res = std::abs(j.d2 - w * j.value);
        peak = std::max(peak, std::abs(j.value));
        rep.max_w_phi = std::max(rep.max_w_phi, std::abs(w * j.value));
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.at_r = r;
        }
    }
    if (!(peak > 0.0) || !(rep.max_w_phi > 0.0))
        throw DomainError("verify_state: eigenfunction vanishes identically on the grid");
    rep.relative = rep.max_residual / rep.max_w_phi;
    return rep;
}

} // namespace kgws
