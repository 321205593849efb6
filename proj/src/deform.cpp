#include "ptopo/deform.hpp"

#include "ptopo/volume.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace ptopo {

Rat GradedNeighborhood::radius(int i) const {
    Rat r = delta;
    for (int t = 0; t < i; ++t) r /= c0;
    return r;
}

GradedNeighborhood make_graded_neighborhood(const SimplicialComplex& k, int j, const Rat& delta,
                                            const Rat& c0) {
    require_input(j >= 0 && j <= k.dim(), "skeleton index out of range");
    require_input(delta > 0, "delta must be positive");
    require_input(c0 >= 1, "grading constant must be at least 1");
    return GradedNeighborhood{&k, j, delta, c0};
}

GradedNeighborhood make_graded_neighborhood(const SimplicialComplex& k, int j) {
    require_input(k.count(1) > 0, "complex has no edges to derive a feature size from");
    Rat min_sq = -1;
    for (size_t e = 0; e < k.count(1); ++e) {
        auto pts = k.simplex_points(1, e);
        RatVec d = vsub(pts[1], pts[0]);
        Rat sq = dot(d, d);
        if (min_sq < 0 || sq < min_sq) min_sq = sq;
    }
    Real feature = sqrt(to_real(min_sq));
    Rat delta = rationalize(feature / 8, 64);
    if (delta <= 0) delta = Rat(1, Int(1) << 62);
    return make_graded_neighborhood(k, j, delta, Rat(4));
}

Rat simplex_dist2(const SimplicialComplex& k, int d, size_t i, const RatPoint& p) {
    return dist2_point_hull(k.simplex_points(d, i), p);
}

bool v_delta_contains(const GradedNeighborhood& n, const RatPoint& p) {
    for (int i = 0; i <= n.j; ++i) {
        Rat r = n.radius(i);
        Rat r2 = r * r;
        for (size_t s = 0; s < n.k->count(i); ++s)
            if (simplex_dist2(*n.k, i, s, p) < r2) return true;
    }
    return false;
}

namespace {

using DVec = std::vector<double>;

double dsub_norm(const DVec& a, const DVec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

// distance from x to a simplex given by double vertices: enumerate
// faces, project onto each affine hull, keep admissible projections
double simplex_dist_double(const std::vector<DVec>& pts, const DVec& x) {
    size_t n = pts.size();
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<const DVec*> face;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) face.push_back(&pts[i]);
        size_t k = face.size() - 1;
        // solve gram system for projection coefficients
        std::vector<DVec> e(k);
        for (size_t i = 0; i < k; ++i) {
            e[i].resize(x.size());
            for (size_t c = 0; c < x.size(); ++c) e[i][c] = (*face[i + 1])[c] - (*face[0])[c];
        }
        std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0));
        for (size_t i = 0; i < k; ++i) {
            for (size_t j = 0; j < k; ++j)
                for (size_t c = 0; c < x.size(); ++c) g[i][j] += e[i][c] * e[j][c];
            for (size_t c = 0; c < x.size(); ++c) g[i][k] += e[i][c] * (x[c] - (*face[0])[c]);
        }
        // gaussian elimination
        bool singular = false;
        for (size_t col = 0; col < k; ++col) {
            size_t piv = col;
            for (size_t r = col + 1; r < k; ++r)
                if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
            if (std::fabs(g[piv][col]) < 1e-14) { singular = true; break; }
            std::swap(g[piv], g[col]);
            for (size_t r = 0; r < k; ++r) {
                if (r == col) continue;
                double f = g[r][col] / g[col][col];
                for (size_t c2 = col; c2 <= k; ++c2) g[r][c2] -= f * g[col][c2];
            }
        }
        if (singular) continue;
        std::vector<double> lam(k);
        double sum = 0;
        bool ok = true;
        for (size_t i = 0; i < k; ++i) {
            lam[i] = g[i][k] / g[i][i];
            if (lam[i] < -1e-12) ok = false;
            sum += lam[i];
        }
        if (!ok || sum > 1 + 1e-12) continue;
        DVec proj = *face[0];
        for (size_t i = 0; i < k; ++i)
            for (size_t c = 0; c < x.size(); ++c) proj[c] += lam[i] * e[i][c];
        best = std::min(best, dsub_norm(proj, x));
    }
    return best;
}

DVec to_double(const RatPoint& p) {
    DVec d(p.size());
    for (size_t i = 0; i < p.size(); ++i) d[i] = p[i].convert_to<double>();
    return d;
}

} // namespace

AuditReport boundary_regularity_audit(const GradedNeighborhood& n, size_t samples, uint64_t seed,
                                      double tol) {
    AuditReport report;
    const SimplicialComplex& k = *n.k;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0, 1);

    // double caches
    std::vector<std::vector<std::vector<DVec>>> simp(n.j + 1);
    std::vector<double> radius(n.j + 1);
    for (int i = 0; i <= n.j; ++i) {
        radius[i] = n.radius(i).convert_to<double>();
        simp[i].resize(k.count(i));
        for (size_t s = 0; s < k.count(i); ++s) {
            for (const auto& p : k.simplex_points(i, s)) simp[i][s].push_back(to_double(p));
        }
    }
    size_t dim = k.ambient_dim();

    auto min_ratio = [&](const DVec& x) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n.j; ++i)
            for (const auto& pts : simp[i])
                best = std::min(best, simplex_dist_double(pts, x) / radius[i]);
        return best;
    };
    auto classify = [&](const DVec& x) {
        ++report.samples;
        double mr = min_ratio(x);
        if (std::fabs(mr - 1) > tol) return; // not near the boundary
        ++report.boundary_candidates;
        for (int i = 0; i <= n.j; ++i) {
            size_t touching = 0;
            for (const auto& pts : simp[i]) {
                double r = simplex_dist_double(pts, x) / radius[i];
                if (std::fabs(r - 1) <= tol) ++touching;
            }
            if (touching >= 2) report.violations.push_back({x, i, touching});
        }
    };

    auto random_point_on = [&](const std::vector<DVec>& pts) {
        std::vector<double> w(pts.size());
        double tot = 0;
        for (auto& v : w) {
            v = unif(rng);
            tot += v;
        }
        DVec x(dim, 0);
        for (size_t a = 0; a < pts.size(); ++a)
            for (size_t c = 0; c < dim; ++c) x[c] += w[a] / tot * pts[a][c];
        return x;
    };
    auto random_dir = [&]() {
        std::normal_distribution<double> nd(0, 1);
        DVec d(dim);
        double s = 0;
        for (auto& v : d) {
            v = nd(rng);
            s += v * v;
        }
        s = std::sqrt(s);
        for (auto& v : d) v /= s;
        return d;
    };

    // random shell samples
    size_t random_budget = samples / 2;
    for (size_t t = 0; t < random_budget; ++t) {
        int i = static_cast<int>(rng() % static_cast<uint64_t>(n.j + 1));
        if (simp[i].empty()) continue;
        const auto& pts = simp[i][rng() % simp[i].size()];
        DVec q = random_point_on(pts);
        DVec dir = random_dir();
        DVec x = q;
        for (size_t c = 0; c < dim; ++c) x[c] += radius[i] * dir[c];
        // scale along the ray until the point sits on the boundary
        double lo = 0, hi = 4;
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            DVec y = q;
            for (size_t c = 0; c < dim; ++c) y[c] += mid * radius[i] * dir[c];
            if (min_ratio(y) < 1)
                lo = mid;
            else
                hi = mid;
        }
        DVec y = q;
        for (size_t c = 0; c < dim; ++c) y[c] += hi * radius[i] * dir[c];
        classify(y);
    }

    // adversarial pass: push toward equidistant loci of same-dimension pairs
    size_t pair_budget = samples - random_budget;
    std::vector<std::pair<std::pair<int, size_t>, std::pair<int, size_t>>> pairs;
    for (int i = 0; i <= n.j; ++i)
        for (size_t a = 0; a < simp[i].size(); ++a)
            for (size_t b = a + 1; b < simp[i].size(); ++b)
                pairs.push_back({{i, a}, {i, b}});
    if (!pairs.empty())
        for (size_t t = 0; t < pair_budget; ++t) {
            auto [sa, sb] = pairs[t % pairs.size()];
            int i = sa.first;
            const auto& pa = simp[i][sa.second];
            const auto& pb = simp[i][sb.second];
            DVec x = random_point_on(pa);
            DVec dir = random_dir();
            for (size_t c = 0; c < dim; ++c) x[c] += radius[i] * dir[c];
            // alternate projections to both spheres
            for (int it = 0; it < 80; ++it) {
                for (const auto* pts : {&pa, &pb}) {
                    double d = simplex_dist_double(*pts, x);
                    if (d < 1e-12) break;
                    // move along the gradient of the distance toward radius
                    double step = (radius[i] - d);
                    // approximate foot direction by finite differences
                    DVec grad(dim, 0);
                    for (size_t c = 0; c < dim; ++c) {
                        DVec xp = x;
                        xp[c] += 1e-6;
                        grad[c] = (simplex_dist_double(*pts, xp) - d) / 1e-6;
                    }
                    for (size_t c = 0; c < dim; ++c) x[c] += step * grad[c];
                }
            }
            classify(x);
        }
    return report;
}

void ProfileParams::validate() const {
    require_input(delta_a > 0 && eta > 0, "profile parameters must be positive");
    require_input(3 * delta_a < eta, "profile needs 3*delta_a < eta");
    require_input(mu >= 0, "profile slope must be nonnegative");
}

double phi_profile(const ProfileParams& p, double t) {
    p.validate();
    if (t <= 2 * p.delta_a) return p.mu * t; // extended linearly to t < 0
    if (t <= p.eta - p.delta_a) {
        double slope = (p.eta - p.delta_a - 2 * p.mu * p.delta_a) / (p.eta - 3 * p.delta_a);
        return slope * (t - 2 * p.delta_a) + 2 * p.mu * p.delta_a;
    }
    return t;
}

namespace {

// normalized C^2 bump on [-1, 1]
double bump(double x) {
    double u = 1 - x * x;
    if (u <= 0) return 0;
    return 35.0 / 32.0 * u * u * u;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double tol, int depth) {
    double m = (a + b) / 2;
    double lm = (a + m) / 2, rm = (m + b) / 2;
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15 * tol)
        return left + right + (left + right - whole) / 15;
    return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (b <= a) return 0;
    double m = (a + b) / 2;
    return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

// integral of g(t - w x) * bump(x) over [-1, 1], split at the kinks of g
double mollify(const std::function<double(double)>& g, const std::vector<double>& kinks, double t,
               double w, double tol) {
    std::vector<double> cuts{-1, 1};
    for (double kk : kinks) {
        double x = (t - kk) / w;
        if (x > -1 && x < 1) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0;
    auto f = [&](double x) { return g(t - w * x) * bump(x); };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1], tol);
    return total;
}

} // namespace

double smooth_profile(const ProfileParams& p, double t) {
    p.validate();
    double w = p.delta_a / 2;
    auto g = [&](double s) { return phi_profile(p, s); };
    return mollify(g, {0, 2 * p.delta_a, p.eta - p.delta_a}, t, w, 1e-13);
}

double smooth_profile_derivative(const ProfileParams& p, double t) {
    p.validate();
    double w = p.delta_a / 2;
    double mid_slope = (p.eta - p.delta_a - 2 * p.mu * p.delta_a) / (p.eta - 3 * p.delta_a);
    auto g = [&](double s) {
        if (s <= 2 * p.delta_a) return p.mu;
        if (s <= p.eta - p.delta_a) return mid_slope;
        return 1.0;
    };
    return mollify(g, {2 * p.delta_a, p.eta - p.delta_a}, t, w, 1e-13);
}

std::vector<double> radial_squash(double mu, const ProfileParams& p, std::vector<double> x) {
    double r = 0;
    for (double c : x) r += c * c;
    r = std::sqrt(r);
    if (r == 0) return x; // zero maps to zero
    ProfileParams q = p;
    q.mu = mu;
    double scale = smooth_profile(q, r) / r;
    for (double& c : x) c *= scale;
    return x;
}

SimplexDistFunction::SimplexDistFunction(std::vector<std::vector<double>> simplex_vertices,
                                         double c0)
    : m_(static_cast<int>(simplex_vertices.size()) - 1), c0_(c0),
      verts_(std::move(simplex_vertices)) {
    require_input(m_ >= 1 && m_ <= 3, "simplex distance function supports dimensions 1..3");
    for (const auto& v : verts_)
        require_input(static_cast<int>(v.size()) == m_, "simplex must be full-dimensional");
    // facet i omits vertex i; inward normal points toward vertex i
    for (size_t drop = 0; drop < verts_.size(); ++drop) {
        std::vector<std::vector<double>> face;
        for (size_t i = 0; i < verts_.size(); ++i)
            if (i != drop) face.push_back(verts_[i]);
        // normal: solve for n with n.(face[j]-face[0]) = 0, |n|=1, n.(apex-face[0])>0
        std::vector<double> n(m_, 0);
        if (m_ == 1) {
            n[0] = 1;
        } else if (m_ == 2) {
            double ex = face[1][0] - face[0][0], ey = face[1][1] - face[0][1];
            n[0] = -ey;
            n[1] = ex;
        } else {
            double ax = face[1][0] - face[0][0], ay = face[1][1] - face[0][1],
                   az = face[1][2] - face[0][2];
            double bx = face[2][0] - face[0][0], by = face[2][1] - face[0][1],
                   bz = face[2][2] - face[0][2];
            n[0] = ay * bz - az * by;
            n[1] = az * bx - ax * bz;
            n[2] = ax * by - ay * bx;
        }
        double len = 0;
        for (double c : n) len += c * c;
        len = std::sqrt(len);
        for (double& c : n) c /= len;
        double apex = 0;
        for (int c = 0; c < m_; ++c) apex += n[c] * (verts_[drop][c] - face[0][c]);
        if (apex < 0)
            for (double& c : n) c = -c;
        double off = 0;
        for (int c = 0; c < m_; ++c) off += n[c] * face[0][c];
        normals_.push_back(n);
        offsets_.push_back(off);
    }
}

double SimplexDistFunction::boundary_dist(const std::vector<double>& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (size_t f = 0; f < normals_.size(); ++f) {
        double v = -offsets_[f];
        for (int c = 0; c < m_; ++c) v += normals_[f][c] * x[c];
        best = std::min(best, v);
    }
    return best;
}

double SimplexDistFunction::mollified_dist(const std::vector<double>& x, double h) const {
    // fast path: the window ball meets a single active facet region
    size_t active = 0;
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<double> vals(normals_.size());
    for (size_t f = 0; f < normals_.size(); ++f) {
        double v = -offsets_[f];
        for (int c = 0; c < m_; ++c) v += normals_[f][c] * x[c];
        vals[f] = v;
        if (v < dmin) {
            dmin = v;
            active = f;
        }
    }
    bool single = true;
    for (size_t f = 0; f < normals_.size(); ++f) {
        if (f == active) continue;
        // |grad(A_f - A_active)| <= 2, so a margin of 2h keeps the window
        // inside the active region
        if (vals[f] - dmin < 2 * h) { single = false; break; }
    }
    if (single) return dmin; // affine mollifies to itself

    // numeric convolution over [-h,h]^m clipped by the bump support
    int grid = 24;
    double total = 0, weight = 0;
    std::vector<int> idx(m_, 0);
    std::vector<double> gx(grid);
    std::vector<double> gw(grid);
    for (int i = 0; i < grid; ++i) {
        gx[i] = -1 + (2.0 * i + 1.0) / grid;
        gw[i] = 2.0 / grid;
    }
    std::function<void(int, double, std::vector<double>&)> rec =
        [&](int c, double w, std::vector<double>& z) {
            if (c == m_) {
                double r2 = 0;
                for (double zc : z) r2 += zc * zc;
                if (r2 >= 1) return;
                double u = 1 - r2;
                double kern = u * u * u;
                std::vector<double> y(m_);
                for (int cc = 0; cc < m_; ++cc) y[cc] = x[cc] - h * z[cc];
                total += w * kern * boundary_dist(y);
                weight += w * kern;
                return;
            }
            for (int i = 0; i < grid; ++i) {
                z[c] = gx[i];
                rec(c + 1, w * gw[i], z);
            }
        };
    std::vector<double> z(m_, 0);
    rec(0, 1, z);
    require_internal(weight > 0, "empty mollifier window");
    return total / weight;
}

double SimplexDistFunction::value(const std::vector<double>& x) const {
    double u = boundary_dist(x);
    require_input(u >= -1e-12, "point is outside the simplex");
    if (u <= 0) return 0;
    // smoothstep cutoff: 0 below 2^{-k-2}, 1 above 2^{-k-1}
    auto smoothstep = [](double s) {
        if (s <= 0) return 0.0;
        if (s >= 1) return 1.0;
        return s * s * s * (10 + s * (-15 + 6 * s));
    };
    auto t_k = [&](int kk, double uu) {
        double lo = std::pow(2.0, -kk - 2);
        double hi = std::pow(2.0, -kk - 1);
        return smoothstep((uu - lo) / (hi - lo));
    };
    // partition: chi_0 = T_0, chi_k = T_k - T_{k-1}
    double total = 0, covered = 0;
    int kmax = std::max(2, static_cast<int>(std::ceil(-std::log2(std::max(u, 1e-12)))) + 3);
    for (int kk = 0; kk <= kmax; ++kk) {
        double chi = (kk == 0) ? t_k(0, u) : (t_k(kk, u) - t_k(kk - 1, u));
        if (chi <= 0) continue;
        double h = c0_ * std::pow(2.0, -kk);
        total += chi * mollified_dist(x, h);
        covered += chi;
    }
    require_internal(std::fabs(covered - 1) < 1e-9, "dyadic partition of unity gap");
    return total;
}

std::vector<double> SquashChart::apply(const std::vector<double>& x) const {
    std::vector<double> tan(x.begin(), x.begin() + k);
    std::vector<double> nor(x.begin() + k, x.end());
    nor = radial_squash(gamma, params, std::move(nor));
    tan.insert(tan.end(), nor.begin(), nor.end());
    return tan;
}

std::vector<std::vector<double>> SquashChart::jacobian(const std::vector<double>& x) const {
    std::vector<std::vector<double>> jac(d, std::vector<double>(d, 0));
    for (int i = 0; i < k; ++i) jac[i][i] = 1;
    int dn = d - k;
    std::vector<double> y(x.begin() + k, x.end());
    double r2 = 0;
    for (double c : y) r2 += c * c;
    double r = std::sqrt(r2);
    ProfileParams q = params;
    q.mu = gamma;
    if (r < 1e-14) {
        for (int i = 0; i < dn; ++i) jac[k + i][k + i] = gamma;
        return jac;
    }
    double psi = smooth_profile(q, r);
    double dpsi = smooth_profile_derivative(q, r);
    for (int i = 0; i < dn; ++i)
        for (int j = 0; j < dn; ++j) {
            double rad = dpsi * y[i] * y[j] / r2;
            double tang = (psi / r) * ((i == j ? 1.0 : 0.0) - y[i] * y[j] / r2);
            jac[k + i][k + j] = rad + tang;
        }
    return jac;
}

SquashFixture squash_fixture(int m, int k, double delta_a) {
    require_input(m >= 1 && m <= 3 && k >= 0 && k < m, "unsupported fixture dimensions");
    // rational scale ~ 3/4 of delta_a so the patch sits inside the collar
    long denom = 1024;
    long num = static_cast<long>(std::floor(delta_a * 0.75 * denom));
    require_input(num > 0, "delta_a too small for the fixture grid");
    Rat s(num, denom);
    SquashFixture out;
    out.m = m;
    out.k = k;
    if (m == 2 && k == 0) {
        // hexagon fan around the origin (rational approximation)
        std::vector<RatPoint> pts{{Rat(0), Rat(0)}};
        std::vector<std::pair<Rat, Rat>> ring{{Rat(1), Rat(0)},  {Rat(1, 2), Rat(7, 8)},
                                              {Rat(-1, 2), Rat(7, 8)}, {Rat(-1), Rat(0)},
                                              {Rat(-1, 2), Rat(-7, 8)}, {Rat(1, 2), Rat(-7, 8)}};
        for (auto& [cx, cy] : ring) pts.push_back({cx * s, cy * s});
        std::vector<VertexList> tops;
        for (int i = 0; i < 6; ++i) tops.push_back({0, 1 + i, 1 + (i + 1) % 6});
        out.complex = SimplicialComplex::from_simplices(2, pts, tops);
    } else if (m == 2 && k == 1) {
        // strip [-s, s] x [-s, s] around the x-axis, 2x2 cells
        std::vector<RatPoint> pts;
        for (int iy = -1; iy <= 1; ++iy)
            for (int ix = -1; ix <= 1; ++ix) pts.push_back({Rat(ix) * s, Rat(iy) * s});
        auto id = [&](int ix, int iy) { return (iy + 1) * 3 + (ix + 1); };
        std::vector<VertexList> tops;
        for (int iy = -1; iy < 1; ++iy)
            for (int ix = -1; ix < 1; ++ix) {
                tops.push_back({id(ix, iy), id(ix + 1, iy), id(ix + 1, iy + 1)});
                tops.push_back({id(ix, iy), id(ix + 1, iy + 1), id(ix, iy + 1)});
            }
        out.complex = SimplicialComplex::from_simplices(2, pts, tops);
    } else if (m == 3 && k == 1) {
        // box around the x-axis: 1 x 2 x 2 grid of cubes, each cut into
        // 6 tetrahedra sharing the main diagonal
        std::vector<RatPoint> pts;
        auto id = [&](int ix, int iy, int iz) {
            return static_cast<VertexId>(((iz + 1) * 3 + (iy + 1)) * 2 + ix);
        };
        Rat half = s / 2; // keep the normal radius inside the linear collar
        for (int iz = -1; iz <= 1; ++iz)
            for (int iy = -1; iy <= 1; ++iy)
                for (int ix = 0; ix <= 1; ++ix)
                    pts.push_back({Rat(2 * ix - 1) * s, Rat(iy) * half, Rat(iz) * half});
        std::vector<VertexList> tops;
        int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (int iz = -1; iz < 1; ++iz)
            for (int iy = -1; iy < 1; ++iy) {
                int base[3] = {0, iy, iz};
                for (auto& perm : perms) {
                    VertexList tet;
                    int pos[3] = {base[0], base[1], base[2]};
                    tet.push_back(id(pos[0], pos[1], pos[2]));
                    for (int step = 0; step < 3; ++step) {
                        pos[perm[step]] += 1;
                        tet.push_back(id(pos[0], pos[1], pos[2]));
                    }
                    tops.push_back(tet);
                }
            }
        out.complex = SimplicialComplex::from_simplices(3, pts, tops);
    } else {
        fail_input("fixture (m,k) pair not supported");
    }
    return out;
}

MassContractionResult mass_contraction_experiment(int m, int k, const std::vector<double>& gammas,
                                                  const ProfileParams& params, double eps_a,
                                                  double c_constant) {
    params.validate();
    SquashFixture fix = squash_fixture(m, k, params.delta_a);
    const SimplicialComplex& kx = fix.complex;
    MassContractionResult res;
    res.c_constant = c_constant;

    // subdivision quadrature on a barycentric grid
    int grid = 8;
    auto integrate_simplex = [&](const std::vector<DVec>& pts, const SquashChart& chart) {
        // uniform barycentric midpoints
        int mm = static_cast<int>(pts.size()) - 1;
        std::vector<std::vector<double>> samples;
        std::vector<int> comp(mm + 1, 0);
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == mm) {
                comp[pos] = left;
                std::vector<double> lam(mm + 1);
                for (int i = 0; i <= mm; ++i) lam[i] = (comp[i] + 1.0 / (mm + 1)) / grid;
                double tot = 0;
                for (double l : lam) tot += l;
                for (double& l : lam) l /= tot;
                DVec x(pts[0].size(), 0);
                for (int i = 0; i <= mm; ++i)
                    for (size_t c = 0; c < x.size(); ++c) x[c] += lam[i] * pts[i][c];
                samples.push_back(x);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                comp[pos] = v;
                rec(pos + 1, left - v);
            }
        };
        rec(0, grid - 1);
        // tangent frame
        std::vector<DVec> frame(mm);
        for (int i = 0; i < mm; ++i) {
            frame[i].resize(pts[0].size());
            for (size_t c = 0; c < pts[0].size(); ++c) frame[i][c] = pts[i + 1][c] - pts[0][c];
        }
        auto gram_det = [&](const std::vector<DVec>& vecs) {
            int nn = static_cast<int>(vecs.size());
            std::vector<std::vector<double>> g(nn, std::vector<double>(nn, 0));
            for (int i = 0; i < nn; ++i)
                for (int jj = 0; jj < nn; ++jj)
                    for (size_t c = 0; c < vecs[i].size(); ++c) g[i][jj] += vecs[i][c] * vecs[jj][c];
            // determinant by elimination
            double det = 1;
            for (int col = 0; col < nn; ++col) {
                int piv = col;
                for (int r = col + 1; r < nn; ++r)
                    if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
                if (std::fabs(g[piv][col]) < 1e-300) return 0.0;
                if (piv != col) {
                    std::swap(g[piv], g[col]);
                    det = -det;
                }
                det *= g[col][col];
                for (int r = col + 1; r < nn; ++r) {
                    double f = g[r][col] / g[col][col];
                    for (int c2 = col; c2 < nn; ++c2) g[r][c2] -= f * g[col][c2];
                }
            }
            return det;
        };
        double base = std::sqrt(gram_det(frame));
        double acc = 0;
        for (const auto& x : samples) {
            auto jac = chart.jacobian(x);
            std::vector<DVec> mapped(mm, DVec(pts[0].size(), 0));
            for (int i = 0; i < mm; ++i)
                for (size_t r = 0; r < pts[0].size(); ++r)
                    for (size_t c = 0; c < pts[0].size(); ++c)
                        mapped[i][r] += jac[r][c] * frame[i][c];
            acc += std::sqrt(gram_det(mapped)) / base;
        }
        double mean_factor = acc / static_cast<double>(samples.size());
        double vol = base;
        for (int i = 2; i <= mm; ++i) vol /= i;
        return std::pair<double, double>{mean_factor * vol, vol};
    };

    for (double g : gammas) {
        SquashChart chart{m, k, params, g};
        double pushed = 0, total = 0;
        for (size_t i = 0; i < kx.count(m); ++i) {
            std::vector<DVec> pts;
            for (const auto& p : kx.simplex_points(m, i)) pts.push_back(to_double(p));
            auto [pm, vol] = integrate_simplex(pts, chart);
            pushed += pm;
            total += vol;
        }
        double ratio = pushed / total;
        res.gammas.push_back(g);
        res.measured.push_back(ratio);
        res.bounds.push_back(c_constant * std::pow(1 + eps_a, k) * std::pow(g, m - k));
    }
    // log-log least squares slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t n = res.gammas.size();
    for (size_t i = 0; i < n; ++i) {
        double lx = std::log(res.gammas[i]), ly = std::log(res.measured[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    if (n >= 2) res.fitted_exponent = (static_cast<double>(n) * sxy - sx * sy) /
                                      (static_cast<double>(n) * sxx - sx * sx);
    return res;
}

} // namespace ptopo
