#include "subgeo/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>

#include "subgeo/errors.hpp"

namespace subgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dual MEB over an explicit point list: maximize sum_j l_j |p_j - c(l)|^2 over
// the simplex with away steps. Returns the center; `gap_rel` receives the
// final relative duality gap.
Point fw_meb(const std::vector<Point>& S, std::vector<double>& lambda, double tol,
             std::size_t max_iter, double* gap_rel = nullptr) {
    const std::size_t m = S.size();
    const std::size_t d = S[0].dim();
    auto center_of = [&]() {
        Point c(d);
        for (std::size_t j = 0; j < m; ++j) {
            if (lambda[j] == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k) c[k] += lambda[j] * S[j][k];
        }
        return c;
    };
    Point c = center_of();
    std::vector<double> d2(m);
    double gap = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        if (it % 512 == 511) c = center_of();
        std::size_t f = 0, a = m;
        double phi = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            d2[j] = dist_sq_unchecked(S[j], c);
            phi += lambda[j] * d2[j];
            if (d2[j] > d2[f]) f = j;
            if (lambda[j] > 0.0 && (a == m || d2[j] < d2[a])) a = j;
        }
        const double r2 = d2[f];
        gap = r2 - phi;
        if (r2 == 0.0 || gap <= tol * r2) break;
        const double away_gain = phi - d2[a];
        if (gap >= away_gain || lambda[a] >= 1.0) {
            const double len2 = dist_sq_unchecked(S[f], c);
            const double alpha = std::min(1.0, gap / (2.0 * len2));
            for (std::size_t j = 0; j < m; ++j) lambda[j] *= (1.0 - alpha);
            lambda[f] += alpha;
            for (std::size_t k = 0; k < d; ++k) c[k] += alpha * (S[f][k] - c[k]);
        } else {
            const double len2 = dist_sq_unchecked(S[a], c);
            const double amax = lambda[a] / (1.0 - lambda[a]);
            double alpha = std::min(amax, away_gain / (2.0 * len2));
            const bool drop = alpha >= amax;
            if (drop) alpha = amax;
            for (std::size_t j = 0; j < m; ++j) lambda[j] *= (1.0 + alpha);
            lambda[a] -= alpha;
            if (drop) lambda[a] = 0.0;
            for (std::size_t k = 0; k < d; ++k) c[k] += alpha * (c[k] - S[a][k]);
        }
    }
    if (gap_rel) {
        double r2 = 0.0;
        for (std::size_t j = 0; j < m; ++j) r2 = std::max(r2, dist_sq_unchecked(S[j], c));
        *gap_rel = r2 > 0.0 ? gap / r2 : 0.0;
    }
    return c;
}

Ball exact_ball(const PointSet& P, const Point& c) {
    return Ball{c, covering_radius(P, c)};
}

// Smallest ball with every point of R on its boundary, or nullopt when R is
// affinely dependent.
std::optional<Ball> circumball(const std::vector<Point>& R) {
    const std::size_t m = R.size();
    if (m == 0) return std::nullopt;
    const std::size_t d = R[0].dim();
    if (m == 1) return Ball{R[0], 0.0};
    const std::size_t k = m - 1;
    std::vector<Point> a(k, Point(d));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t q = 0; q < d; ++q) a[j][q] = R[j + 1][q] - R[0][q];
    // 2 A mu = b with A_jl = <a_j, a_l>, b_j = |a_j|^2.
    std::vector<std::vector<double>> M(k, std::vector<double>(k + 1));
    double scale = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) M[j][l] = 2.0 * dot(a[j], a[l]);
        M[j][k] = dot(a[j], a[j]);
        scale = std::max(scale, M[j][j]);
    }
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        if (std::abs(M[piv][col]) <= 1e-12 * scale) return std::nullopt;
        std::swap(M[piv], M[col]);
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col) continue;
            const double fct = M[r][col] / M[col][col];
            for (std::size_t l = col; l <= k; ++l) M[r][l] -= fct * M[col][l];
        }
    }
    Point c = R[0];
    for (std::size_t j = 0; j < k; ++j) {
        const double mu = M[j][k] / M[j][j];
        for (std::size_t q = 0; q < d; ++q) c[q] += mu * a[j][q];
    }
    double r = 0.0;
    for (const auto& p : R) r = std::max(r, dist(p, c));
    return Ball{std::move(c), r};
}

Ball ball_of_support(const std::vector<Point>& R, std::size_t d) {
    if (R.empty()) return Ball{Point(d), -1.0};
    if (auto b = circumball(R)) return *b;
    std::vector<double> lambda(R.size(), 1.0 / static_cast<double>(R.size()));
    const Point c = fw_meb(R, lambda, 1e-15, 200'000);
    double r = 0.0;
    for (const auto& p : R) r = std::max(r, dist(p, c));
    return Ball{c, r};
}

bool inside(const Ball& b, PointView p) {
    if (b.radius < 0.0) return false;
    return dist(p, b.center) <= b.radius * (1.0 + 1e-12) + 1e-12;
}

Ball welzl(const std::vector<Point>& pts, std::size_t end, std::vector<Point>& R,
           std::size_t d) {
    Ball b = ball_of_support(R, d);
    if (R.size() == d + 1) return b;
    for (std::size_t i = 0; i < end; ++i) {
        if (inside(b, pts[i])) continue;
        R.push_back(pts[i]);
        b = welzl(pts, i, R, d);
        R.pop_back();
    }
    return b;
}

}  // namespace

Ball oracle_meb_reference(const PointSet& P, double tol) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    const std::size_t n = P.size();
    std::vector<Point> S{P.point(0)};
    std::vector<double> lambda{1.0};
    std::vector<bool> in_s(n, false);
    in_s[0] = true;
    // gap <= g r^2 bounds the radius within a factor 1/sqrt(1-g).
    const double inner_tol = std::max(tol, 1e-15);

    Point c = P.point(0);
    for (;;) {
        c = fw_meb(S, lambda, inner_tol, 2'000'000);
        double rs = 0.0;
        for (const auto& s : S) rs = std::max(rs, dist(s, c));
        const std::size_t f = farthest_index(P, c);
        const double df = dist(P[f], c);
        if (in_s[f] || df <= rs * (1.0 + tol)) break;
        in_s[f] = true;
        S.push_back(P.point(f));
        lambda.push_back(0.0);
    }
    return exact_ball(P, c);
}

Ball oracle_meb_exact_lowdim(const PointSet& P) {
    const std::size_t d = P.dim();
    if (d > 3) throw InputError("exact low-dimensional MEB needs d <= 3");
    std::vector<Point> pts;
    pts.reserve(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) pts.push_back(P.point(i));
    RngStream rng(0x77656c7a6cULL);
    for (std::size_t i = pts.size(); i > 1; --i) std::swap(pts[i - 1], pts[rng.uniform_index(i)]);
    std::vector<Point> R;
    const Ball b = welzl(pts, pts.size(), R, d);
    return exact_ball(P, b.center);
}

SubsetOptimum oracle_meb_outliers_bruteforce(const PointSet& P, double gamma) {
    const std::size_t n = P.size();
    if (n > 15) throw InputError("brute force needs n <= 15");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    const std::size_t keep = ceil_count((1.0 - gamma) * static_cast<double>(n));
    if (keep == 0) throw InputError("nothing to keep");
    const std::size_t drop = n - keep;
    if (drop > 3) throw InputError("brute force drops at most 3 points");

    SubsetOptimum best;
    best.radius = kInf;
    std::vector<std::size_t> dropped(drop);
    std::iota(dropped.begin(), dropped.end(), std::size_t{0});
    for (;;) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0, j = 0; i < n; ++i) {
            if (j < drop && dropped[j] == i) {
                ++j;
                continue;
            }
            kept.push_back(i);
        }
        const Ball b = kept.size() == 1 ? Ball{P.point(kept[0]), 0.0}
                                        : oracle_meb_reference(P.subset(kept), 1e-12);
        if (b.radius < best.radius) {
            best.radius = b.radius;
            best.ball = b;
            best.kept = kept;
        }
        // Next combination in lexicographic order.
        std::size_t pos = drop;
        while (pos > 0 && dropped[pos - 1] == n - drop + pos - 1) --pos;
        if (pos == 0) break;
        ++dropped[pos - 1];
        for (std::size_t j = pos; j < drop; ++j) dropped[j] = dropped[j - 1] + 1;
    }
    return best;
}

KCenterOptimum oracle_kcenter_bruteforce(const PointSet& P, std::size_t k, double gamma) {
    const std::size_t n = P.size();
    if (n > 10) throw InputError("k-center brute force needs n <= 10");
    if (k == 0 || k > 2) throw InputError("k-center brute force supports k in {1, 2}");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InputError("gamma must lie in [0,1)");
    const std::size_t keep = ceil_count((1.0 - gamma) * static_cast<double>(n));
    if (keep == 0) throw InputError("nothing to keep");

    // MEB radius of every non-empty subset, by bitmask.
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<double> rad(full + 1, 0.0);
    std::vector<Point> ctr(full + 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        if (idx.size() == 1) {
            ctr[mask] = P.point(idx[0]);
            continue;
        }
        const PointSet S = P.subset(idx);
        const Ball b = P.dim() <= 3 ? oracle_meb_exact_lowdim(S) : oracle_meb_reference(S, 1e-12);
        rad[mask] = b.radius;
        ctr[mask] = b.center;
    }

    KCenterOptimum best;
    best.radius = kInf;
    auto popcount = [](std::uint32_t x) { return static_cast<std::size_t>(__builtin_popcount(x)); };
    for (std::uint32_t kept = 1; kept <= full; ++kept) {
        if (popcount(kept) != keep) continue;
        if (k == 1) {
            if (rad[kept] < best.radius) {
                best.radius = rad[kept];
                best.centers = {ctr[kept]};
                best.outliers.clear();
                for (std::size_t i = 0; i < n; ++i)
                    if (!(kept & (1u << i))) best.outliers.push_back(i);
            }
            continue;
        }
        // Fix the lowest kept point in cluster A; B may be empty.
        const std::uint32_t low = kept & (~kept + 1u);
        const std::uint32_t rest = kept & ~low;
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t A = low | sub;
            const std::uint32_t B = kept & ~A;
            const double r = std::max(rad[A], B ? rad[B] : 0.0);
            if (r < best.radius) {
                best.radius = r;
                best.centers = {ctr[A]};
                if (B) best.centers.push_back(ctr[B]);
                best.outliers.clear();
                for (std::size_t i = 0; i < n; ++i)
                    if (!(kept & (1u << i))) best.outliers.push_back(i);
            }
            if (sub == 0) break;
        }
    }
    return best;
}

PolytopeBracket oracle_polytope_bracket(const PointSet& P, double tol, std::size_t max_iter) {
    if (!(tol > 0.0)) throw InputError("tolerance must be positive");
    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    std::vector<double> lambda(n, 0.0);
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (dot(P[i], P[i]) < dot(P[start], P[start])) start = i;
    lambda[start] = 1.0;
    Point v = P.point(start);
    std::vector<double> proj(n);

    PolytopeBracket out;
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
        if (it % 1024 == 1023) {
            v = Point(d);
            for (std::size_t i = 0; i < n; ++i)
                if (lambda[i] != 0.0)
                    for (std::size_t k = 0; k < d; ++k) v[k] += lambda[i] * P[i][k];
        }
        const double vv = dot(v, v);
        std::size_t s = 0, a = n;
        for (std::size_t i = 0; i < n; ++i) {
            proj[i] = dot(P[i], v);
            if (proj[i] < proj[s]) s = i;
            if (lambda[i] > 0.0 && (a == n || proj[i] > proj[a])) a = i;
        }
        const double fw_gap = vv - proj[s];
        if (vv == 0.0 || fw_gap <= tol * vv) break;
        const double away_gap = proj[a] - vv;
        if (fw_gap >= away_gap || lambda[a] >= 1.0) {
            const double len2 = dist_sq_unchecked(v, P[s]);
            const double alpha = std::min(1.0, fw_gap / len2);
            for (std::size_t i = 0; i < n; ++i) lambda[i] *= (1.0 - alpha);
            lambda[s] += alpha;
            for (std::size_t k = 0; k < d; ++k) v[k] += alpha * (P[s][k] - v[k]);
        } else {
            const double len2 = dist_sq_unchecked(v, P[a]);
            const double amax = lambda[a] / (1.0 - lambda[a]);
            double alpha = away_gap / len2;
            const bool drop = alpha >= amax;
            if (drop) alpha = amax;
            for (std::size_t i = 0; i < n; ++i) lambda[i] *= (1.0 + alpha);
            lambda[a] -= alpha;
            if (drop) lambda[a] = 0.0;
            for (std::size_t k = 0; k < d; ++k) v[k] += alpha * (v[k] - P[a][k]);
        }
    }
    const double nv = norm(v);
    double mn = kInf;
    for (std::size_t i = 0; i < n; ++i) mn = std::min(mn, dot(P[i], v));
    out.upper = nv;
    out.lower = nv > 0.0 ? mn / nv : 0.0;
    out.v = std::move(v);
    out.iterations = it;
    return out;
}

}  // namespace subgeo
