#include "subgeo/mex.hpp"

#include <algorithm>
#include <numeric>

namespace subgeo {

namespace {

struct RankOrder {
    std::span<const double> f;
    std::span<const std::size_t> keys;

    bool operator()(std::size_t a, std::size_t b) const {
        if (f[a] != f[b]) return f[a] > f[b];
        if (!keys.empty() && keys[a] != keys[b]) return keys[a] < keys[b];
        return a < b;
    }
};

}  // namespace

RankedSelection select_top(std::span<const double> f, std::span<const std::size_t> keys,
                           std::size_t m) {
    if (m > f.size()) throw InputError("select_top: m exceeds the number of values");
    if (!keys.empty() && keys.size() != f.size()) throw InputError("select_top: key size mismatch");
    std::vector<std::size_t> pos(f.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    const RankOrder order{f, keys};
    RankedSelection out;
    if (m < f.size()) {
        std::nth_element(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(m), pos.end(),
                         order);
        out.next = pos[m];
    } else {
        out.next = f.size();
    }
    out.top.assign(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(out.top.begin(), out.top.end());
    return out;
}

RankedSelection select_top(std::span<const double> f, std::size_t m) {
    return select_top(f, {}, m);
}

std::size_t select_rank(std::span<const double> f, std::span<const std::size_t> keys,
                        std::size_t k) {
    if (k == 0 || k > f.size()) throw InputError("select_rank: rank out of range");
    if (!keys.empty() && keys.size() != f.size()) throw InputError("select_rank: key size mismatch");
    std::vector<std::size_t> pos(f.size());
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::nth_element(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(k - 1), pos.end(),
                     RankOrder{f, keys});
    return pos[k - 1];
}

BallFamily::Center BallFamily::random_center(RngStream& rng, std::size_t d) const {
    Point c(d);
    for (std::size_t k = 0; k < d; ++k) c[k] = rng.normal();
    return c;
}

Point BallFamily::random_point(RngStream& rng, std::size_t d) const {
    Point p(d);
    for (std::size_t k = 0; k < d; ++k) p[k] = 2.0 * rng.normal();
    return p;
}

}  // namespace subgeo
