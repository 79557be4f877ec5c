#include "compack/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "compack/potential.hpp"

namespace compack {

namespace {

double dist(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Circumcircle {
    Vec2 center;
    double r2 = 0.0;
    bool ok = false;
};

Circumcircle circumcircle(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    Circumcircle out;
    if (std::fabs(d) < 1e-14) return out;
    const double a2 = a.x * a.x + a.y * a.y;
    const double b2 = b.x * b.x + b.y * b.y;
    const double c2 = c.x * c.x + c.y * c.y;
    out.center.x = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    out.center.y = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    const double dx = a.x - out.center.x;
    const double dy = a.y - out.center.y;
    out.r2 = dx * dx + dy * dy;
    out.ok = true;
    return out;
}

// Incremental Bowyer-Watson over a point set that may keep growing; the last
// three points are the enclosing super-triangle.
class Triangulator {
public:
    void reset(const Rect& bounds) {
        pts_.clear();
        tris_.clear();
        const double cx = 0.5 * (bounds.xmin + bounds.xmax);
        const double cy = 0.5 * (bounds.ymin + bounds.ymax);
        const double span =
            std::max({bounds.xmax - bounds.xmin, bounds.ymax - bounds.ymin, 1.0});
        const double big = 64.0 * span + 64.0;
        super_[0] = {cx - 2.0 * big, cy - big};
        super_[1] = {cx + 2.0 * big, cy - big};
        super_[2] = {cx, cy + 2.0 * big};
    }

    // Returns the index of the inserted point.
    int insert(const Vec2& p) {
        if (pts_.empty()) {
            pts_.push_back(p);
            return 0;
        }
        if (pts_.size() == 1) {
            pts_.push_back(p);
            return 1;
        }
        if (pts_.size() == 2) {
            pts_.push_back(p);
            // seed: the three real points plus the super-triangle shell
            start_with_super();
            return 2;
        }
        const int ip = int(pts_.size());
        pts_.push_back(p);
        insert_into(ip);
        return ip;
    }

    const std::vector<Vec2>& points() const { return pts_; }

    // Real triangles only (no super-triangle vertices).
    std::vector<std::array<int, 3>> real_triangles() const {
        std::vector<std::array<int, 3>> out;
        for (const auto& t : tris_) {
            if (!t.alive) continue;
            if (is_super(t.v[0]) || is_super(t.v[1]) || is_super(t.v[2])) continue;
            out.push_back({t.v[0], t.v[1], t.v[2]});
        }
        return out;
    }

private:
    struct Tri {
        int v[3];
        Circumcircle cc;
        bool alive = true;
    };

    bool is_super(int v) const { return v >= super_base_ && v < super_base_ + 3; }

    void start_with_super() {
        super_base_ = int(pts_.size());
        pts_.push_back(super_[0]);
        pts_.push_back(super_[1]);
        pts_.push_back(super_[2]);
        make_tri(super_base_, super_base_ + 1, super_base_ + 2);
        // insert the first three real points
        for (int i = 0; i < 3; ++i) insert_into(i);
    }

    void make_tri(int a, int b, int c) {
        // orient CCW
        const Vec2& pa = pts_[std::size_t(a)];
        const Vec2& pb = pts_[std::size_t(b)];
        const Vec2& pc = pts_[std::size_t(c)];
        const double cross =
            (pb.x - pa.x) * (pc.y - pa.y) - (pb.y - pa.y) * (pc.x - pa.x);
        Tri t;
        if (cross >= 0.0) {
            t.v[0] = a; t.v[1] = b; t.v[2] = c;
        } else {
            t.v[0] = a; t.v[1] = c; t.v[2] = b;
        }
        t.cc = circumcircle(pts_[std::size_t(t.v[0])], pts_[std::size_t(t.v[1])],
                            pts_[std::size_t(t.v[2])]);
        tris_.push_back(t);
    }

    void insert_into(int ip) {
        const Vec2& p = pts_[std::size_t(ip)];
        bad_.clear();
        for (std::size_t ti = 0; ti < tris_.size(); ++ti) {
            const Tri& t = tris_[ti];
            if (!t.alive || !t.cc.ok) continue;
            const double dx = p.x - t.cc.center.x;
            const double dy = p.y - t.cc.center.y;
            // strictly inside; exact co-circularity stays outside, so the
            // earlier (lexicographically first) diagonal wins
            if (dx * dx + dy * dy < t.cc.r2 * (1.0 - 1e-12)) bad_.push_back(ti);
        }
        // boundary edges of the cavity: edges used exactly once
        edges_.clear();
        for (const std::size_t ti : bad_) {
            const Tri& t = tris_[ti];
            for (int e = 0; e < 3; ++e) {
                const int a = t.v[e];
                const int b = t.v[(e + 1) % 3];
                const std::pair<int, int> key(std::min(a, b), std::max(a, b));
                bool matched = false;
                for (auto& known : edges_) {
                    if (known.first == key) {
                        known.second = false; // interior edge, seen twice
                        matched = true;
                        break;
                    }
                }
                if (!matched) edges_.push_back({key, true});
            }
            tris_[ti].alive = false;
        }
        for (const auto& e : edges_)
            if (e.second) make_tri(e.first.first, e.first.second, ip);
    }

    std::vector<Vec2> pts_;
    std::vector<Tri> tris_;
    Vec2 super_[3];
    int super_base_ = -1;
    std::vector<std::size_t> bad_;
    std::vector<std::pair<std::pair<int, int>, bool>> edges_;
};

} // namespace

Triangulation build_delaunay(const PackingInstance& p) {
    const int n = int(p.discs.size());
    if (n < 3) throw std::invalid_argument("triangulation needs at least 3 disc centers");

    // lexicographic insertion order
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec2& pa = p.discs[std::size_t(a)].center;
        const Vec2& pb = p.discs[std::size_t(b)].center;
        return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
    });

    Rect bounds = p.region;
    for (const auto& d : p.discs) {
        bounds.xmin = std::min(bounds.xmin, d.center.x);
        bounds.xmax = std::max(bounds.xmax, d.center.x);
        bounds.ymin = std::min(bounds.ymin, d.center.y);
        bounds.ymax = std::max(bounds.ymax, d.center.y);
    }

    Triangulator tr;
    tr.reset(bounds);
    std::vector<int> slot(static_cast<std::size_t>(n)); // insertion index -> original index
    for (int i = 0; i < n; ++i) {
        const int at = tr.insert(p.discs[std::size_t(order[std::size_t(i)])].center);
        if (at >= int(slot.size())) slot.resize(std::size_t(at) + 1, -1);
        slot[std::size_t(at)] = order[std::size_t(i)];
    }

    Triangulation out;
    out.hull_vertex.assign(std::size_t(n), false);
    for (const auto& t : tr.real_triangles())
        out.triangles.push_back(
            {slot[std::size_t(t[0])], slot[std::size_t(t[1])], slot[std::size_t(t[2])]});
    if (out.triangles.empty())
        throw std::invalid_argument("degenerate input: all disc centers collinear");

    // hull vertices: endpoints of edges with a single incident triangle
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : out.triangles)
        for (int e = 0; e < 3; ++e) {
            const int a = t[std::size_t(e)];
            const int b = t[std::size_t((e + 1) % 3)];
            ++edge_count[{std::min(a, b), std::max(a, b)}];
        }
    for (const auto& [key, cnt] : edge_count)
        if (cnt == 1) {
            out.hull_vertex[std::size_t(key.first)] = true;
            out.hull_vertex[std::size_t(key.second)] = true;
        }
    return out;
}

namespace {

// Signed distance from the circumcenter to the edge joining vertices u, v of
// triangle (u, v, w), through the certified length formula on a point box.
std::optional<double> signed_distance_to_edge(const std::vector<Vec2>& centers, int u, int v,
                                              int w) {
    const double x0 = dist(centers[std::size_t(u)], centers[std::size_t(v)]);
    const double x1 = dist(centers[std::size_t(v)], centers[std::size_t(w)]);
    const double x2 = dist(centers[std::size_t(u)], centers[std::size_t(w)]);
    TriangleBox box{{Interval(x0), Interval(x1), Interval(x2)},
                    {DiscKind::small, DiscKind::small, DiscKind::small}};
    const auto d = signed_distance(box, 0);
    if (!d) return std::nullopt;
    return d->mid();
}

} // namespace

DistanceLemmaReport check_distance_lemma(const PackingInstance& p, const Triangulation& t) {
    std::vector<Vec2> centers;
    centers.reserve(p.discs.size());
    for (const auto& d : p.discs) centers.push_back(d.center);

    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int ti = 0; ti < int(t.triangles.size()); ++ti) {
        const auto& tri = t.triangles[std::size_t(ti)];
        for (int e = 0; e < 3; ++e) {
            const int a = tri[std::size_t(e)];
            const int b = tri[std::size_t((e + 1) % 3)];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back(ti);
        }
    }

    DistanceLemmaReport rep;
    rep.min_sum = std::numeric_limits<double>::infinity();
    for (const auto& [edge, tris] : by_edge) {
        if (tris.size() != 2) continue;
        double sum = 0.0;
        bool skipped = false;
        for (const int ti : tris) {
            const auto& tri = t.triangles[std::size_t(ti)];
            int w = -1;
            for (const int vtx : tri)
                if (vtx != edge.first && vtx != edge.second) w = vtx;
            const auto d = signed_distance_to_edge(centers, edge.first, edge.second, w);
            if (!d) {
                skipped = true;
                break;
            }
            sum += *d;
        }
        if (skipped) {
            ++rep.edges_skipped;
            continue;
        }
        ++rep.edges_checked;
        rep.min_sum = std::min(rep.min_sum, sum);
    }
    if (rep.edges_checked == 0) rep.min_sum = 0.0;
    rep.ok = rep.min_sum >= -1e-9;
    return rep;
}

const char* triangle_class_name(TriangleClass t) {
    switch (t) {
        case TriangleClass::alpha: return "alpha";
        case TriangleClass::beta: return "beta";
        case TriangleClass::small_eq: return "small_eq";
        case TriangleClass::large_eq: return "large_eq";
        case TriangleClass::other: return "other";
    }
    return "?";
}

TriangleClass classify_triangle(const std::array<double, 3>& lengths, const ProofConstants& c,
                                double tol) {
    std::array<double, 3> s = lengths;
    std::sort(s.begin(), s.end());
    const double r = c.r.mid();
    const auto near3 = [&](double a, double b, double d) {
        return std::fabs(s[0] - a) <= tol && std::fabs(s[1] - b) <= tol &&
               std::fabs(s[2] - d) <= tol;
    };
    if (near3(1.0 + r, 1.0 + r, 2.0)) return TriangleClass::alpha;
    if (near3(2.0 * r, 1.0 + r, 1.0 + r)) return TriangleClass::beta;
    if (near3(2.0 * r, 2.0 * r, 2.0 * r)) return TriangleClass::small_eq;
    if (near3(2.0, 2.0, 2.0)) return TriangleClass::large_eq;
    return TriangleClass::other;
}

namespace {

struct TriangleMetrics {
    std::array<double, 3> len;
    double area = 0.0;
    double coverage = 0.0;
    double excess = 0.0;
    double potential = 0.0;
    bool ok = false;
};

TriangleMetrics triangle_metrics(const PackingInstance& p, const std::array<int, 3>& tri,
                                 const ProofConstants& c, const Potential& pot,
                                 const std::array<bool, 3>& count_edge = {true, true, true}) {
    TriangleMetrics m;
    const Vec2 pts[3] = {p.discs[std::size_t(tri[0])].center,
                         p.discs[std::size_t(tri[1])].center,
                         p.discs[std::size_t(tri[2])].center};
    const DiscKind kinds[3] = {p.discs[std::size_t(tri[0])].kind,
                               p.discs[std::size_t(tri[1])].kind,
                               p.discs[std::size_t(tri[2])].kind};
    // edge i opposite vertex i
    m.len[0] = dist(pts[1], pts[2]);
    m.len[1] = dist(pts[0], pts[2]);
    m.len[2] = dist(pts[0], pts[1]);

    const double q0 = m.len[0] * m.len[0];
    const double q1 = m.len[1] * m.len[1];
    const double q2 = m.len[2] * m.len[2];
    const double radicand =
        2.0 * (q0 * q1 + q0 * q2 + q1 * q2) - q0 * q0 - q1 * q1 - q2 * q2;
    if (radicand <= 0.0) return m;
    m.area = 0.25 * std::sqrt(radicand);

    double phi[3];
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        const double cosv = std::clamp(
            (m.len[j] * m.len[j] + m.len[k] * m.len[k] - m.len[i] * m.len[i]) /
                (2.0 * m.len[j] * m.len[k]),
            -1.0, 1.0);
        phi[i] = std::acos(cosv);
    }

    const double r2 = c.r.mid() * c.r.mid();
    m.coverage = 0.0;
    for (int i = 0; i < 3; ++i)
        m.coverage += 0.5 * phi[i] * (kinds[i] == DiscKind::large ? 1.0 : r2);
    m.excess = c.delta.mid() * m.area - m.coverage;

    double f = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        f += std::min(pot.base_value(kinds[i], kinds[j], kinds[k]).mid() +
                          pot.slope_m() *
                              std::fabs(phi[i] - pot.base_angle(kinds[i], kinds[j],
                                                                kinds[k]).mid()),
                      pot.cap());
    }
    for (int i = 0; i < 3; ++i) {
        const int j = i == 0 ? 1 : 0;
        const int k = i == 2 ? 1 : 2;
        if (!count_edge[std::size_t(i)]) continue;
        if (m.len[i] < Potential::first_slope_threshold(kinds[j], kinds[k])) continue;
        const double qjk = m.len[j] * m.len[j] + m.len[k] * m.len[k] - m.len[i] * m.len[i];
        const double d = m.len[i] * qjk / (8.0 * m.area);
        double slope = 0.0;
        if (kinds[j] == DiscKind::small && kinds[k] == DiscKind::small)
            slope = m.len[i] >= 2.2 ? 0.4 : 0.28;
        else if (kinds[j] != kinds[k])
            slope = 0.06;
        f += slope * d;
    }
    m.potential = f;
    m.ok = true;
    return m;
}

// Lattice coordinates of a point: p = origin + a*u + b*v.
std::optional<std::pair<double, double>> lattice_coords(const CellLattice& lat, const Vec2& p) {
    const double det = lat.u.x * lat.v.y - lat.u.y * lat.v.x;
    if (std::fabs(det) < 1e-12) return std::nullopt;
    const double px = p.x - lat.origin.x;
    const double py = p.y - lat.origin.y;
    const double a = (px * lat.v.y - py * lat.v.x) / det;
    const double b = (py * lat.u.x - px * lat.u.y) / det;
    return std::make_pair(a, b);
}

} // namespace

DecompositionSums sum_decomposition(const PackingInstance& p, const Triangulation& t,
                                    const ProofConstants& c) {
    const Potential pot(c);
    const bool use_cells = p.lattice && p.lattice->ni >= 3 && p.lattice->nj >= 3;

    const int n_tris = int(t.triangles.size());
    std::vector<bool> selected(std::size_t(n_tris), false);
    for (int ti = 0; ti < n_tris; ++ti) {
        const auto& tri = t.triangles[std::size_t(ti)];
        bool interior = true;
        if (use_cells) {
            Vec2 centroid{0.0, 0.0};
            for (const int v : tri) {
                centroid.x += p.discs[std::size_t(v)].center.x / 3.0;
                centroid.y += p.discs[std::size_t(v)].center.y / 3.0;
            }
            const auto ab = lattice_coords(*p.lattice, centroid);
            if (!ab) continue;
            const int ia = int(std::floor(ab->first));
            const int ib = int(std::floor(ab->second));
            interior = ia >= 1 && ia <= p.lattice->ni - 2 && ib >= 1 && ib <= p.lattice->nj - 2;
        } else {
            for (const int v : tri) interior = interior && !t.hull_vertex[std::size_t(v)];
        }
        selected[std::size_t(ti)] = interior;
    }

    // An edge potential pairs with its mirror across the shared edge; count
    // edge terms only when both sides are selected, so the pair inequality
    // applies to everything summed.
    std::map<std::pair<int, int>, std::vector<int>> by_edge;
    for (int ti = 0; ti < n_tris; ++ti) {
        const auto& tri = t.triangles[std::size_t(ti)];
        for (int e = 0; e < 3; ++e) {
            const int a = tri[std::size_t(e)];
            const int b = tri[std::size_t((e + 1) % 3)];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back(ti);
        }
    }
    const auto edge_paired = [&](int ti, int u, int v) {
        const auto it = by_edge.find({std::min(u, v), std::max(u, v)});
        if (it == by_edge.end() || it->second.size() != 2) return false;
        for (const int other : it->second)
            if (other != ti && selected[std::size_t(other)]) return true;
        return false;
    };

    DecompositionSums out;
    double sum_area = 0.0;
    double sum_cov = 0.0;
    for (int ti = 0; ti < n_tris; ++ti) {
        if (!selected[std::size_t(ti)]) continue;
        const auto& tri = t.triangles[std::size_t(ti)];
        std::array<bool, 3> count_edge{};
        for (int e = 0; e < 3; ++e) {
            const int j = e == 0 ? 1 : 0;
            const int k = e == 2 ? 1 : 2;
            count_edge[std::size_t(e)] =
                edge_paired(ti, tri[std::size_t(j)], tri[std::size_t(k)]);
        }
        const TriangleMetrics m = triangle_metrics(p, tri, c, pot, count_edge);
        if (!m.ok) continue;
        ++out.triangles;
        out.sum_excess += m.excess;
        out.sum_potential += m.potential;
        sum_area += m.area;
        sum_cov += m.coverage;
    }
    out.density = sum_area > 0.0 ? sum_cov / sum_area : 0.0;
    return out;
}

std::array<int, 5> cell_census(const PackingInstance& p, const Triangulation& t,
                               const ProofConstants& c, int ci, int cj) {
    std::array<int, 5> counts{};
    if (!p.lattice) return counts;
    for (const auto& tri : t.triangles) {
        Vec2 centroid{0.0, 0.0};
        for (const int v : tri) {
            centroid.x += p.discs[std::size_t(v)].center.x / 3.0;
            centroid.y += p.discs[std::size_t(v)].center.y / 3.0;
        }
        const auto ab = lattice_coords(*p.lattice, centroid);
        if (!ab) continue;
        if (int(std::floor(ab->first)) != ci || int(std::floor(ab->second)) != cj) continue;
        const auto elen = [&](int a, int b) {
            return dist(p.discs[std::size_t(a)].center, p.discs[std::size_t(b)].center);
        };
        const std::array<double, 3> len = {elen(tri[1], tri[2]), elen(tri[0], tri[2]),
                                           elen(tri[0], tri[1])};
        ++counts[std::size_t(classify_triangle(len, c))];
    }
    return counts;
}

PackingInstance build_compact_patch(int n_cells, const ProofConstants& c) {
    if (n_cells < 1) throw std::invalid_argument("n_cells must be positive");
    const double r = c.r.mid();
    const double s3 = std::sqrt(3.0);
    const double l = c.cell_side.mid();

    const double gx = 1.0 + r + (2.0 * s3 / 3.0) * r;
    const double rl = r / s3 + std::sqrt(1.0 + 2.0 * r);

    const Disc cell[6] = {
        {{0.0, 0.0}, DiscKind::large},
        {{1.0 + r, 0.0}, DiscKind::small},
        {{1.0 + r + s3 * r, r}, DiscKind::small},
        {{1.0 + r + s3 * r, -r}, DiscKind::small},
        {{gx - rl / 2.0, rl * s3 / 2.0}, DiscKind::large},
        {{gx - rl / 2.0, -rl * s3 / 2.0}, DiscKind::large},
    };

    const int ni = int(std::ceil(std::sqrt(double(n_cells))));
    const int nj = int(std::ceil(double(n_cells) / double(ni)));
    const Vec2 u{l, 0.0};
    const Vec2 v{l / 2.0, l * s3 / 2.0};

    PackingInstance out;
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i)
            for (const auto& d : cell)
                out.discs.push_back(
                    {{d.center.x + i * u.x + j * v.x, d.center.y + i * u.y + j * v.y}, d.kind});

    Rect region{1e300, 1e300, -1e300, -1e300};
    for (const auto& d : out.discs) {
        region.xmin = std::min(region.xmin, d.center.x);
        region.xmax = std::max(region.xmax, d.center.x);
        region.ymin = std::min(region.ymin, d.center.y);
        region.ymax = std::max(region.ymax, d.center.y);
    }
    const double pad = 1.0 + r;
    region.xmin -= pad;
    region.ymin -= pad;
    region.xmax += pad;
    region.ymax += pad;
    out.region = region;
    out.lattice = CellLattice{{0.0, 0.0}, u, v, ni, nj};

    // Validate: no overlaps anywhere, tangencies exact to 1e-9.
    for (std::size_t a = 0; a < out.discs.size(); ++a)
        for (std::size_t b = a + 1; b < out.discs.size(); ++b) {
            const double d = dist(out.discs[a].center, out.discs[b].center);
            const double s = out.radius_of(int(a), c) + out.radius_of(int(b), c);
            if (d < s - 1e-9) throw internal_error("compact patch discs overlap");
        }
    return out;
}

PackingInstance build_triangular_lattice(int ni, int nj) {
    PackingInstance out;
    for (int j = 0; j < nj; ++j)
        for (int i = 0; i < ni; ++i)
            out.discs.push_back({{2.0 * i + (j % 2 == 0 ? 0.0 : 1.0), std::sqrt(3.0) * j},
                                 DiscKind::large});
    out.region = {-1.0, -1.0, 2.0 * ni + 1.0, std::sqrt(3.0) * nj + 1.0};
    return out;
}

namespace {

// Uniform spatial hash for clearance queries: feasibility of inserting a
// small disc at p only depends on discs within 1 + r of p.
class DiscIndex {
public:
    DiscIndex(const Rect& region, double cell) : region_(region), cell_(cell) {
        nx_ = std::max(1, int((region.xmax - region.xmin) / cell) + 1);
        ny_ = std::max(1, int((region.ymax - region.ymin) / cell) + 1);
        grid_.assign(std::size_t(nx_) * std::size_t(ny_), {});
    }

    void add(int id, const Vec2& p) {
        grid_[slot(p)].push_back(id);
    }

    template <typename F>
    void for_near(const Vec2& p, F&& fn) const {
        const int cx = clampi(int((p.x - region_.xmin) / cell_), 0, nx_ - 1);
        const int cy = clampi(int((p.y - region_.ymin) / cell_), 0, ny_ - 1);
        for (int dy = -2; dy <= 2; ++dy)
            for (int dx = -2; dx <= 2; ++dx) {
                const int gx = cx + dx;
                const int gy = cy + dy;
                if (gx < 0 || gy < 0 || gx >= nx_ || gy >= ny_) continue;
                for (const int id : grid_[std::size_t(gy) * std::size_t(nx_) + std::size_t(gx)])
                    fn(id);
            }
    }

private:
    static int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
    std::size_t slot(const Vec2& p) const {
        const int cx = clampi(int((p.x - region_.xmin) / cell_), 0, nx_ - 1);
        const int cy = clampi(int((p.y - region_.ymin) / cell_), 0, ny_ - 1);
        return std::size_t(cy) * std::size_t(nx_) + std::size_t(cx);
    }
    Rect region_;
    double cell_;
    int nx_ = 0, ny_ = 0;
    std::vector<std::vector<int>> grid_;
};

} // namespace

PackingInstance random_saturated_packing(std::uint64_t seed, double width, double height,
                                         const ProofConstants& c) {
    const double r = c.r.mid();
    PackingInstance out;
    out.region = {0.0, 0.0, width, height};

    DiscIndex index(out.region, 1.0 + r);
    const auto radius = [&](int i) { return out.radius_of(i, c); };
    const auto clearance_for = [&](const Vec2& p, double rho) {
        double worst = 1e300;
        index.for_near(p, [&](int id) {
            const double need = rho + radius(id);
            const double d = dist(p, out.discs[std::size_t(id)].center);
            worst = std::min(worst, d - need);
        });
        return worst;
    };
    const auto add_disc = [&](const Vec2& p, DiscKind kind) {
        out.discs.push_back({p, kind});
        index.add(int(out.discs.size()) - 1, p);
    };

    // Stage 1: random sequential insertion of mixed discs.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(0.0, width), uy(0.0, height);
    const int attempts = int(6.0 * width * height);
    for (int k = 0; k < attempts; ++k) {
        const DiscKind kind = (rng() & 1) ? DiscKind::small : DiscKind::large;
        const double rho = kind == DiscKind::small ? r : 1.0;
        const Vec2 p{ux(rng), uy(rng)};
        if (clearance_for(p, rho) >= 0.0) add_disc(p, kind);
    }

    // Stage 2 driver: incremental triangulation shared across rounds.
    Triangulator tri;
    tri.reset(out.region);
    for (const auto& d : out.discs) tri.insert(d.center);

    const auto saturate_by_circumcenters = [&]() {
        bool inserted_any = true;
        while (inserted_any) {
            inserted_any = false;
            for (const auto& t : tri.real_triangles()) {
                const Circumcircle cc = circumcircle(tri.points()[std::size_t(t[0])],
                                                     tri.points()[std::size_t(t[1])],
                                                     tri.points()[std::size_t(t[2])]);
                if (!cc.ok || !out.region.contains(cc.center)) continue;
                if (clearance_for(cc.center, r) >= -1e-12) {
                    add_disc(cc.center, DiscKind::small);
                    tri.insert(cc.center);
                    inserted_any = true;
                    break;
                }
            }
        }
    };
    saturate_by_circumcenters();

    // Stage 3: grid sweep with local refinement; any feasible spot found is
    // filled and circumcenter saturation rerun.
    const double spacing = r / 4.0;
    bool sweep_found = true;
    while (sweep_found) {
        sweep_found = false;
        const int nx = int(width / spacing) + 1;
        const int ny = int(height / spacing) + 1;
        for (int gy = 0; gy <= ny && !sweep_found; ++gy) {
            for (int gx = 0; gx <= nx && !sweep_found; ++gx) {
                Vec2 p{std::min(gx * spacing, width), std::min(gy * spacing, height)};
                double clear = clearance_for(p, r);
                if (clear < -0.5) continue;
                // push the probe out of the deepest violation repeatedly
                for (int it = 0; it < 40 && clear < 0.0; ++it) {
                    double worst = 0.0;
                    int worst_id = -1;
                    index.for_near(p, [&](int id) {
                        const double need = r + radius(id);
                        const double d = dist(p, out.discs[std::size_t(id)].center);
                        if (need - d > worst) {
                            worst = need - d;
                            worst_id = id;
                        }
                    });
                    if (worst_id < 0) break;
                    const Vec2& q = out.discs[std::size_t(worst_id)].center;
                    const double d = dist(p, q);
                    const double need = r + radius(worst_id) + 1e-9;
                    if (d < 1e-12) {
                        p.x += need;
                    } else {
                        p.x = q.x + (p.x - q.x) * need / d;
                        p.y = q.y + (p.y - q.y) * need / d;
                    }
                    p.x = std::clamp(p.x, 0.0, width);
                    p.y = std::clamp(p.y, 0.0, height);
                    clear = clearance_for(p, r);
                }
                if (clear >= 0.0) {
                    add_disc(p, DiscKind::small);
                    tri.insert(p);
                    saturate_by_circumcenters();
                    sweep_found = true;
                }
            }
        }
    }

    return out;
}

} // namespace compack
