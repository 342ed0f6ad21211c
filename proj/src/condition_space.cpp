#include "aca/condition_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aca {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int default_resolution(int d) { return d <= 2 ? 201 : 41; }

int exact_root(int k, int d) {
    // Largest integer r with r^d <= k, then verify exactness.
    int r = static_cast<int>(std::llround(std::pow(static_cast<double>(k), 1.0 / d)));
    for (int cand = std::max(1, r - 1); cand <= r + 1; ++cand) {
        long long pow_cand = 1;
        for (int i = 0; i < d; ++i) pow_cand *= cand;
        if (pow_cand == k) return cand;
    }
    return 0;
}

std::vector<Vec> quasirandom_in_box(int count, const Vec& box_lo, const Vec& box_hi, std::uint64_t seed) {
    const int d = static_cast<int>(box_lo.size());
    Vec rotation(static_cast<std::size_t>(d), 0.0);
    Rng rng(derive_seed(seed, 0x4a1d));
    for (double& r : rotation) r = rng.u01();
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Vec u = quasirandom_point(i + 1, d, &rotation);
        Vec p(static_cast<std::size_t>(d), 0.0);
        for (int a = 0; a < d; ++a) {
            p[static_cast<std::size_t>(a)] =
                box_lo[static_cast<std::size_t>(a)] +
                u[static_cast<std::size_t>(a)] * (box_hi[static_cast<std::size_t>(a)] - box_lo[static_cast<std::size_t>(a)]);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

void format_double(std::ostream& out, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

ConditionSpace ConditionSpace::box(Vec lo, Vec hi, int resolution) {
    if (lo.size() != hi.size() || lo.empty()) {
        throw std::invalid_argument("ConditionSpace: lo/hi must be nonempty and equal length");
    }
    const int d = static_cast<int>(lo.size());
    if (d > 3) throw std::invalid_argument("ConditionSpace: dim > 3 unsupported (dense grid blowup)");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) throw std::invalid_argument("ConditionSpace: requires lo < hi on every axis");
    }
    ConditionSpace s;
    s.dim = d;
    s.lo = std::move(lo);
    s.hi = std::move(hi);
    s.eval_resolution = resolution > 0 ? resolution : default_resolution(d);
    if (s.eval_resolution < 2) throw std::invalid_argument("ConditionSpace: eval_resolution >= 2 required");
    return s;
}

ConditionSpace ConditionSpace::unit_box(int d, int resolution) {
    if (d < 1) throw std::invalid_argument("ConditionSpace: dim >= 1 required");
    return box(Vec(static_cast<std::size_t>(d), 0.0), Vec(static_cast<std::size_t>(d), 1.0), resolution);
}

Vec ConditionSpace::center() const {
    Vec c(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
}

bool ConditionSpace::contains(const Vec& p) const {
    if (p.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
    }
    return true;
}

Vec ConditionSpace::clip(Vec p) const {
    check_same_size(p, lo, "ConditionSpace::clip");
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
    return p;
}

std::size_t ConditionSpace::grid_size() const {
    std::size_t n = 1;
    for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(eval_resolution);
    return n;
}

Vec ConditionSpace::grid_point(std::size_t flat_index) const {
    Vec p(static_cast<std::size_t>(dim));
    std::size_t rest = flat_index;
    for (int a = 0; a < dim; ++a) {
        const std::size_t idx = rest % static_cast<std::size_t>(eval_resolution);
        rest /= static_cast<std::size_t>(eval_resolution);
        p[static_cast<std::size_t>(a)] =
            lo[static_cast<std::size_t>(a)] + static_cast<double>(idx) * grid_spacing(a);
    }
    return p;
}

std::string to_string(LayoutTag tag) {
    switch (tag) {
        case LayoutTag::grid: return "grid";
        case LayoutTag::low_discrepancy: return "low_discrepancy";
        case LayoutTag::random_uniform: return "random";
        case LayoutTag::center_rect: return "center_rect";
        case LayoutTag::center_circle: return "center_circle";
        case LayoutTag::top_left: return "top_left";
        case LayoutTag::custom: return "custom";
    }
    return "custom";
}

LayoutTag layout_from_string(const std::string& name) {
    if (name == "grid") return LayoutTag::grid;
    if (name == "low_discrepancy") return LayoutTag::low_discrepancy;
    if (name == "random") return LayoutTag::random_uniform;
    if (name == "center_rect") return LayoutTag::center_rect;
    if (name == "center_circle") return LayoutTag::center_circle;
    if (name == "top_left") return LayoutTag::top_left;
    if (name == "custom") return LayoutTag::custom;
    throw std::invalid_argument("unknown layout tag: " + name);
}

Vec quasirandom_point(int index, int d, const Vec* shift) {
    // x^(d+1) = x + 1 root; alpha_k = phi^-(k+1) are the R_d directions.
    double phi = 2.0;
    for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (d + 1));
    Vec u(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        const double alpha = std::pow(1.0 / phi, a + 1);
        double v = static_cast<double>(index) * alpha;
        if (shift != nullptr) v += (*shift)[static_cast<std::size_t>(a)];
        u[static_cast<std::size_t>(a)] = v - std::floor(v);
    }
    return u;
}

AnchorSet make_layout(const ConditionSpace& space, LayoutTag kind, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("make_layout: K >= 1 required");
    const int d = space.dim;
    AnchorSet out;
    out.layout = kind;
    out.points.reserve(static_cast<std::size_t>(k));

    switch (kind) {
        case LayoutTag::grid: {
            // Cell-centered exact grid; K must be a perfect d-th power.
            const int per_axis = exact_root(k, d);
            if (per_axis == 0) {
                throw std::invalid_argument("make_layout: grid layout needs K = k^d");
            }
            for (int flat = 0; flat < k; ++flat) {
                Vec p(static_cast<std::size_t>(d));
                int rest = flat;
                for (int a = 0; a < d; ++a) {
                    const int idx = rest % per_axis;
                    rest /= per_axis;
                    p[static_cast<std::size_t>(a)] =
                        space.lo[static_cast<std::size_t>(a)] +
                        (static_cast<double>(idx) + 0.5) / per_axis * space.width(a);
                }
                out.points.push_back(std::move(p));
            }
            break;
        }
        case LayoutTag::low_discrepancy: {
            out.points = quasirandom_in_box(k, space.lo, space.hi, seed);
            break;
        }
        case LayoutTag::random_uniform: {
            Rng rng(derive_seed(seed, 0x71e));
            while (static_cast<int>(out.points.size()) < k) {
                Vec p(static_cast<std::size_t>(d));
                for (int a = 0; a < d; ++a) {
                    p[static_cast<std::size_t>(a)] =
                        rng.uniform(space.lo[static_cast<std::size_t>(a)], space.hi[static_cast<std::size_t>(a)]);
                }
                bool dup = false;
                for (const Vec& q : out.points) {
                    if (q == p) { dup = true; break; }
                }
                if (!dup) out.points.push_back(std::move(p));
            }
            break;
        }
        case LayoutTag::center_rect: {
            // Near-square lattice spanning central fractions of the domain:
            // 40% on axis 0, 30% on the others; row-major, first K nodes.
            // K=6 in 2-D lands on the canonical 2 rows x 3 columns.
            Vec frac(static_cast<std::size_t>(d), 0.3);
            frac[0] = 0.4;
            Vec blo(static_cast<std::size_t>(d)), bhi(static_cast<std::size_t>(d));
            for (int a = 0; a < d; ++a) {
                const double c = 0.5 * (space.lo[static_cast<std::size_t>(a)] + space.hi[static_cast<std::size_t>(a)]);
                const double half = 0.5 * frac[static_cast<std::size_t>(a)] * space.width(a);
                blo[static_cast<std::size_t>(a)] = c - half;
                bhi[static_cast<std::size_t>(a)] = c + half;
            }
            if (d == 1) {
                for (int i = 0; i < k; ++i) {
                    const double t = k == 1 ? 0.5 : static_cast<double>(i) / (k - 1);
                    out.points.push_back({blo[0] + t * (bhi[0] - blo[0])});
                }
                break;
            }
            const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(1.5 * k))));
            const int rows = (k + cols - 1) / cols;
            for (int i = 0; i < k; ++i) {
                const int col = i % cols;
                const int row = i / cols;
                Vec p(static_cast<std::size_t>(d));
                const double tx = cols == 1 ? 0.5 : static_cast<double>(col) / (cols - 1);
                const double ty = rows == 1 ? 0.5 : static_cast<double>(row) / (rows - 1);
                p[0] = blo[0] + tx * (bhi[0] - blo[0]);
                p[1] = blo[1] + ty * (bhi[1] - blo[1]);
                for (int a = 2; a < d; ++a) {
                    p[static_cast<std::size_t>(a)] = 0.5 * (blo[static_cast<std::size_t>(a)] + bhi[static_cast<std::size_t>(a)]);
                }
                out.points.push_back(std::move(p));
            }
            break;
        }
        case LayoutTag::center_circle: {
            if (d < 2) throw std::invalid_argument("make_layout: center_circle needs dim >= 2");
            const Vec c = space.center();
            const double radius = 0.2 * space.width(0);
            for (int i = 0; i < k; ++i) {
                const double theta = kTwoPi * static_cast<double>(i) / k;
                Vec p = c;
                p[0] = c[0] + radius * std::cos(theta);
                p[1] = c[1] + radius * std::sin(theta);
                out.points.push_back(std::move(p));
            }
            break;
        }
        case LayoutTag::top_left: {
            // Low-discrepancy fill of the quadrant touching the (lo, hi, ...)
            // corner: low half of axis 0, high half of every other axis.
            Vec blo = space.lo, bhi = space.hi;
            bhi[0] = 0.5 * (space.lo[0] + space.hi[0]);
            for (int a = 1; a < d; ++a) {
                blo[static_cast<std::size_t>(a)] =
                    0.5 * (space.lo[static_cast<std::size_t>(a)] + space.hi[static_cast<std::size_t>(a)]);
            }
            out.points = quasirandom_in_box(k, blo, bhi, seed);
            break;
        }
        case LayoutTag::custom:
            throw std::invalid_argument("make_layout: custom layouts are built from explicit points");
    }

    for (const Vec& p : out.points) {
        if (!space.contains(p)) throw std::logic_error("make_layout: produced point outside domain");
    }
    return out;
}

double fill_distance(const AnchorSet& anchors, const ConditionSpace& space) {
    if (anchors.empty()) throw std::invalid_argument("fill_distance: empty anchor set");
    const std::size_t n = space.grid_size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec p = space.grid_point(i);
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& q : anchors.points) {
            double s = 0.0;
            for (std::size_t a = 0; a < p.size(); ++a) {
                const double dd = p[a] - q[a];
                s += dd * dd;
            }
            if (s < best) best = s;
        }
        if (best > worst) worst = best;
    }
    return std::sqrt(worst);
}

int nearest_anchor(const Vec& p, const AnchorSet& anchors) {
    if (anchors.empty()) throw std::invalid_argument("nearest_anchor: empty anchor set");
    int best_idx = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < anchors.size(); ++i) {
        const Vec& q = anchors.points[static_cast<std::size_t>(i)];
        double s = 0.0;
        for (std::size_t a = 0; a < p.size(); ++a) {
            const double dd = p[a] - q[a];
            s += dd * dd;
        }
        if (s < best) {
            best = s;
            best_idx = i;
        }
    }
    return best_idx;
}

RegionFamily RegionFamily::nested_default() { return RegionFamily{{0.25, 0.50, 0.90}}; }

std::pair<Vec, Vec> RegionFamily::bounds(const ConditionSpace& space, int region) const {
    if (region < 0 || region >= size()) throw std::invalid_argument("RegionFamily: bad region index");
    const double frac = volume_fractions[static_cast<std::size_t>(region)];
    if (!(frac > 0.0 && frac <= 1.0)) throw std::invalid_argument("RegionFamily: fraction in (0,1] required");
    const double side_scale = std::pow(frac, 1.0 / space.dim);
    Vec blo(static_cast<std::size_t>(space.dim)), bhi(static_cast<std::size_t>(space.dim));
    for (int a = 0; a < space.dim; ++a) {
        const double c = 0.5 * (space.lo[static_cast<std::size_t>(a)] + space.hi[static_cast<std::size_t>(a)]);
        const double half = 0.5 * side_scale * space.width(a);
        blo[static_cast<std::size_t>(a)] = c - half;
        bhi[static_cast<std::size_t>(a)] = c + half;
    }
    return {blo, bhi};
}

bool RegionFamily::contains(const ConditionSpace& space, int region, const Vec& p) const {
    const auto [blo, bhi] = bounds(space, region);
    for (std::size_t a = 0; a < blo.size(); ++a) {
        if (p[a] < blo[a] || p[a] > bhi[a]) return false;
    }
    return true;
}

Vec RegionFamily::sample(const ConditionSpace& space, int region, Rng& rng) const {
    const auto [blo, bhi] = bounds(space, region);
    Vec p(blo.size());
    for (std::size_t a = 0; a < blo.size(); ++a) p[a] = rng.uniform(blo[a], bhi[a]);
    return p;
}

void write_anchor_table(std::ostream& out, const AnchorSet& anchors, int dim) {
    out << "# d=" << dim << " layout=" << to_string(anchors.layout) << "\n";
    for (const Vec& p : anchors.points) {
        for (std::size_t a = 0; a < p.size(); ++a) {
            if (a != 0) out << ' ';
            format_double(out, p[a]);
        }
        out << "\n";
    }
}

AnchorSet read_anchor_table(std::istream& in, int* dim_out) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# d=", 0) != 0) {
        throw std::invalid_argument("anchor table: missing header");
    }
    std::istringstream hs(header.substr(2));
    std::string d_field, layout_field;
    hs >> d_field >> layout_field;
    const int d = std::stoi(d_field.substr(2));
    if (dim_out != nullptr) *dim_out = d;
    AnchorSet out;
    out.layout = layout_from_string(layout_field.substr(std::string("layout=").size()));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Vec p;
        double v = 0.0;
        while (ls >> v) p.push_back(v);
        if (static_cast<int>(p.size()) != d) throw std::invalid_argument("anchor table: bad row width");
        out.points.push_back(std::move(p));
    }
    return out;
}

}  // namespace aca
