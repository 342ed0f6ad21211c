#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aca/linalg.hpp"
#include "aca/rng.hpp"

namespace aca {

// Compact axis-aligned condition domain P with a dense evaluation grid.
// Sup-type quantities (fill distance, worst-case field error) are estimated on
// the grid; bound checks are phrased against the same grid so no continuous
// slack enters the inequalities.
struct ConditionSpace {
    int dim = 0;
    Vec lo;
    Vec hi;
    int eval_resolution = 0;  // points per axis

    static ConditionSpace box(Vec lo, Vec hi, int resolution = 0);
    static ConditionSpace unit_box(int d, int resolution = 0);

    double width(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
    Vec center() const;
    bool contains(const Vec& p) const;
    Vec clip(Vec p) const;

    std::size_t grid_size() const;
    Vec grid_point(std::size_t flat_index) const;
    double grid_spacing(int axis) const { return width(axis) / static_cast<double>(eval_resolution - 1); }
};

enum class LayoutTag {
    grid,
    low_discrepancy,
    random_uniform,
    center_rect,
    center_circle,
    top_left,
    custom,
};

std::string to_string(LayoutTag tag);
LayoutTag layout_from_string(const std::string& name);

struct AnchorSet {
    std::vector<Vec> points;
    LayoutTag layout = LayoutTag::custom;

    int size() const { return static_cast<int>(points.size()); }
    bool empty() const { return points.empty(); }
};

// Seeded layout catalog. grid requires K to be a perfect d-th power;
// center_circle requires dim >= 2. Points are always pairwise distinct and
// inside the domain.
AnchorSet make_layout(const ConditionSpace& space, LayoutTag kind, int k, std::uint64_t seed);

// Worst-case coverage gap, measured on the dense evaluation grid.
double fill_distance(const AnchorSet& anchors, const ConditionSpace& space);

// Index of the Euclidean-nearest anchor; ties resolve to the lowest index.
int nearest_anchor(const Vec& p, const AnchorSet& anchors);

// i-th point (1-based) of the R_d Kronecker sequence in [0,1)^d, optionally
// shifted mod 1. The generalized golden ratio keeps the sequence quasi-uniform
// at small counts, which is what the layouts and probe pools rely on.
Vec quasirandom_point(int index, int d, const Vec* shift = nullptr);

// Nested centered boxes by volume fraction (region 0 innermost).
struct RegionFamily {
    std::vector<double> volume_fractions;

    static RegionFamily nested_default();  // {0.25, 0.50, 0.90}

    int size() const { return static_cast<int>(volume_fractions.size()); }
    // Axis-aligned bounds of region i inside the given space.
    std::pair<Vec, Vec> bounds(const ConditionSpace& space, int region) const;
    bool contains(const ConditionSpace& space, int region, const Vec& p) const;
    Vec sample(const ConditionSpace& space, int region, Rng& rng) const;
};

// Line-oriented table: "# d=<d> layout=<tag>" then one point per line.
void write_anchor_table(std::ostream& out, const AnchorSet& anchors, int dim);
AnchorSet read_anchor_table(std::istream& in, int* dim_out = nullptr);

}  // namespace aca
