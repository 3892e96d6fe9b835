#include "textedit/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace textedit {

Polygon::Polygon(std::vector<Point> vertices)
    : vertices_(std::move(vertices))
{
    if (vertices_.size() < 3)
        throw GeometryError("polygon needs at least 3 vertices, got " +
                            std::to_string(vertices_.size()));
    for (const auto& v : vertices_) {
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw GeometryError("polygon vertex is not finite");
    }
}

Box polygon_bbox(const Polygon& p)
{
    const auto& vs = p.vertices();
    if (vs.empty())
        throw GeometryError("bounding box of an empty polygon");
    Box b{vs[0].x, vs[0].y, vs[0].x, vs[0].y};
    for (const auto& v : vs) {
        b.x_min = std::min(b.x_min, v.x);
        b.y_min = std::min(b.y_min, v.y);
        b.x_max = std::max(b.x_max, v.x);
        b.y_max = std::max(b.y_max, v.y);
    }
    return b;
}

double iou(const Box& a, const Box& b)
{
    if (a == b)
        return 1.0;
    const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    const double inter = (iw > 0.0 && ih > 0.0) ? iw * ih : 0.0;
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0)
        return 0.0;
    return std::clamp(inter / uni, 0.0, 1.0);
}

RegionAssignment assign_regions(std::span<const OcrDetection> detections, const Polygon& target,
                                double threshold)
{
    const Box target_box = polygon_bbox(target);
    RegionAssignment out;
    for (const auto& det : detections) {
        if (iou(polygon_bbox(det.polygon), target_box) > threshold)
            out.target.push_back(det);
        else
            out.background.push_back(det);
    }
    return out;
}

bool center_in_region(const OcrDetection& det, const Polygon& region)
{
    const Point c = polygon_bbox(det.polygon).center();
    const Box r = polygon_bbox(region);
    return c.x >= r.x_min && c.x <= r.x_max && c.y >= r.y_min && c.y <= r.y_max;
}

} // namespace textedit
