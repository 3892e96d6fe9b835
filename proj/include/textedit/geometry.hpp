#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace textedit {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered vertex list in pixel coordinates; at least three finite vertices.
class Polygon {
public:
    Polygon() = default;
    explicit Polygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return vertices_; }
    bool empty() const { return vertices_.empty(); }

    bool operator==(const Polygon&) const = default;

private:
    std::vector<Point> vertices_;
};

/// Axis-aligned box, x_min <= x_max and y_min <= y_max.
struct Box {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Point center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }

    bool operator==(const Box&) const = default;
};

struct OcrDetection {
    std::string text;
    double confidence = 1.0;
    Polygon polygon;

    bool operator==(const OcrDetection&) const = default;
};

struct RegionAssignment {
    std::vector<OcrDetection> target;
    std::vector<OcrDetection> background;
};

Box polygon_bbox(const Polygon& p);

/// Intersection over union. Identical boxes give 1 even when degenerate;
/// otherwise a zero-area union gives 0.
double iou(const Box& a, const Box& b);

/// A detection belongs to the target set iff IoU of its hull with the target
/// hull is strictly greater than `threshold`. Ties go to background.
RegionAssignment assign_regions(std::span<const OcrDetection> detections, const Polygon& target,
                                double threshold = 0.5);

/// Bounding-box centroid of the detection lies inside the region's bounding
/// box, boundary inclusive.
bool center_in_region(const OcrDetection& det, const Polygon& region);

} // namespace textedit
