#include "support/synthetic.hpp"
#include "textedit/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace textedit;
using textedit::testing::det;
using textedit::testing::rect;

TEST(Polygon, RejectsDegenerateInput)
{
    EXPECT_THROW(Polygon({{0, 0}, {1, 1}}), GeometryError);
    EXPECT_THROW(Polygon({{0, 0}, {1, 0}, {std::nan(""), 1}}), GeometryError);
    EXPECT_THROW(Polygon({{0, 0}, {1, 0}, {std::numeric_limits<double>::infinity(), 1}}), GeometryError);
    EXPECT_NO_THROW(Polygon({{0, 0}, {1, 0}, {1, 1}}));
}

TEST(Bbox, OfRotatedQuad)
{
    const Box b = polygon_bbox(Polygon({{2, 0}, {4, 2}, {2, 4}, {0, 2}}));
    EXPECT_EQ(b, (Box{0, 0, 4, 4}));
    EXPECT_EQ(b.center(), (Point{2, 2}));
}

TEST(Iou, Fixtures)
{
    EXPECT_NEAR(iou({0, 0, 2, 2}, {1, 0, 3, 2}), 1.0 / 3.0, 1e-12);
    EXPECT_EQ(iou({0, 0, 2, 2}, {0, 0, 2, 2}), 1.0);
    EXPECT_EQ(iou({0, 0, 1, 1}, {2, 2, 3, 3}), 0.0);
    EXPECT_EQ(iou({0, 0, 1, 1}, {1, 0, 2, 1}), 0.0);  // shared edge
    EXPECT_EQ(iou({0, 0, 4, 4}, {1, 1, 3, 3}), 0.25);  // containment
}

TEST(Iou, DegenerateBoxes)
{
    EXPECT_EQ(iou({1, 1, 1, 1}, {1, 1, 1, 1}), 1.0);
    EXPECT_EQ(iou({0, 0, 0, 5}, {0, 0, 0, 5}), 1.0);
    EXPECT_EQ(iou({1, 1, 1, 1}, {2, 2, 2, 2}), 0.0);
    EXPECT_EQ(iou({1, 1, 1, 1}, {0, 0, 2, 2}), 0.0);
}

TEST(Iou, SymmetricAndBounded)
{
    SeededRng rng(5);
    auto box = [&] {
        const double x = rng.unit() * 10, y = rng.unit() * 10;
        return Box{x, y, x + rng.unit() * 5, y + rng.unit() * 5};
    };
    for (int i = 0; i < 20000; ++i) {
        const Box a = box(), b = box();
        const double v = iou(a, b);
        EXPECT_EQ(v, iou(b, a));
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(AssignRegions, ThresholdIsStrict)
{
    const Polygon target = rect(0, 0, 2, 2);
    const std::vector<OcrDetection> dets{
        det("half", 0, 0, 2, 1),    // IoU exactly 0.5
        det("most", 0, 0, 2, 1.2),  // 0.6
        det("far", 10, 10, 12, 12),
    };
    const auto r = assign_regions(dets, target, 0.5);
    ASSERT_EQ(r.target.size(), 1u);
    EXPECT_EQ(r.target[0].text, "most");
    ASSERT_EQ(r.background.size(), 2u);
    EXPECT_EQ(r.background[0].text, "half");
    EXPECT_EQ(r.background[1].text, "far");
}

TEST(AssignRegions, PartitionsInput)
{
    const std::vector<OcrDetection> dets{det("a", 0, 0, 1, 1), det("b", 0, 0, 2, 2), det("c", 5, 5, 6, 6)};
    const auto r = assign_regions(dets, rect(0, 0, 2, 2));
    EXPECT_EQ(r.target.size() + r.background.size(), dets.size());
}

TEST(CenterInRegion, BoundaryInclusive)
{
    const Polygon region = rect(0, 0, 10, 10);
    EXPECT_TRUE(center_in_region(det("in", 2, 2, 4, 4), region));
    EXPECT_TRUE(center_in_region(det("edge", 8, 8, 12, 12), region));  // center (10,10)
    EXPECT_FALSE(center_in_region(det("out", 9, 9, 13, 13), region));
}
