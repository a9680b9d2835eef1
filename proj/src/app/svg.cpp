#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dwb/app.hpp"

namespace dwb {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr int kCurveSamples = 400;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Box {
    double x0, x1, y0, y1;
};

Box viewport(const std::vector<std::array<double, 2>>& pts) {
    Box b{0.0, 1.0, 0.0, 1.0};
    if (!pts.empty()) {
        b = {pts[0][0], pts[0][0], pts[0][1], pts[0][1]};
        for (const auto& p : pts) {
            b.x0 = std::min(b.x0, p[0]);
            b.x1 = std::max(b.x1, p[0]);
            b.y0 = std::min(b.y0, p[1]);
            b.y1 = std::max(b.y1, p[1]);
        }
    }
    // a point trajectory still needs a visible window
    if (b.x1 - b.x0 == 0.0) b.x0 -= 0.5, b.x1 += 0.5;
    if (b.y1 - b.y0 == 0.0) b.y0 -= 0.5, b.y1 += 0.5;
    const double px = 0.1 * (b.x1 - b.x0);
    const double py = 0.1 * (b.y1 - b.y0);
    return {b.x0 - px, b.x1 + px, b.y0 - py, b.y1 + py};
}

}  // namespace

std::string render_svg(const PhasePlot& plot) {
    const Box box = viewport(plot.trajectory);
    auto sx = [&](double x) { return (x - box.x0) / (box.x1 - box.x0) * kWidth; };
    auto sy = [&](double y) { return kHeight - (y - box.y0) / (box.y1 - box.y0) * kHeight; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    os << "<title>" << plot.title << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const NumericXY S(plot.F.y_coefficient(1));
    const NumericXY T(plot.F.y_coefficient(0));
    const double span_y = box.y1 - box.y0;
    std::vector<std::string> pieces;
    std::string cur;
    for (int k = 0; k <= kCurveSamples; ++k) {
        const double x = box.x0 + (box.x1 - box.x0) * k / kCurveSamples;
        const double s = S(x, 0.0);
        const double y = std::fabs(s) > 1e-12 ? -T(x, 0.0) / s : NAN;
        if (!std::isfinite(y) || y < box.y0 - span_y || y > box.y1 + span_y) {
            if (!cur.empty()) pieces.push_back(cur), cur.clear();
            continue;
        }
        cur += (cur.empty() ? "" : " ") + num(sx(x)) + "," + num(sy(y));
    }
    if (!cur.empty()) pieces.push_back(cur);
    for (const auto& p : pieces)
        os << "<polyline class=\"curve\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"" << p
           << "\"/>\n";

    os << "<polyline class=\"trajectory\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < plot.trajectory.size(); ++k)
        os << (k ? " " : "") << num(sx(plot.trajectory[k][0])) << ',' << num(sy(plot.trajectory[k][1]));
    os << "\"/>\n</svg>\n";
    return os.str();
}

}  // namespace dwb
