#include "risklab/svg.hpp"

#include <fstream>
#include <sstream>

#include "risklab/error.hpp"

namespace risklab::svg {

namespace {

constexpr double kScale = 60.0;   // pixels per unit
constexpr double kMargin = 20.0;

struct Frame {
  Window w;
  double px(double x) const { return kMargin + (x - w.x_lo) * kScale; }
  double py(double y) const { return kMargin + (w.y_hi - y) * kScale; }
  double width() const { return 2 * kMargin + (w.x_hi - w.x_lo) * kScale; }
  double height() const { return 2 * kMargin + (w.y_hi - w.y_lo) * kScale; }
};

std::string points(const Frame& f, const std::vector<Point2>& pts) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << f.px(pts[i].x) << ',' << f.py(pts[i].y);
  }
  return os.str();
}

}  // namespace

std::string render(const FigureData& fig) {
  const Frame f{fig.window};
  std::ostringstream os;
  os.precision(10);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << f.width()
     << "\" height=\"" << f.height() << "\" viewBox=\"0 0 " << f.width() << ' ' << f.height()
     << "\">\n"
     << "  <rect x=\"0\" y=\"0\" width=\"" << f.width() << "\" height=\"" << f.height()
     << "\" fill=\"white\"/>\n"
     << "  <polygon id=\"cone-region\" points=\"" << points(f, fig.cone_region)
     << "\" fill=\"red\" fill-opacity=\"0.3\" stroke=\"none\"/>\n"
     << "  <polygon id=\"staircase-region\" points=\"" << points(f, fig.staircase_region)
     << "\" fill=\"blue\" fill-opacity=\"0.3\" stroke=\"none\"/>\n"
     << "  <line id=\"x-axis\" x1=\"" << f.px(fig.window.x_lo) << "\" y1=\"" << f.py(0) << "\" x2=\""
     << f.px(fig.window.x_hi) << "\" y2=\"" << f.py(0) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "  <line id=\"y-axis\" x1=\"" << f.px(0) << "\" y1=\"" << f.py(fig.window.y_lo) << "\" x2=\""
     << f.px(0) << "\" y2=\"" << f.py(fig.window.y_hi) << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "  <polyline id=\"cone-boundary\" points=\"" << points(f, fig.cone_boundary)
     << "\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n"
     << "  <polyline id=\"staircase-boundary\" points=\"" << points(f, fig.staircase_boundary)
     << "\" fill=\"none\" stroke=\"blue\" stroke-width=\"2\"/>\n"
     << "  <circle id=\"origin\" cx=\"" << f.px(0) << "\" cy=\"" << f.py(0)
     << "\" r=\"3\" fill=\"black\"/>\n"
     << "</svg>\n";
  return os.str();
}

std::string vertex_list(const FigureData& fig) {
  std::ostringstream os;
  os.precision(17);
  auto block = [&](const char* name, const std::vector<Point2>& pts) {
    os << "# " << name << '\n';
    for (const Point2& p : pts) os << p.x << ' ' << p.y << '\n';
  };
  block("cone_boundary", fig.cone_boundary);
  block("staircase_boundary", fig.staircase_boundary);
  block("cone_region", fig.cone_region);
  block("staircase_region", fig.staircase_region);
  return os.str();
}

void write_text(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

}  // namespace risklab::svg
