#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace lunekit {

std::string to_string(Projection p) {
  switch (p) {
    case Projection::Plane:
      return "plane";
    case Projection::PoincareDisk:
      return "poincare";
    case Projection::OrthographicSphere:
      return "orthographic";
  }
  return "plane";
}

Projection parse_projection(const std::string& name) {
  if (name == "plane") return Projection::Plane;
  if (name == "poincare") return Projection::PoincareDisk;
  if (name == "orthographic") return Projection::OrthographicSphere;
  throw ProjectionError("unknown projection '" + name + "'");
}

Projection default_projection(Curvature kappa) {
  switch (kappa.sign()) {
    case -1:
      return Projection::PoincareDisk;
    case 1:
      return Projection::OrthographicSphere;
    default:
      return Projection::Plane;
  }
}

void check_projection(Curvature kappa, Projection p) {
  if (p != default_projection(kappa)) {
    std::ostringstream os;
    os << "projection " << to_string(p) << " does not apply to kappa = " << kappa.value();
    throw ProjectionError(os.str());
  }
}

RenderScene::RenderScene(Curvature kappa, Projection projection) : kappa_(kappa), projection_(projection) {
  check_projection(kappa, projection);
}

void RenderScene::set_view_center(const ModelPoint& c) {
  const auto [e1, e2] = tangent_basis(c);
  (void)e2;
  view_ = TangentVector{c, e1};
}

void RenderScene::add(SceneElement e) {
  for (const ModelPoint& p : e.points) {
    if (p.curvature() != kappa_) throw ProjectionError("scene elements must share the scene curvature");
  }
  elements_.push_back(std::move(e));
}

void RenderScene::add_polyline(std::vector<ModelPoint> pts, Style style) {
  add({SceneElement::Kind::Polyline, std::move(pts), std::move(style), {}});
}

void RenderScene::add_polygon(std::vector<ModelPoint> pts, Style style) {
  add({SceneElement::Kind::Polygon, std::move(pts), std::move(style), {}});
}

void RenderScene::add_arc(const ConstantCurvatureArc& arc, Style style, int samples) {
  add_polyline(arc.sample(samples), std::move(style));
}

void RenderScene::add_geodesic(const ModelPoint& p, const ModelPoint& q, Style style, int samples) {
  std::vector<ModelPoint> pts;
  for (int i = 0; i <= samples; ++i) pts.push_back(geodesic_lerp(p, q, static_cast<double>(i) / samples));
  add_polyline(std::move(pts), std::move(style));
}

void RenderScene::add_circle(const ModelPoint& c, double r, Style style, int samples) {
  const auto [e1, e2] = tangent_basis(c);
  (void)e2;
  const TangentVector base{c, e1};
  std::vector<ModelPoint> pts;
  for (int i = 0; i < samples; ++i) pts.push_back(exp_map(rotate(base, 2.0 * std::numbers::pi * i / samples), r));
  add_polygon(std::move(pts), std::move(style));
}

void RenderScene::add_point(const ModelPoint& p, Style style, std::string label) {
  add({SceneElement::Kind::Point, {p}, std::move(style), std::move(label)});
}

std::optional<Vec2> RenderScene::project(const ModelPoint& p) const {
  const Vec3& x = p.coords();
  switch (projection_) {
    case Projection::Plane:
      return Vec2(x.x(), x.y());
    case Projection::PoincareDisk: {
      const double k = kappa_.root();
      return Vec2(k * x.x(), k * x.y()) / (1.0 + k * x.z());
    }
    case Projection::OrthographicSphere: {
      const Vec3 y = view_ ? move_from_frame(*view_, p).coords() : x;
      const double k = kappa_.root();
      if (y.z() < 0.0) return std::nullopt;
      return Vec2(k * y.x(), k * y.y());
    }
  }
  return std::nullopt;
}

std::string RenderScene::to_svg(int size) const {
  // World window: the model disk for the curved projections, the bounding
  // box of the content for the plane.
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  if (projection_ == Projection::Plane) {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (const SceneElement& e : elements_) {
      for (const ModelPoint& p : e.points) {
        const Vec2 q = *project(p);
        xmin = std::min(xmin, q.x());
        xmax = std::max(xmax, q.x());
        ymin = std::min(ymin, q.y());
        ymax = std::max(ymax, q.y());
      }
    }
    if (!std::isfinite(xmin)) xmin = ymin = -1.0, xmax = ymax = 1.0;
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9}) * 1.1;
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  const double scale = size / span;
  const auto px = [&](const Vec2& q) {
    return Vec2(0.5 * size + (q.x() - cx) * scale, 0.5 * size - (q.y() - cy) * scale);
  };

  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (projection_ != Projection::Plane) {
    const Vec2 c = px(Vec2(0.0, 0.0));
    os << "<circle class=\"model-boundary\" cx=\"" << c.x() << "\" cy=\"" << c.y() << "\" r=\"" << scale
       << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  }
  const auto style_attrs = [&](const Style& s) {
    std::ostringstream a;
    if (!s.css_class.empty()) a << " class=\"" << s.css_class << "\"";
    a << " fill=\"" << s.fill << "\" stroke=\"" << s.stroke << "\" stroke-width=\"" << s.width << "\"";
    if (s.dashed) a << " stroke-dasharray=\"6 4\"";
    return a.str();
  };
  for (const SceneElement& e : elements_) {
    if (e.kind == SceneElement::Kind::Point) {
      const auto q = project(e.points.front());
      if (!q) continue;
      const Vec2 p = px(*q);
      os << "<circle" << style_attrs(e.style) << " cx=\"" << p.x() << "\" cy=\"" << p.y() << "\" r=\"3\"/>\n";
      if (!e.label.empty()) {
        os << "<text x=\"" << p.x() + 5 << "\" y=\"" << p.y() - 5 << "\" font-size=\"14\">" << e.label << "</text>\n";
      }
      continue;
    }
    // Hidden points split the path into visible runs.
    std::ostringstream d;
    bool pen_down = false;
    for (const ModelPoint& m : e.points) {
      const auto q = project(m);
      if (!q) {
        pen_down = false;
        continue;
      }
      const Vec2 p = px(*q);
      d << (pen_down ? " L" : " M") << p.x() << ' ' << p.y();
      pen_down = true;
    }
    if (e.kind == SceneElement::Kind::Polygon && pen_down) d << " Z";
    const std::string path = d.str();
    if (path.empty()) continue;
    os << "<path" << style_attrs(e.style) << " d=\"" << path.substr(1) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lunekit
