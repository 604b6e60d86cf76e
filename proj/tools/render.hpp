#pragma once

// SVG scenes of curves and domains in M²(κ). Curved elements are dense
// polylines mapped through the projection, never SVG arc primitives.

#include <optional>
#include <string>
#include <vector>

#include "lunekit/curves.hpp"
#include "lunekit/geometry.hpp"

namespace lunekit {

class ProjectionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

enum class Projection { Plane, PoincareDisk, OrthographicSphere };

std::string to_string(Projection p);
/// "plane", "poincare" or "orthographic".
Projection parse_projection(const std::string& name);
Projection default_projection(Curvature kappa);
/// Throws ProjectionError when the projection does not fit the model.
void check_projection(Curvature kappa, Projection p);

struct Style {
  std::string css_class;
  std::string stroke = "#222";
  double width = 1.5;
  std::string fill = "none";
  bool dashed = false;
};

struct SceneElement {
  enum class Kind { Polyline, Polygon, Point };
  Kind kind = Kind::Polyline;
  std::vector<ModelPoint> points;
  Style style;
  std::string label;
};

class RenderScene {
 public:
  RenderScene(Curvature kappa, Projection projection);

  Curvature curvature() const { return kappa_; }
  Projection projection() const { return projection_; }
  /// Orthographic view: the sphere is seen from above this point.
  void set_view_center(const ModelPoint& c);

  void add_polyline(std::vector<ModelPoint> pts, Style style);
  void add_polygon(std::vector<ModelPoint> pts, Style style);
  void add_arc(const ConstantCurvatureArc& arc, Style style, int samples = 256);
  void add_geodesic(const ModelPoint& p, const ModelPoint& q, Style style, int samples = 64);
  /// Metric circle of radius r about c.
  void add_circle(const ModelPoint& c, double r, Style style, int samples = 256);
  void add_point(const ModelPoint& p, Style style, std::string label = {});

  const std::vector<SceneElement>& elements() const { return elements_; }

  /// Projected 2D coordinates; nullopt on the hidden hemisphere.
  std::optional<Vec2> project(const ModelPoint& p) const;

  /// SVG 1.1 document, square of the given pixel size.
  std::string to_svg(int size = 800) const;

 private:
  void add(SceneElement e);

  Curvature kappa_;
  Projection projection_;
  std::optional<TangentVector> view_;
  std::vector<SceneElement> elements_;
};

}  // namespace lunekit
