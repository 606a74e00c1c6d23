#pragma once

#include <umbra/vec3.hpp>

namespace umbra {

enum class Projection { kOrthographic, kPerspective };

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
};

// A calibrated view. World-to-camera transform is x_cam = R * x_world + t.
// The camera frame is x right, y down, z along the viewing direction, so
// pixel row 0 is the top of the image.
//
// For orthographic cameras fov_or_extent is the half-height of the view
// window in world units; for perspective it is the vertical field of view
// in radians.
class Camera {
 public:
  Camera(const Mat3& rotation, const Vec3& translation, Projection projection,
         double fov_or_extent, int image_width, int image_height);

  const Mat3& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }
  Projection projection() const { return projection_; }
  double fov_or_extent() const { return fov_or_extent_; }
  int width() const { return width_; }
  int height() const { return height_; }

  Vec3 center() const;  // camera position in world space, -R^T t

  const Vec3& right() const { return rotation_.r0; }
  const Vec3& down() const { return rotation_.r1; }
  const Vec3& forward() const { return rotation_.r2; }

  double aspect() const {
    return static_cast<double>(width_) / static_cast<double>(height_);
  }

  // World point -> continuous pixel coordinates (pixel centers at +0.5).
  Vec2 project(const Vec3& p) const;

  // Depth along the optical axis; needed by the perspective projection
  // Jacobian in the rasterizer backward pass.
  double depth(const Vec3& p) const { return dot(forward(), p - center()); }

 private:
  Mat3 rotation_;
  Vec3 translation_;
  Projection projection_;
  double fov_or_extent_;
  int width_;
  int height_;
};

// Camera at look-at-origin spherical coordinates. Azimuth rotates about +z
// starting from +x; elevation raises toward +z. The up vector is +z, or +x
// when the view is within 1e-6 of a pole.
Camera camera_from_view_spec(double azimuth, double elevation, double distance,
                             Projection projection, double fov_or_extent,
                             int image_width, int image_height);

// Ray through the continuous pixel position (px, py); callers pass pixel
// centers as (i + 0.5, j + 0.5).
Ray pixel_ray(const Camera& camera, double px, double py);

}  // namespace umbra
