#include <umbra/camera.hpp>

#include <cmath>
#include <stdexcept>

namespace umbra {

Camera::Camera(const Mat3& rotation, const Vec3& translation,
               Projection projection, double fov_or_extent, int image_width,
               int image_height)
    : rotation_(rotation),
      translation_(translation),
      projection_(projection),
      fov_or_extent_(fov_or_extent),
      width_(image_width),
      height_(image_height) {
  if (orthonormality_error(rotation) > 1e-6) {
    throw std::invalid_argument("camera rotation is not orthonormal");
  }
  if (!is_finite(translation)) {
    throw std::invalid_argument("camera translation is not finite");
  }
  if (!(fov_or_extent > 0.0)) {
    throw std::invalid_argument("camera fov_or_extent must be positive");
  }
  if (image_width < 1 || image_height < 1) {
    throw std::invalid_argument("camera image dimensions must be >= 1");
  }
}

Vec3 Camera::center() const { return rotation_.transpose_mul(-translation_); }

Vec2 Camera::project(const Vec3& p) const {
  const Vec3 c = rotation_ * p + translation_;
  if (projection_ == Projection::kOrthographic) {
    const double half_h = fov_or_extent_;
    const double half_w = half_h * aspect();
    return {(c.x / half_w * 0.5 + 0.5) * width_,
            (c.y / half_h * 0.5 + 0.5) * height_};
  }
  const double tan_half = std::tan(fov_or_extent_ * 0.5);
  const double xn = c.x / c.z;
  const double yn = c.y / c.z;
  return {(xn / (tan_half * aspect()) * 0.5 + 0.5) * width_,
          (yn / tan_half * 0.5 + 0.5) * height_};
}

Camera camera_from_view_spec(double azimuth, double elevation, double distance,
                             Projection projection, double fov_or_extent,
                             int image_width, int image_height) {
  if (!std::isfinite(azimuth) || !std::isfinite(elevation) ||
      !std::isfinite(distance)) {
    throw std::invalid_argument("view spec has non-finite values");
  }
  if (!(distance > 0.0)) {
    throw std::invalid_argument("view distance must be positive");
  }

  const Vec3 position{distance * std::cos(elevation) * std::cos(azimuth),
                      distance * std::cos(elevation) * std::sin(azimuth),
                      distance * std::sin(elevation)};
  const Vec3 forward = normalized(-position);

  // Tie-break: +x up when looking straight down a pole.
  const bool at_pole = std::abs(std::cos(elevation)) < 1e-6;
  const Vec3 up = at_pole ? Vec3{1, 0, 0} : Vec3{0, 0, 1};

  const Vec3 right = normalized(cross(forward, up));
  const Vec3 down = cross(forward, right);

  const Mat3 rotation = Mat3::from_rows(right, down, forward);
  const Vec3 translation = -(rotation * position);
  return Camera(rotation, translation, projection, fov_or_extent, image_width,
                image_height);
}

Ray pixel_ray(const Camera& camera, double px, double py) {
  const double u = px / camera.width() * 2.0 - 1.0;
  const double v = py / camera.height() * 2.0 - 1.0;
  const Vec3 c = camera.center();

  if (camera.projection() == Projection::kOrthographic) {
    const double half_h = camera.fov_or_extent();
    const double half_w = half_h * camera.aspect();
    const Vec3 origin =
        c + camera.right() * (u * half_w) + camera.down() * (v * half_h);
    return {origin, camera.forward()};
  }

  const double tan_half = std::tan(camera.fov_or_extent() * 0.5);
  const Vec3 dir = camera.right() * (u * tan_half * camera.aspect()) +
                   camera.down() * (v * tan_half) + camera.forward();
  return {c, normalized(dir)};
}

}  // namespace umbra
