#include <umbra/camera.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace umbra;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool approx_vec(const Vec3& a, const Vec3& b, double tol = 1e-9) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol &&
         std::abs(a.z - b.z) <= tol;
}

}  // namespace

TEST_CASE("camera_from_view_spec: axis-aligned cases") {
  const Camera cx = camera_from_view_spec(0.0, 0.0, 3.0,
                                          Projection::kOrthographic, 0.9,
                                          64, 64);
  CHECK(approx_vec(cx.center(), {3, 0, 0}));
  CHECK(approx_vec(cx.forward(), {-1, 0, 0}));

  const Camera cy = camera_from_view_spec(kPi / 2, 0.0, 3.0,
                                          Projection::kOrthographic, 0.9,
                                          64, 64);
  CHECK(approx_vec(cy.center(), {0, 3, 0}));
  CHECK(approx_vec(cy.forward(), {0, -1, 0}));
}

TEST_CASE("camera_from_view_spec: spherical-to-Cartesian oracle") {
  const double az = kPi / 4;
  const double el = kPi / 6;
  const double dist = 2.0;
  // independent conversion
  const Vec3 expected{dist * std::cos(el) * std::cos(az),
                      dist * std::cos(el) * std::sin(az),
                      dist * std::sin(el)};

  const Camera cam = camera_from_view_spec(az, el, dist,
                                           Projection::kPerspective, 0.7,
                                           64, 64);
  CHECK(approx_vec(cam.center(), expected));
  CHECK(approx_vec(cam.forward(), normalized(-expected)));
}

TEST_CASE("camera_from_view_spec: pole tie-break and validation") {
  const Camera top = camera_from_view_spec(0.3, kPi / 2, 2.0,
                                           Projection::kOrthographic, 0.9,
                                           32, 32);
  CHECK(approx_vec(top.forward(), {0, 0, -1}, 1e-9));
  CHECK(orthonormality_error(top.rotation()) < 1e-12);

  CHECK_THROWS(camera_from_view_spec(0, 0, -1.0, Projection::kOrthographic,
                                     0.9, 32, 32));
  const double nan = std::nan("");
  CHECK_THROWS(camera_from_view_spec(nan, 0, 1.0, Projection::kOrthographic,
                                     0.9, 32, 32));
}

TEST_CASE("camera constructor rejects bad inputs") {
  Mat3 skewed = Mat3::identity();
  skewed.r0 = {1.0, 0.1, 0.0};
  CHECK_THROWS(Camera(skewed, {}, Projection::kOrthographic, 1.0, 8, 8));
  CHECK_THROWS(Camera(Mat3::identity(), {}, Projection::kOrthographic, 0.0,
                      8, 8));
  CHECK_THROWS(Camera(Mat3::identity(), {}, Projection::kOrthographic, 1.0,
                      0, 8));
}

TEST_CASE("pixel_ray: orthographic rays are parallel, origins differ") {
  const Camera cam = camera_from_view_spec(0.0, 0.0, 3.0,
                                           Projection::kOrthographic, 0.9,
                                           64, 48);
  const Ray r1 = pixel_ray(cam, 0.5, 0.5);
  const Ray r2 = pixel_ray(cam, 61.5, 40.5);
  CHECK(approx_vec(r1.direction, {-1, 0, 0}));
  CHECK(approx_vec(r2.direction, {-1, 0, 0}));
  CHECK(norm(r1.origin - r2.origin) > 0.1);
}

TEST_CASE("pixel_ray: perspective principal ray equals optical axis") {
  const Camera cam = camera_from_view_spec(1.1, 0.4, 2.5,
                                           Projection::kPerspective, 0.8,
                                           64, 64);
  const Ray r = pixel_ray(cam, 32.0, 32.0);
  CHECK(approx_vec(r.direction, cam.forward(), 1e-6));
  CHECK(approx_vec(r.origin, cam.center()));
}

TEST_CASE("pixel_ray: perspective corner ray matches pinhole oracle") {
  // Camera on the -y axis looking toward +y; basis known by construction:
  // forward (0,1,0), right (f x z) = (1,0,0), down (0,0,-1).
  const double fov = 0.6;
  const int w = 32;
  const int h = 16;
  const Camera cam = camera_from_view_spec(-kPi / 2, 0.0, 4.0,
                                           Projection::kPerspective, fov,
                                           w, h);
  CHECK(approx_vec(cam.forward(), {0, 1, 0}));
  CHECK(approx_vec(cam.right(), {1, 0, 0}));
  CHECK(approx_vec(cam.down(), {0, 0, -1}));

  // Pinhole: pixel center (0.5, 0.5) sits at normalized offsets
  // u = 2*(0.5/w) - 1, v = 2*(0.5/h) - 1 of the half-frustum tangents.
  const double tan_half = std::tan(fov / 2);
  const double aspect = static_cast<double>(w) / h;
  const double u = 2.0 * (0.5 / w) - 1.0;
  const double v = 2.0 * (0.5 / h) - 1.0;
  const Vec3 expected = normalized(Vec3{1, 0, 0} * (u * tan_half * aspect) +
                                   Vec3{0, 0, -1} * (v * tan_half) +
                                   Vec3{0, 1, 0});

  const Ray r = pixel_ray(cam, 0.5, 0.5);
  CHECK(approx_vec(r.direction, expected, 1e-12));
}

TEST_CASE("pixel_ray: directions are unit for random cameras") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> elev(-1.4, 1.4);
  std::uniform_real_distribution<double> pix(0.0, 1.0);

  for (int i = 0; i < 50; ++i) {
    const Projection proj =
        (i % 2 == 0) ? Projection::kOrthographic : Projection::kPerspective;
    const Camera cam = camera_from_view_spec(angle(rng), elev(rng), 2.0,
                                             proj, 0.8, 40, 30);
    const Ray r = pixel_ray(cam, pix(rng) * 40, pix(rng) * 30);
    CHECK(std::abs(norm(r.direction) - 1.0) < 1e-6);
    if (proj == Projection::kPerspective) {
      CHECK(approx_vec(r.origin, cam.center()));
    } else {
      CHECK(approx_vec(r.direction, cam.forward()));
    }
  }
}

TEST_CASE("projecting the world origin lands on the image center") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> elev(-1.5, 1.5);
  for (int i = 0; i < 25; ++i) {
    const Projection proj =
        (i % 2 == 0) ? Projection::kOrthographic : Projection::kPerspective;
    const Camera cam = camera_from_view_spec(angle(rng), elev(rng), 3.0,
                                             proj, 0.9, 128, 96);
    const Vec2 px = cam.project({0, 0, 0});
    CHECK(std::abs(px.x - 64.0) < 0.5);
    CHECK(std::abs(px.y - 48.0) < 0.5);
  }
}
