#pragma once

#include <umbra/camera.hpp>
#include <umbra/target.hpp>

#include <string>

namespace umbra {

// One view constraint: a target shadow image with its projection.
struct ShadowConfiguration {
  std::string name;
  TargetImage target;
  Camera camera;
};

}  // namespace umbra
