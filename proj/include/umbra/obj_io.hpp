#pragma once

#include <umbra/trimesh.hpp>

#include <string>

namespace umbra {

// ASCII OBJ: `v x y z` lines (6 significant digits) then 1-indexed
// `f a b c` lines, LF endings. The format is canonical: writing a read-back
// file reproduces it byte for byte.
void write_obj(const TriangleMesh& mesh, const std::string& path);

TriangleMesh read_obj(const std::string& path);

}  // namespace umbra
