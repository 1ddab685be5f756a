// Copyright 2026 The RSA-Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsa/render/camera.h"

#include <cmath>
#include <numbers>

#include "rsa/common/error.h"

namespace rsa::render {
namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

}  // namespace

double focal_length(const CameraIntrinsics& intrinsics) {
  return 0.5 * intrinsics.width / std::tan(0.5 * radians(intrinsics.fov_deg));
}

CameraModel build_camera(const randomize::CameraParams& params, const Vec3& anchor,
                         const CameraIntrinsics& intrinsics) {
  if (!std::isfinite(params.distance) || !std::isfinite(params.azimuth) ||
      !std::isfinite(params.elevation) || !anchor.allFinite()) {
    throw InvalidArgument("camera parameters must be finite");
  }
  if (params.distance <= 0.0) throw InvalidArgument("camera distance must be > 0");
  if (std::fabs(params.elevation) >= 90.0) {
    throw InvalidArgument("camera elevation must lie strictly inside (-90, 90) degrees");
  }
  if (intrinsics.width <= 0 || intrinsics.height <= 0 || !(intrinsics.fov_deg > 0.0) ||
      !(intrinsics.fov_deg < 180.0) || !(intrinsics.near_plane > 0.0)) {
    throw InvalidArgument("invalid camera intrinsics");
  }
  // Reduce first so that azimuths a and a + 360 give bit-identical cameras.
  double azimuth = std::fmod(params.azimuth, 360.0);
  if (azimuth < 0.0) azimuth += 360.0;
  const double az = radians(azimuth);
  const double el = radians(params.elevation);
  const Vec3 offset(std::sin(az) * std::cos(el), std::sin(el), std::cos(az) * std::cos(el));

  CameraModel camera;
  camera.intrinsics = intrinsics;
  camera.focal = focal_length(intrinsics);
  camera.position = anchor + params.distance * offset;
  const Vec3 forward = -offset.normalized();
  const Vec3 right = forward.cross(Vec3::UnitY()).normalized();
  const Vec3 up = right.cross(forward);
  camera.rotation.col(0) = right;
  camera.rotation.col(1) = up;
  camera.rotation.col(2) = -forward;
  return camera;
}

Vec3 to_camera_space(const CameraModel& camera, const Vec3& world) {
  const Vec3 d = world - camera.position;
  return {camera.right().dot(d), camera.up().dot(d), camera.forward().dot(d)};
}

std::optional<Projection> project_camera_space(const CameraModel& camera,
                                               const Vec3& camera_point) {
  const double depth = camera_point.z();
  if (!(depth > camera.intrinsics.near_plane)) return std::nullopt;
  return Projection{{camera.cx() + camera.focal * camera_point.x() / depth,
                     camera.cy() - camera.focal * camera_point.y() / depth},
                    depth};
}

std::optional<Projection> project(const CameraModel& camera, const Vec3& world) {
  return project_camera_space(camera, to_camera_space(camera, world));
}

}  // namespace rsa::render
