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

#ifndef RSA_RENDER_CAMERA_H_
#define RSA_RENDER_CAMERA_H_

#include <Eigen/Dense>
#include <optional>

#include "rsa/motion/skeleton.h"
#include "rsa/randomize/nuisance.h"

namespace rsa::render {

using motion::Vec3;

struct CameraIntrinsics {
  int width = 640;
  int height = 480;
  double fov_deg = 90.0;    // horizontal
  double near_plane = 0.1;  // meters
};

// Pinhole camera. `rotation` maps camera axes to world axes; its columns are
// right, up and back (the camera looks down its local -Z), so it is a proper
// rotation. Camera space below means (right, up, forward) coordinates, where
// the third component is depth.
struct CameraModel {
  Vec3 position = Vec3::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  CameraIntrinsics intrinsics;
  double focal = 320.0;  // pixels, (width / 2) / tan(fov / 2)

  Vec3 right() const { return rotation.col(0); }
  Vec3 up() const { return rotation.col(1); }
  Vec3 forward() const { return -rotation.col(2); }
  double cx() const { return 0.5 * intrinsics.width; }
  double cy() const { return 0.5 * intrinsics.height; }
};

double focal_length(const CameraIntrinsics& intrinsics);

// Places the camera at
//   anchor + distance * (sin az cos el, sin el, cos az cos el)
// with azimuth and elevation in degrees, looking at `anchor` with world +Y
// resolving roll. Azimuth 0 puts the camera on +Z looking down -Z.
// Throws InvalidArgument for distance <= 0, non-finite input, or
// |elevation| >= 90.
CameraModel build_camera(const randomize::CameraParams& params, const Vec3& anchor,
                         const CameraIntrinsics& intrinsics = {});

struct Projection {
  Eigen::Vector2d pixel;  // x right, y down; pixel centers at +0.5
  double depth;           // along the forward axis
};

Vec3 to_camera_space(const CameraModel& camera, const Vec3& world);

// Returns nullopt (the behind-camera marker) when depth <= near plane.
std::optional<Projection> project_camera_space(const CameraModel& camera,
                                               const Vec3& camera_point);
std::optional<Projection> project(const CameraModel& camera, const Vec3& world);

}  // namespace rsa::render

#endif  // RSA_RENDER_CAMERA_H_
