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

#ifndef RSA_MOTION_BVH_H_
#define RSA_MOTION_BVH_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "rsa/motion/skeleton.h"

namespace rsa::motion {

enum class Axis { kX, kY, kZ };

// Composes elementary rotations in the listed order, R = R_0 R_1 ... (the
// BVH convention for a CHANNELS line). Angles in degrees.
Quat euler_to_quat(std::span<const Axis> order, std::span<const double> degrees);

// Inverse of euler_to_quat for the order Z, X, Y. Returns {z, x, y} degrees
// with x in [-90, 90]; at gimbal lock y is set to 0.
std::array<double, 3> quat_to_euler_zxy(const Quat& q);

// Parses a BVH document (HIERARCHY + MOTION). Offsets and positions are read
// as meters. Euler channels follow each joint's declared order. End Site
// blocks become end-site joints named "<parent>_end".
//
// Throws ParseError (with a 1-based line number) for missing sections,
// malformed hierarchy, non-numeric or non-finite values, rows whose width
// differs from the channel count, and frame-count disagreement.
MotionClip parse_bvh(std::string_view text);

// Emits a BVH document with a single ROOT. The root carries
// "Xposition Yposition Zposition Zrotation Xrotation Yrotation", every other
// non-end-site joint "Zrotation Xrotation Yrotation". Values are printed with
// six decimals, so write(parse(write(c))) == write(c) byte for byte.
//
// Throws InvalidArgument naming the frame and joint of the first invalid
// value.
std::string write_bvh(const MotionClip& clip);

MotionClip read_bvh_file(const std::filesystem::path& path);
void write_bvh_file(const std::filesystem::path& path, const MotionClip& clip);

}  // namespace rsa::motion

#endif  // RSA_MOTION_BVH_H_
