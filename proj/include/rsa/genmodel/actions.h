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


#ifndef RSA_GENMODEL_ACTIONS_H_
#define RSA_GENMODEL_ACTIONS_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rsa/genmodel/motion_library.h"
#include "rsa/motion/skeleton.h"
#include "rsa/randomize/key_value.h"
#include "rsa/randomize/rng.h"

namespace rsa::genmodel {

// Procedural action vocabulary on the kinect25 skeleton: wave, squat,
// jumping_jack, kick, bow, side_step.
const std::vector<std::string>& procedural_actions();

// Per-actor style of a procedural clip.
struct ActorParams {
  double tempo = 0.8;      // cycles per second
  double amplitude = 1.0;  // scales every joint excursion
  double phase = 0.0;      // radians at t = 0
  double facing = 0.0;     // degrees of yaw about +Y
  bool mirrored = false;   // swap left and right (waving hand, kicking leg)
  double x = 0.0;          // root position on the floor, meters
  double z = 0.0;
};

struct ActorRanges {
  randomize::Range tempo{0.6, 1.1};
  randomize::Range amplitude{0.75, 1.15};
  randomize::Range facing{-20.0, 20.0};
  randomize::Range offset{-0.3, 0.3};
};

ActorParams sample_actor(const ActorRanges& ranges, randomize::Pcg32& rng);

// Noise-free rotations on kinect25 with the lowest joint on the floor.
// Throws InvalidArgument for an unknown action or frames < 1.
motion::MotionClip synthesize_action(std::string_view action, const ActorParams& actor,
                                     int frames, double frame_time);

// Simulates motion capture: FK, independent Gaussian position noise with
// standard deviation `noise` meters, then positions_to_local_rotations.
motion::MotionClip simulate_capture(const motion::MotionClip& clip, double noise,
                                    randomize::Pcg32& rng);

struct ProceduralLibraryOptions {
  std::vector<std::string> actions = procedural_actions();
  int clips_per_action = 4;
  int frames = 64;
  double frame_time = 1.0 / 30.0;
  double capture_noise = 0.005;  // meters
  ActorRanges actors;
};

// Clip "<action>_<k>" uses actor stream derive_stream(seed, action index *
// 1000 + k). Clips are passed through the BVH writer and parser, so saving
// and reloading the library reproduces them exactly.
MotionLibrary build_procedural_library(const ProceduralLibraryOptions& options,
                                       std::uint64_t seed);

}  // namespace rsa::genmodel

#endif  // RSA_GENMODEL_ACTIONS_H_
